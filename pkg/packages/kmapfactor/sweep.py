"""Corpus sweeps: minimise many functions and aggregate the savings.

A function is named by its truth-table integer: bit m of the index is set
when minterm m is ON. Sweep functions have no don't-care cells.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import TYPE_CHECKING

from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from kmapfactor.boolfn import BoolFunc
from kmapfactor.console import err_console
from kmapfactor.exceptions import InputFormatError, SearchBudgetExceeded
from kmapfactor.expr import print_expr, truth_mask
from kmapfactor.models import (
    Method,
    Mode,
    ModeResult,
    SolverConfig,
    SweepMethod,
    SweepRecord,
    SweepSummary,
)
from kmapfactor.solver import minimize

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence
    from typing import TextIO

MAX_EXHAUSTIVE_VARS = 4
_CHUNK_SIZE = 64


@dataclass(frozen=True)
class SweepPlan:
    """What a sweep runs.

    Attributes:
        var_count: Number of variables of every function.
        indices: Truth-table indices, ascending.
        modes: Solver modes run per function.
        methods: Solver methods run per mode.
        config: Solver settings; its method field is replaced per run.
    """

    var_count: int
    indices: tuple[int, ...]
    modes: tuple[Mode, ...] = (Mode.CONVENTIONAL, Mode.EXTENDED)
    methods: tuple[Method, ...] = (Method.EXACT,)
    config: SolverConfig = field(default_factory=SolverConfig)


def function_count(var_count: int) -> int:
    """Number of distinct functions of var_count variables, 2**2**n."""
    return 1 << (1 << var_count)


def function_from_index(index: int, var_count: int) -> BoolFunc:
    """The DC-free function whose truth table is index.

    Args:
        index: Truth-table integer.
        var_count: Number of variables.

    Returns:
        The function.

    Raises:
        InputFormatError: If index is outside 0..2**2**n - 1.
    """
    if not 0 <= index < function_count(var_count):
        raise InputFormatError(f"function index {index} out of range for {var_count} variables")
    return BoolFunc.from_masks(var_count, index)


def all_indices(var_count: int) -> tuple[int, ...]:
    """Every truth-table index, for an exhaustive sweep.

    Raises:
        InputFormatError: Above four variables.
    """
    if var_count > MAX_EXHAUSTIVE_VARS:
        raise InputFormatError(
            f"--all is limited to {MAX_EXHAUSTIVE_VARS} variables, got {var_count}"
        )
    return tuple(range(function_count(var_count)))


def sample_indices(var_count: int, count: int, seed: int) -> tuple[int, ...]:
    """Draw distinct truth-table indices from a seeded generator.

    Args:
        var_count: Number of variables.
        count: How many functions to draw.
        seed: Generator seed; the same seed gives the same sample.

    Returns:
        The sampled indices in ascending order.

    Raises:
        InputFormatError: If count is below 1 or above the number of
            functions.
    """
    total = function_count(var_count)
    if not 1 <= count <= total:
        raise InputFormatError(f"sample size must be in 1..{total}, got {count}")
    rng = random.Random(seed)
    chosen: set[int] = set()
    while len(chosen) < count:
        chosen.add(rng.getrandbits(1 << var_count))
    return tuple(sorted(chosen))


def default_method(var_count: int, exhaustive: bool) -> SweepMethod:
    """Greedy for exhaustive sweeps at four variables, exact otherwise."""
    if exhaustive and var_count >= MAX_EXHAUSTIVE_VARS:
        return SweepMethod.GREEDY
    return SweepMethod.EXACT


def _verified(f: BoolFunc, cover_expression_mask: int, cover_correct: bool) -> bool:
    return cover_correct and cover_expression_mask & ~f.dc_mask == f.on_mask


def _savings(record: SweepRecord) -> int | None:
    for method in (Method.EXACT, Method.GREEDY):
        conventional = record.result_for(Mode.CONVENTIONAL, method)
        extended = record.result_for(Mode.EXTENDED, method)
        if conventional and extended and not (conventional.aborted or extended.aborted):
            return conventional.cost - extended.cost
    return None


def solve_index(
    index: int,
    var_count: int,
    modes: Sequence[Mode],
    methods: Sequence[Method],
    config: SolverConfig,
) -> SweepRecord:
    """Run every requested (mode, method) on one function and verify it.

    Args:
        index: Truth-table index.
        var_count: Number of variables.
        modes: Modes to run.
        methods: Methods to run per mode.
        config: Solver settings.

    Returns:
        The per-function record. A budget abort keeps the best cover found.
    """
    f = function_from_index(index, var_count)
    results: list[ModeResult] = []
    for mode in modes:
        for method in methods:
            aborted = False
            try:
                cover = minimize(f, mode, config.model_copy(update={"method": method}))
            except SearchBudgetExceeded as e:
                cover, aborted = e.best, True
            expression = cover.expression
            results.append(
                ModeResult(
                    mode=mode,
                    method=method,
                    cost=cover.cost,
                    group_count=cover.group_count,
                    verified=_verified(f, truth_mask(expression, var_count), cover.is_correct),
                    aborted=aborted,
                    expression=print_expr(expression, f.var_names),
                )
            )
    record = SweepRecord(index=index, var_count=var_count, on_count=len(f.on_set), results=results)
    record.savings = _savings(record)
    return record


def _solve_all(plan: SweepPlan, workers: int) -> Iterator[SweepRecord]:
    solve = partial(
        solve_index,
        var_count=plan.var_count,
        modes=plan.modes,
        methods=plan.methods,
        config=plan.config,
    )
    if workers <= 1:
        yield from map(solve, plan.indices)
        return
    with ProcessPoolExecutor(max_workers=workers) as executor:
        yield from executor.map(solve, plan.indices, chunksize=_CHUNK_SIZE)


def run_sweep(plan: SweepPlan, workers: int = 1) -> list[SweepRecord]:
    """Solve every function of a plan.

    A progress bar is drawn on the error console unless it is quiet.

    Args:
        plan: The sweep plan.
        workers: Worker processes; 1 runs in-process.

    Returns:
        One record per index, sorted by index whatever the worker count.
    """
    records: list[SweepRecord] = []
    progress = Progress(
        TextColumn("[blue]sweep {task.fields[var_count]}-var"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=err_console,
        transient=True,
        disable=err_console.quiet,
    )
    with progress:
        task = progress.add_task("sweep", total=len(plan.indices), var_count=plan.var_count)
        for record in _solve_all(plan, workers):
            records.append(record)
            progress.advance(task)
    return sorted(records, key=lambda r: r.index)


def _result_key(mode: Mode, method: Method) -> str:
    return f"{mode.value}/{method.value}"


def summarize(plan: SweepPlan, records: Iterable[SweepRecord]) -> SweepSummary:
    """Aggregate sweep records.

    Dominance (extended never costs more than conventional) is checked on
    completed exact runs only; the greedy bound (greedy never beats exact)
    is checked when both methods ran and exact completed.

    Args:
        plan: The plan the records came from.
        records: Per-function records.

    Returns:
        The summary.
    """
    records = list(records)
    totals: Counter[str] = Counter()
    excess: Counter[str] = Counter()
    histogram: Counter[int] = Counter()
    summary = SweepSummary(
        var_count=plan.var_count,
        function_count=len(records),
        modes=list(plan.modes),
        methods=list(plan.methods),
    )
    for record in records:
        for result in record.results:
            totals[_result_key(result.mode, result.method)] += result.cost
            summary.verification_failures += not result.verified
            summary.budget_aborts += result.aborted
        if record.savings is not None:
            histogram[record.savings] += 1
            summary.extended_wins += record.savings > 0
        conventional = record.result_for(Mode.CONVENTIONAL, Method.EXACT)
        extended = record.result_for(Mode.EXTENDED, Method.EXACT)
        if (
            conventional
            and extended
            and not (conventional.aborted or extended.aborted)
            and extended.cost > conventional.cost
        ):
            summary.dominance_violations += 1
        for mode in plan.modes:
            exact = record.result_for(mode, Method.EXACT)
            greedy = record.result_for(mode, Method.GREEDY)
            if exact and greedy and not exact.aborted:
                excess[mode.value] += greedy.cost - exact.cost
                summary.greedy_bound_violations += greedy.cost < exact.cost

    if records:
        summary.mean_cost = {key: total / len(records) for key, total in sorted(totals.items())}
    summary.savings_histogram = dict(sorted(histogram.items()))
    summary.greedy_excess_total = dict(sorted(excess.items()))
    return summary


def write_records(records: Iterable[SweepRecord], sink: TextIO) -> None:
    """Write records as JSON lines.

    Args:
        records: Records in index order.
        sink: Text stream.
    """
    for record in records:
        sink.write(record.model_dump_json(by_alias=True))
        sink.write("\n")


__all__ = [
    "SweepPlan",
    "all_indices",
    "default_method",
    "function_count",
    "function_from_index",
    "run_sweep",
    "sample_indices",
    "solve_index",
    "summarize",
    "write_records",
]
