"""kmapfactor - Karnaugh-map minimisation with non-power-of-two groups.

Commands minimise a function in conventional (sum of products) or extended
(factored products) mode, compare the two, check two expressions for
equivalence, draw maps, and sweep whole corpora of functions.

Exit codes: 0 ok, 1 not equivalent, 2 input error, 3 search budget exhausted.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, NoReturn

import typer
from rich.markup import escape
from rich.table import Table

from kmapfactor.boolfn import (
    BoolFunc,
    default_var_names,
    load_function,
    parse_minterm_list,
)
from kmapfactor.console import console, diagnostic, display_message, print_table, set_quiet
from kmapfactor.exceptions import InputFormatError, KmapError, SearchBudgetExceeded
from kmapfactor.expr import first_difference, infer_var_count, parse_expr, print_expr, truth_mask
from kmapfactor.models import Method, MessageType, Mode, RunStats, Settings, SweepMethod
from kmapfactor.netlist import emit_netlist
from kmapfactor.render import render_kmap
from kmapfactor.settings import load_settings
from kmapfactor.solver import Cover, minimize
from kmapfactor.sweep import (
    SweepPlan,
    all_indices,
    default_method,
    run_sweep,
    sample_indices,
    summarize,
    write_records,
)
from kmapfactor.version import __version__

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3

app = typer.Typer(
    name="kmapfactor",
    help="Karnaugh-map minimiser with non-power-of-two groups and a 2-input gate cost model",
    add_completion=False,
    rich_markup_mode="rich",
)


@dataclass
class CliState:
    """Options of the root callback shared with every command."""

    verbose: bool = False
    config: Path | None = None


def handle_error(error: Exception, user_message: str | None = None) -> NoReturn:
    """Display an error and exit with the code for its kind.

    Args:
        error: The exception that occurred
        user_message: Optional user-friendly explanation

    Raises:
        typer.Exit: Always; code 3 for budget exhaustion, else 2.
    """
    error_msg = user_message or str(error)
    display_message(escape(error_msg), MessageType.ERROR)
    code = EXIT_BUDGET if isinstance(error, SearchBudgetExceeded) else EXIT_INPUT_ERROR
    raise typer.Exit(code)


def _state(ctx: typer.Context) -> CliState:
    return ctx.obj if isinstance(ctx.obj, CliState) else CliState()


def _settings(ctx: typer.Context, **overrides: object) -> Settings:
    return load_settings(_state(ctx).config, overrides=overrides)


def _load_input(
    input_path: Path | None,
    var_count: int | None,
    on: str | None,
    dc: str | None,
    names: str | None,
) -> BoolFunc:
    """Build the function from a file or from inline minterm options.

    Raises:
        InputFormatError: When both or neither sources are given.
    """
    if input_path is not None:
        if on is not None or dc is not None:
            raise InputFormatError("give either an INPUT file or --on/--dc, not both")
        f = load_function(input_path)
        if names is not None:
            f = BoolFunc(f.var_count, f.on_set, f.dc_set, _split_names(names))
        return f
    if var_count is None or on is None:
        raise InputFormatError("give an INPUT file, or --vars together with --on")
    text = f"vars={var_count}; on={on}; dc={dc or ''};"
    if names is not None:
        text += f" names={names};"
    return parse_minterm_list(text)


def _split_names(names: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in names.split(",") if name.strip())


def _solve(f: BoolFunc, mode: Mode, settings: Settings) -> tuple[Cover, bool, float]:
    """Run the solver, keeping the best cover on budget exhaustion.

    Returns:
        The cover, whether the search aborted, and elapsed milliseconds.
    """
    if settings.solver.method is Method.ORACLE:
        raise InputFormatError("the oracle method is only available to the test suite")
    start = time.perf_counter()
    aborted = False
    try:
        cover = minimize(f, mode, settings.solver)
    except SearchBudgetExceeded as e:
        cover, aborted = e.best, True
        display_message(
            f"search stopped after {e.nodes} nodes; best {mode.value} cover "
            f"found costs {cover.cost} gates and may not be optimal",
            MessageType.WARNING,
            title="Budget Exhausted",
        )
    return cover, aborted, (time.perf_counter() - start) * 1000


def _write_netlist(cover: Cover, target: Path) -> None:
    names = cover.function.var_names
    comments = [
        f"{cover.mode.value} cover, {cover.cost} gates",
        *(f"group {group}" for group in cover.groups),
    ]
    if str(target) == "-":
        emit_netlist(cover.expression, names, sys.stdout, comments)
        return
    with target.open("w", encoding="utf-8") as sink:
        emit_netlist(cover.expression, names, sink, comments)


InputArg = Annotated[
    Path | None,
    typer.Argument(
        help="Function file (PLA or minterm list)",
        metavar="INPUT",
        exists=True,
        dir_okay=False,
        show_default=False,
    ),
]
VarsOpt = Annotated[
    int | None,
    typer.Option("--vars", "-n", help="Number of variables", rich_help_panel="Inline Function"),
]
OnOpt = Annotated[
    str | None,
    typer.Option("--on", help="ON minterms, e.g. 5,9,13 or 0-3,8", rich_help_panel="Inline Function"),
]
DcOpt = Annotated[
    str | None,
    typer.Option("--dc", help="Don't-care minterms", rich_help_panel="Inline Function"),
]
NamesOpt = Annotated[
    str | None,
    typer.Option(
        "--names", help="Comma-separated variable names, MSB first", rich_help_panel="Inline Function"
    ),
]
ModeOpt = Annotated[
    Mode,
    typer.Option("--mode", "-m", help="Group shapes allowed", rich_help_panel="Solver"),
]
MethodOpt = Annotated[
    Method | None,
    typer.Option("--method", help="exact or greedy (default from config)", rich_help_panel="Solver"),
]
MaxExclusionsOpt = Annotated[
    int | None,
    typer.Option(
        "--max-exclusions", "-k", min=0, help="Exclusions allowed per group", rich_help_panel="Solver"
    ),
]
NodeBudgetOpt = Annotated[
    int | None,
    typer.Option("--node-budget", min=1, help="Exact-search node limit", rich_help_panel="Solver"),
]


@app.command("minimize")
def minimize_cmd(
    ctx: typer.Context,
    input_path: InputArg = None,
    var_count: VarsOpt = None,
    on: OnOpt = None,
    dc: DcOpt = None,
    names: NamesOpt = None,
    mode: ModeOpt = Mode.EXTENDED,
    method: MethodOpt = None,
    max_exclusions: MaxExclusionsOpt = None,
    node_budget: NodeBudgetOpt = None,
    render: Annotated[
        bool, typer.Option("--render", help="Draw the map with the cover", rich_help_panel="Output")
    ] = False,
    netlist: Annotated[
        Path | None,
        typer.Option(
            "--netlist", help="Write the gate netlist to PATH ('-' for stdout)", rich_help_panel="Output"
        ),
    ] = None,
    json_output: Annotated[
        bool, typer.Option("--json", help="Print RunStats JSON instead of the expression", rich_help_panel="Output")
    ] = False,
) -> None:
    """Minimise one function and print its cover expression.

    Args:
        ctx: Typer context
        input_path: Function file
        var_count: Inline variable count
        on: Inline ON minterms
        dc: Inline don't-care minterms
        names: Variable names
        mode: conventional or extended
        method: exact or greedy
        max_exclusions: Exclusion bound per group
        node_budget: Exact-search node limit
        render: Also draw the map
        netlist: Netlist destination
        json_output: Emit RunStats JSON
    """
    aborted = False
    try:
        f = _load_input(input_path, var_count, on, dc, names)
        settings = _settings(
            ctx, method=method, max_exclusions=max_exclusions, node_budget=node_budget
        )
        cover, aborted, elapsed_ms = _solve(f, mode, settings)
        text = print_expr(cover.expression, f.var_names)
        if json_output:
            stats = RunStats(
                var_count=f.var_count,
                on_count=len(f.on_set),
                dc_count=len(f.dc_set),
                mode=mode,
                method=cover.method,
                cost=cover.cost,
                group_count=cover.group_count,
                depth=cover.depth,
                search_nodes=cover.search_nodes,
                candidate_count=cover.candidate_count,
                optimal=cover.optimal,
                elapsed_ms=round(elapsed_ms, 3),
                expression=text,
            )
            typer.echo(stats.to_json())
        else:
            typer.echo(text)
            console.print(
                f"[dim]cost {cover.cost} gates, {cover.group_count} group{'' if cover.group_count == 1 else 's'}, "
                f"depth {cover.depth}[/dim]"
            )
        if _state(ctx).verbose:
            diagnostic(
                f"{cover.candidate_count} candidates, {cover.search_nodes} search nodes, "
                f"{elapsed_ms:.1f} ms"
            )
        if render:
            typer.echo(render_kmap(f, cover), nl=False)
        if netlist is not None:
            _write_netlist(cover, netlist)
    except typer.Exit:
        raise
    except (KmapError, OSError) as e:
        handle_error(e)
    if aborted:
        raise typer.Exit(EXIT_BUDGET)


@app.command()
def compare(
    ctx: typer.Context,
    input_path: InputArg = None,
    var_count: VarsOpt = None,
    on: OnOpt = None,
    dc: DcOpt = None,
    names: NamesOpt = None,
    method: MethodOpt = None,
    max_exclusions: MaxExclusionsOpt = None,
    node_budget: NodeBudgetOpt = None,
) -> None:
    """Minimise in both modes and show the gate saving.

    Args:
        ctx: Typer context
        input_path: Function file
        var_count: Inline variable count
        on: Inline ON minterms
        dc: Inline don't-care minterms
        names: Variable names
        method: exact or greedy
        max_exclusions: Exclusion bound per group
        node_budget: Exact-search node limit
    """
    try:
        f = _load_input(input_path, var_count, on, dc, names)
        settings = _settings(
            ctx, method=method, max_exclusions=max_exclusions, node_budget=node_budget
        )
        results = {mode: _solve(f, mode, settings) for mode in Mode}
    except typer.Exit:
        raise
    except (KmapError, OSError) as e:
        handle_error(e)

    table = Table(title="Conventional vs extended grouping")
    table.add_column("Mode", style="cyan", no_wrap=True)
    table.add_column("Cost", justify="right")
    table.add_column("Depth", justify="right")
    table.add_column("Groups", justify="right")
    table.add_column("Expression", no_wrap=True)
    for mode, (cover, aborted, _) in results.items():
        cost = f"{cover.cost}*" if aborted else str(cover.cost)
        table.add_row(
            mode.value,
            cost,
            str(cover.depth),
            str(cover.group_count),
            escape(print_expr(cover.expression, f.var_names)),
        )
    print_table(table)

    saving = results[Mode.CONVENTIONAL][0].cost - results[Mode.EXTENDED][0].cost
    if saving > 0:
        verdict = f"extended saves {saving} gate{'s' if saving != 1 else ''}"
    elif saving < 0:
        verdict = f"conventional is cheaper by {-saving} gate{'s' if saving != -1 else ''}"
    else:
        verdict = "tie"
    typer.echo(f"saving: {saving} ({verdict})")
    if _state(ctx).verbose:
        for mode, (cover, _, elapsed_ms) in results.items():
            diagnostic(
                f"{mode.value}: {cover.candidate_count} candidates, "
                f"{cover.search_nodes} search nodes, {elapsed_ms:.1f} ms"
            )
    if any(aborted for _, aborted, _ in results.values()):
        raise typer.Exit(EXIT_BUDGET)


def _describe_minterm(minterm: int, names: tuple[str, ...]) -> str:
    bits = format(minterm, f"0{len(names)}b")
    return " ".join(f"{name}={bit}" for name, bit in zip(names, bits, strict=True))


@app.command()
def verify(
    expr1: Annotated[str, typer.Argument(help="First expression")],
    expr2: Annotated[
        str, typer.Argument(help="Second expression, or a function file (its don't-cares are ignored)")
    ],
    var_count: VarsOpt = None,
    names: NamesOpt = None,
) -> None:
    """Check two expressions (or an expression and a function) for equivalence.

    Args:
        expr1: First expression
        expr2: Second expression or function file
        var_count: Variable count (default: inferred)
        names: Variable names
    """
    try:
        path = Path(expr2)
        if path.is_file():
            f = load_function(path)
            var_names = _split_names(names) if names is not None else f.var_names
            e1 = parse_expr(expr1, var_names)
            diff = (truth_mask(e1, f.var_count) ^ f.on_mask) & ~f.dc_mask
            first = (diff & -diff).bit_length() - 1 if diff else None
        else:
            if names is not None:
                var_names = _split_names(names)
            elif var_count is not None:
                var_names = default_var_names(var_count)
            else:
                var_names = default_var_names(infer_var_count([expr1, expr2]))
            e1 = parse_expr(expr1, var_names)
            e2 = parse_expr(expr2, var_names)
            first = first_difference(e1, e2, len(var_names))
    except (KmapError, OSError) as e:
        handle_error(e)

    if first is None:
        typer.echo("EQUIVALENT")
        return
    typer.echo("NOT EQUIVALENT")
    typer.echo(f"first difference at minterm {first} ({_describe_minterm(first, var_names)})")
    raise typer.Exit(EXIT_NOT_EQUIVALENT)


@app.command()
def render(
    ctx: typer.Context,
    input_path: InputArg = None,
    var_count: VarsOpt = None,
    on: OnOpt = None,
    dc: DcOpt = None,
    names: NamesOpt = None,
    mode: ModeOpt = Mode.EXTENDED,
    method: MethodOpt = None,
    max_exclusions: MaxExclusionsOpt = None,
    no_cover: Annotated[
        bool, typer.Option("--no-cover", help="Draw the bare map", rich_help_panel="Output")
    ] = False,
) -> None:
    """Draw the Karnaugh map of a function, with its minimum cover by default.

    Args:
        ctx: Typer context
        input_path: Function file
        var_count: Inline variable count
        on: Inline ON minterms
        dc: Inline don't-care minterms
        names: Variable names
        mode: conventional or extended
        method: exact or greedy
        max_exclusions: Exclusion bound per group
        no_cover: Skip solving and draw the values only
    """
    aborted = False
    try:
        f = _load_input(input_path, var_count, on, dc, names)
        cover = None
        if not no_cover:
            settings = _settings(ctx, method=method, max_exclusions=max_exclusions)
            cover, aborted, _ = _solve(f, mode, settings)
        typer.echo(render_kmap(f, cover), nl=False)
    except typer.Exit:
        raise
    except (KmapError, OSError) as e:
        handle_error(e)
    if aborted:
        raise typer.Exit(EXIT_BUDGET)


def _parse_modes(text: str) -> tuple[Mode, ...]:
    modes: list[Mode] = []
    for item in (part.strip().lower() for part in text.split(",")):
        if not item:
            continue
        try:
            mode = Mode(item)
        except ValueError:
            raise InputFormatError(f"unknown mode {item!r} in --modes") from None
        if mode not in modes:
            modes.append(mode)
    if not modes:
        raise InputFormatError("--modes needs at least one mode")
    return tuple(sorted(modes, key=list(Mode).index))


def _summary_table(summary_rows: list[tuple[str, str]]) -> Table:
    table = Table(title="Sweep summary", show_header=False)
    table.add_column("Statistic", style="cyan", no_wrap=True)
    table.add_column("Value", justify="right")
    for label, value in summary_rows:
        table.add_row(label, value)
    return table


@app.command()
def sweep(
    ctx: typer.Context,
    var_count: Annotated[int, typer.Option("--vars", "-n", min=1, max=6, help="Number of variables")],
    exhaustive: Annotated[
        bool, typer.Option("--all", help="Every function of --vars variables (n <= 4)", rich_help_panel="Corpus")
    ] = False,
    sample: Annotated[
        int | None, typer.Option("--sample", min=1, help="Number of random functions", rich_help_panel="Corpus")
    ] = None,
    seed: Annotated[int, typer.Option("--seed", help="Sampling seed", rich_help_panel="Corpus")] = 0,
    method: Annotated[
        SweepMethod | None,
        typer.Option(
            "--method",
            help="exact, greedy or both (default: greedy for --all at n=4, exact otherwise)",
            rich_help_panel="Solver",
        ),
    ] = None,
    modes: Annotated[
        str, typer.Option("--modes", help="Comma-separated modes to run", rich_help_panel="Solver")
    ] = "conventional,extended",
    max_exclusions: MaxExclusionsOpt = None,
    node_budget: NodeBudgetOpt = None,
    workers: Annotated[
        int | None, typer.Option("--workers", "-j", min=1, help="Worker processes", rich_help_panel="Solver")
    ] = None,
    json_path: Annotated[
        Path | None,
        typer.Option("--json", help="Write one JSON line per function to PATH ('-' for stdout)", rich_help_panel="Output"),
    ] = None,
) -> None:
    """Minimise a corpus of functions and summarise the savings.

    Args:
        ctx: Typer context
        var_count: Number of variables
        exhaustive: Sweep every function
        sample: Sample size
        seed: Sampling seed
        method: Solver methods to run
        modes: Modes to run
        max_exclusions: Exclusion bound per group
        node_budget: Exact-search node limit
        workers: Worker processes
        json_path: JSON-lines destination
    """
    try:
        if exhaustive == (sample is not None):
            raise InputFormatError("give exactly one of --all or --sample N")
        indices = all_indices(var_count) if exhaustive else sample_indices(var_count, sample or 0, seed)
        sweep_method = method or default_method(var_count, exhaustive)
        settings = _settings(
            ctx, max_exclusions=max_exclusions, node_budget=node_budget, workers=workers
        )
        plan = SweepPlan(
            var_count=var_count,
            indices=indices,
            modes=_parse_modes(modes),
            methods=sweep_method.methods,
            config=settings.solver,
        )
        start = time.perf_counter()
        records = run_sweep(plan, settings.workers)
        elapsed = time.perf_counter() - start
        if json_path is not None:
            if str(json_path) == "-":
                write_records(records, sys.stdout)
            else:
                with json_path.open("w", encoding="utf-8") as sink:
                    write_records(records, sink)
    except typer.Exit:
        raise
    except (KmapError, OSError) as e:
        handle_error(e)

    summary = summarize(plan, records)
    rows = [
        ("functions", str(summary.function_count)),
        ("methods", ", ".join(m.value for m in summary.methods)),
        ("verification failures", str(summary.verification_failures)),
        ("budget aborts", str(summary.budget_aborts)),
        ("dominance violations", str(summary.dominance_violations)),
        ("extended strictly cheaper", str(summary.extended_wins)),
    ]
    rows.extend((f"mean cost {key}", f"{value:.3f}") for key, value in summary.mean_cost.items())
    if Method.GREEDY in plan.methods and Method.EXACT in plan.methods:
        rows.append(("greedy bound violations", str(summary.greedy_bound_violations)))
        rows.extend(
            (f"greedy excess {key}", str(value)) for key, value in summary.greedy_excess_total.items()
        )
    rows.extend((f"saving {gates}", str(count)) for gates, count in summary.savings_histogram.items())
    print_table(_summary_table(rows))
    if _state(ctx).verbose:
        diagnostic(f"{summary.function_count} functions in {elapsed:.1f} s")

    problems = [
        f"{count} {what}"
        for count, what in (
            (summary.verification_failures, "cover(s) failed verification"),
            (summary.dominance_violations, "extended cover(s) cost more than conventional"),
            (summary.greedy_bound_violations, "greedy cover(s) beat the exact optimum"),
        )
        if count
    ]
    if problems:
        display_message("\n".join(problems), MessageType.ERROR, title="Verification Failed")
        raise typer.Exit(EXIT_NOT_EQUIVALENT)


@app.command()
def version() -> None:
    """Show version information."""
    display_message(
        f"[bold cyan]kmapfactor[/bold cyan] version [bold green]{__version__}[/bold green]",
        MessageType.INFO,
        title="Version Information",
    )


@app.callback()
def main(
    ctx: typer.Context,
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Print solver diagnostics")
    ] = False,
    quiet: Annotated[
        bool, typer.Option("--quiet", "-q", help="Suppress output (only show errors and results)")
    ] = False,
    config: Annotated[
        Path | None,
        typer.Option("--config", help="pyproject.toml holding a [tool.kmapfactor] table"),
    ] = None,
) -> None:
    """Kmapfactor - Karnaugh-map minimisation with non-power-of-two groups."""
    set_quiet(quiet)
    if ctx.invoked_subcommand is None:
        console.print(ctx.get_help())
        raise typer.Exit(0)

    ctx.obj = CliState(verbose=verbose, config=config)


if __name__ == "__main__":
    app()
