"""Minimum-cost group selection.

CONVENTIONAL mode selects prime implicants and yields a sum of products;
EXTENDED mode selects from enumerate_groups() and yields a sum of factored
products. The objective is always total 2-input gate count:

    cover cost = sum of group costs + (number of groups - 1) joining OR gates

EXACT runs a branch-and-bound over ON cells seeded with the GREEDY cover.
oracle_minimize() is an independent brute force used to check the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import TYPE_CHECKING

from kmapfactor.cube import Cube, Trit, all_cubes, cube_cells, iter_cells
from kmapfactor.exceptions import GroupError, OracleLimitError, SearchBudgetExceeded
from kmapfactor.expr import FALSE, Expr, depth, or_
from kmapfactor.group import Group, enumerate_groups, is_valid_group
from kmapfactor.models import Method, Mode, SolverConfig

if TYPE_CHECKING:
    from collections.abc import Sequence

    from kmapfactor.boolfn import BoolFunc

ORACLE_MAX_VARS = 3


@dataclass(frozen=True)
class Cover:
    """A set of groups covering a function's ON-set.

    Attributes:
        groups: Selected groups in canonical order.
        function: The function covered.
        mode: CONVENTIONAL or EXTENDED.
        method: EXACT, GREEDY or ORACLE.
        search_nodes: Branch-and-bound nodes expanded (0 for greedy).
        candidate_count: Size of the candidate set searched.
        optimal: True only for a completed exact search or a constant.
    """

    groups: tuple[Group, ...]
    function: BoolFunc
    mode: Mode
    method: Method
    search_nodes: int = 0
    candidate_count: int = 0
    optimal: bool = False

    def __post_init__(self) -> None:
        """Order groups canonically and check widths."""
        for group in self.groups:
            if group.var_count != self.function.var_count:
                raise GroupError(
                    f"group {group} does not match a {self.function.var_count}-variable function"
                )
        object.__setattr__(
            self, "groups", tuple(sorted(self.groups, key=lambda g: g.sort_key))
        )

    @cached_property
    def cell_mask(self) -> int:
        """Union of the covered cells."""
        mask = 0
        for group in self.groups:
            mask |= group.cell_mask
        return mask

    @property
    def cost(self) -> int:
        """Total 2-input gate count; see cover_cost()."""
        return cover_cost(self)

    @property
    def group_count(self) -> int:
        """Number of groups."""
        return len(self.groups)

    @cached_property
    def expression(self) -> Expr:
        """OR of the group terms; FALSE for the empty cover."""
        if not self.groups:
            return FALSE
        return or_(*(group.expression for group in self.groups))

    @property
    def depth(self) -> int:
        """Logic levels of the assembled expression."""
        return depth(self.expression)

    @property
    def is_correct(self) -> bool:
        """Covers every ON cell and no OFF cell."""
        f = self.function
        return not f.on_mask & ~self.cell_mask and not self.cell_mask & f.off_mask

    @property
    def is_irredundant(self) -> bool:
        """Every group covers an ON cell no other group covers."""
        on = self.function.on_mask
        for i, group in enumerate(self.groups):
            others = 0
            for j, other in enumerate(self.groups):
                if j != i:
                    others |= other.cell_mask
            if not group.cell_mask & on & ~others:
                return False
        return True


def cover_cost(c: Cover) -> int:
    """Gate count of a cover's assembled expression.

    Args:
        c: The cover.

    Returns:
        Sum of group costs plus one OR gate per group after the first.
    """
    if not c.groups:
        return 0
    return sum(group.cost for group in c.groups) + len(c.groups) - 1


def prime_implicants(f: BoolFunc) -> list[Cube]:
    """Maximal implicants of f.

    Args:
        f: The function.

    Returns:
        Cubes inside ON plus DC that touch ON and cannot grow by freeing
        any fixed trit, in canonical order.
    """
    care = f.on_mask | f.dc_mask
    primes: list[Cube] = []
    for cube in all_cubes(f.var_count):
        if cube.cell_mask & ~care or not cube.cell_mask & f.on_mask:
            continue
        grows = any(
            not _free(cube, i).cell_mask & ~care
            for i, trit in enumerate(cube.trits)
            if trit is not Trit.FREE
        )
        if not grows:
            primes.append(cube)
    return primes


def _free(cube: Cube, index: int) -> Cube:
    trits = list(cube.trits)
    trits[index] = Trit.FREE
    return Cube(tuple(trits))


def _constant_cover(f: BoolFunc, mode: Mode, method: Method) -> Cover | None:
    if f.is_contradiction:
        return Cover((), f, mode, method, optimal=True)
    if f.is_tautology:
        full = Cube(tuple([Trit.FREE] * f.var_count))
        return Cover((Group(full),), f, mode, method, candidate_count=1, optimal=True)
    return None


def candidate_groups(f: BoolFunc, mode: Mode, max_exclusions: int) -> list[Group]:
    """Candidate set the solver selects from.

    EXTENDED mode drops groups with an exclusion that removes no OFF cell
    of its own: a valid superset of lower cost always exists for them.

    Args:
        f: The function.
        mode: CONVENTIONAL (prime implicants) or EXTENDED (generalised groups).
        max_exclusions: Exclusion bound for EXTENDED mode.

    Returns:
        Groups in canonical order.
    """
    if mode is Mode.CONVENTIONAL:
        return [Group(prime) for prime in prime_implicants(f)]
    return enumerate_groups(f, max_exclusions, prune_dominated=True)


def _drop_dominated(candidates: list[Group], on_mask: int) -> list[Group]:
    """Remove groups whose ON cells another no-costlier group also covers."""
    kept: list[Group] = []
    for group in sorted(candidates, key=lambda g: (g.cost, g.sort_key)):
        on = group.cell_mask & on_mask
        if not any(not on & ~(other.cell_mask & on_mask) for other in kept):
            kept.append(group)
    return sorted(kept, key=lambda g: g.sort_key)


def greedy_cover(f: BoolFunc, candidates: Sequence[Group]) -> list[Group]:
    """Pick groups by best newly-covered ON cells per gate.

    Score is new ON cells / (group cost + 1 joining gate). Ties prefer
    exclusion-free groups, then more cells, then canonical order.

    Args:
        f: The function.
        candidates: Groups in canonical order.

    Returns:
        Selected groups, before redundancy removal.
    """
    uncovered = f.on_mask
    chosen: list[Group] = []
    while uncovered:
        best: Group | None = None
        best_key: tuple[Fraction, bool, int] | None = None
        for group in candidates:
            gain = (group.cell_mask & uncovered).bit_count()
            if not gain:
                continue
            key = (Fraction(gain, group.cost + 1), group.is_implicant_shape, group.cell_count)
            if best_key is None or key > best_key:
                best, best_key = group, key
        if best is None:
            raise GroupError("candidate set cannot cover the ON-set")
        chosen.append(best)
        uncovered &= ~best.cell_mask
    return chosen


def irredundant(c: Cover) -> Cover:
    """Drop groups whose ON cells the other groups already cover.

    Groups are tried highest cost first, ties in canonical order.

    Args:
        c: A correct cover.

    Returns:
        A cover where every group owns at least one ON cell.
    """
    on = c.function.on_mask
    remaining = list(c.groups)
    for group in sorted(c.groups, key=lambda g: (-g.cost, g.sort_key)):
        rest = 0
        for other in remaining:
            if other is not group:
                rest |= other.cell_mask
        if not on & ~rest:
            remaining.remove(group)
    if len(remaining) == len(c.groups):
        return c
    return replace(c, groups=tuple(remaining))


class _BudgetExhausted(Exception):
    pass


class _CoverSearch:
    """Branch and bound over ON cells.

    At each node the uncovered ON cell with the fewest candidates is
    branched on, candidates in increasing cost. The bound adds the largest
    per-cell cheapest candidate cost, plus one joining gate when the partial
    cover is non-empty.
    """

    def __init__(
        self, candidates: list[Group], on_mask: int, node_budget: int, incumbent: list[Group]
    ) -> None:
        self.candidates = candidates
        self.on_cells = [g.cell_mask & on_mask for g in candidates]
        self.costs = [g.cost for g in candidates]
        self.by_cell: dict[int, list[int]] = {}
        for index in sorted(range(len(candidates)), key=lambda i: (self.costs[i], i)):
            for cell in iter_cells(self.on_cells[index]):
                self.by_cell.setdefault(cell, []).append(index)
        self.node_budget = node_budget
        self.nodes = 0
        self.best = list(incumbent)
        self.best_cost = _list_cost(incumbent)

    def run(self, on_mask: int) -> None:
        # recursion depth is bounded by the ON cell count (at most 64)
        self._search(on_mask, [], 0)

    def _search(self, uncovered: int, chosen: list[int], partial: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExhausted
        if not uncovered:
            if partial < self.best_cost:
                self.best_cost = partial
                self.best = [self.candidates[i] for i in chosen]
            return
        join = 1 if chosen else 0
        bound = 0
        pick = -1
        pick_count = len(self.candidates) + 1
        for cell in iter_cells(uncovered):
            options = self.by_cell[cell]
            bound = max(bound, self.costs[options[0]])
            if len(options) < pick_count:
                pick, pick_count = cell, len(options)
        if partial + bound + join >= self.best_cost:
            return
        for index in self.by_cell[pick]:
            cost = partial + self.costs[index] + join
            if cost >= self.best_cost:
                break
            chosen.append(index)
            self._search(uncovered & ~self.on_cells[index], chosen, cost)
            chosen.pop()


def _list_cost(groups: Sequence[Group]) -> int:
    if not groups:
        return 0
    return sum(g.cost for g in groups) + len(groups) - 1


def minimize(
    f: BoolFunc, mode: Mode = Mode.EXTENDED, config: SolverConfig | None = None
) -> Cover:
    """Select a minimum-cost irredundant cover of f.

    Args:
        f: The function.
        mode: CONVENTIONAL or EXTENDED.
        config: Solver settings; defaults to SolverConfig().

    Returns:
        A correct irredundant cover. With method EXACT its cost is minimal
        over the candidate set and ``optimal`` is True.

    Raises:
        SearchBudgetExceeded: When the exact search runs out of nodes; the
            exception carries the best cover found, marked non-optimal.
        GroupError: If config.method is ORACLE (use oracle_minimize()).
    """
    config = config or SolverConfig()
    method = config.method
    if method is Method.ORACLE:
        raise GroupError("the oracle is not a minimize() method; call oracle_minimize()")
    constant = _constant_cover(f, mode, method)
    if constant is not None:
        return constant

    candidates = candidate_groups(f, mode, config.max_exclusions)
    if method is Method.GREEDY:
        chosen = greedy_cover(f, candidates)
        return irredundant(
            Cover(tuple(chosen), f, mode, method, candidate_count=len(candidates))
        )

    candidates = _drop_dominated(candidates, f.on_mask)
    search = _CoverSearch(
        candidates, f.on_mask, config.node_budget, greedy_cover(f, candidates)
    )
    try:
        search.run(f.on_mask)
    except _BudgetExhausted:
        best = irredundant(
            Cover(
                tuple(search.best),
                f,
                mode,
                method,
                search_nodes=search.nodes,
                candidate_count=len(candidates),
            )
        )
        raise SearchBudgetExceeded(best, search.nodes) from None
    return irredundant(
        Cover(
            tuple(search.best),
            f,
            mode,
            method,
            search_nodes=search.nodes,
            candidate_count=len(candidates),
            optimal=True,
        )
    )


# --- brute-force oracle ----------------------------------------------------


def _oracle_candidates(f: BoolFunc, mode: Mode, max_exclusions: int) -> dict[frozenset[int], int]:
    """Cheapest cost per covered-cell set, built straight from the definitions."""
    on = set(f.on_set)
    care = on | set(f.dc_set)
    cheapest: dict[frozenset[int], int] = {}

    def offer(cells: frozenset[int], cost: int) -> None:
        if cells & on and cells <= care and cost < cheapest.get(cells, cost + 1):
            cheapest[cells] = cost

    cubes = all_cubes(f.var_count)
    for base in cubes:
        base_cells = cube_cells(base)
        offer(base_cells, max(base.literal_count - 1, 0))
        if mode is Mode.CONVENTIONAL:
            continue
        inside = [c for c in cubes if c != base and cube_cells(c) <= base_cells]
        for size in range(1, max_exclusions + 1):
            for exclusions in combinations(inside, size):
                try:
                    group = Group(base, exclusions)
                except GroupError:
                    continue
                if is_valid_group(group, f):
                    offer(frozenset(iter_cells(group.cell_mask)), group.cost)
    return cheapest


def oracle_minimize(f: BoolFunc, mode: Mode, max_exclusions: int = 2) -> int:
    """Optimal cover cost by exhaustive search, for cross-checking minimize().

    Every implicant (CONVENTIONAL) or every valid group with up to
    max_exclusions exclusions (EXTENDED) is a candidate. Subsets of up to
    2**(n-1) candidates are searched by iterative deepening on cost.

    Args:
        f: The function (at most three variables).
        mode: CONVENTIONAL or EXTENDED.
        max_exclusions: Exclusion bound for EXTENDED mode.

    Returns:
        The minimum cover cost.

    Raises:
        OracleLimitError: If f has more than three variables.
    """
    if f.var_count > ORACLE_MAX_VARS:
        raise OracleLimitError(
            f"oracle handles at most {ORACLE_MAX_VARS} variables, got {f.var_count}"
        )
    if not f.on_set or f.is_tautology:
        return 0
    options = sorted(
        _oracle_candidates(f, mode, max_exclusions).items(),
        key=lambda item: (item[1], sorted(item[0])),
    )
    on = frozenset(f.on_set)
    max_size = 1 << (f.var_count - 1)
    ceiling = sum(cost for _, cost in options) + len(options)

    def reachable(target: int) -> bool:
        def extend(start: int, covered: frozenset[int], cost: int, size: int) -> bool:
            if on <= covered:
                return True
            if size == max_size:
                return False
            join = 1 if size else 0
            for i in range(start, len(options)):
                cells, group_cost = options[i]
                total = cost + group_cost + join
                if total > target or cells <= covered:
                    continue
                if extend(i + 1, covered | cells, total, size + 1):
                    return True
            return False

        return extend(0, frozenset(), 0, 0)

    for target in range(ceiling + 1):
        if reachable(target):
            return target
    raise OracleLimitError("no cover within the subset bound")
