"""Generalised Karnaugh-map groups: an enclosing cube minus excluded subcubes.

One exclusion list covers every non-power-of-two shape:

- a run of three in a row, or any 2**n - 1 block: base minus one cell;
- six cells: base minus a 2-cell subcube;
- a 3x3 square: the whole map minus two 4-cell subcubes.

Each exclusion becomes one OR-of-complemented-literals factor (De Morgan of
the exclusion's residual product), so a group is always a single product of
literals and OR factors. Nested exclusions are not supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property
from itertools import combinations
from typing import TYPE_CHECKING

from kmapfactor.cube import Cube, Trit, all_cubes, cube_contains, iter_cells
from kmapfactor.exceptions import GroupError
from kmapfactor.expr import Expr, and_, lit, or_

if TYPE_CHECKING:
    from collections.abc import Iterator

    from kmapfactor.boolfn import BoolFunc

DEFAULT_MAX_EXCLUSIONS = 2


@dataclass(frozen=True)
class Group:
    """A base cube with zero or more excluded proper subcubes.

    Attributes:
        base: Enclosing cube.
        exclusions: Excluded subcubes, kept in canonical order.
    """

    base: Cube
    exclusions: tuple[Cube, ...] = ()

    def __post_init__(self) -> None:
        """Canonicalise exclusion order and check the group invariants."""
        ordered = tuple(sorted(set(self.exclusions), key=lambda c: c.sort_key))
        if len(ordered) != len(self.exclusions):
            raise GroupError(f"duplicate exclusion in {self._describe(self.exclusions)}")
        object.__setattr__(self, "exclusions", ordered)
        base = self.base
        for exclusion in ordered:
            if exclusion.var_count != base.var_count:
                raise GroupError(
                    f"exclusion {exclusion} has {exclusion.var_count} variables, base {base} has {base.var_count}"
                )
            if exclusion == base or not cube_contains(base, exclusion):
                raise GroupError(f"exclusion {exclusion} is not a proper subcube of {base}")
        if not self.cell_mask:
            raise GroupError(f"{self._describe(ordered)} covers no cell")
        for i, exclusion in enumerate(ordered):
            others = 0
            for j, other in enumerate(ordered):
                if j != i:
                    others |= other.cell_mask
            if not exclusion.cell_mask & ~others:
                raise GroupError(
                    f"exclusion {exclusion} of {self._describe(ordered)} removes nothing new"
                )

    def _describe(self, exclusions: tuple[Cube, ...]) -> str:
        if not exclusions:
            return f"base {self.base}"
        return f"base {self.base} \\ {{{','.join(str(x) for x in exclusions)}}}"

    @cached_property
    def cell_mask(self) -> int:
        """Bitmask of covered minterms."""
        removed = 0
        for exclusion in self.exclusions:
            removed |= exclusion.cell_mask
        return self.base.cell_mask & ~removed

    @property
    def cell_count(self) -> int:
        """Number of covered minterms."""
        return self.cell_mask.bit_count()

    @property
    def var_count(self) -> int:
        """Number of variables."""
        return self.base.var_count

    @property
    def is_implicant_shape(self) -> bool:
        """True for a plain power-of-two rectangle (no exclusions)."""
        return not self.exclusions

    @cached_property
    def cost(self) -> int:
        """2-input gate count of the group's product term."""
        return _closed_form_cost(
            self.base.literal_count, [x.literal_count for x in self.exclusions]
        )

    @cached_property
    def expression(self) -> Expr:
        """The group's product term; see group_expression()."""
        factors: list[Expr] = [lit(i, positive) for i, positive in self.base.fixed_literals()]
        for exclusion in self.exclusions:
            residual = [
                lit(i, trit is Trit.ZERO)
                for i, (trit, base_trit) in enumerate(
                    zip(exclusion.trits, self.base.trits, strict=True)
                )
                if base_trit is Trit.FREE and trit is not Trit.FREE
            ]
            factors.append(or_(*residual))
        return and_(*factors)

    @property
    def sort_key(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        """Canonical order: base first, then the exclusion list."""
        return (self.base.sort_key, tuple(x.sort_key for x in self.exclusions))

    def __str__(self) -> str:
        """Debug form, e.g. ``base --01 \\ {0001}``."""
        return self._describe(self.exclusions)


def _closed_form_cost(base_literals: int, exclusion_literals: list[int]) -> int:
    factor_count = base_literals + len(exclusion_literals)
    cost = factor_count - 1 if factor_count >= 1 else 0
    # residual literals of an exclusion = its literals minus the base's
    return cost + sum(lits - base_literals - 1 for lits in exclusion_literals)


def group_cells(g: Group) -> frozenset[int]:
    """Minterms covered by a group.

    Args:
        g: The group.

    Returns:
        Base cells minus the union of exclusion cells.
    """
    return frozenset(iter_cells(g.cell_mask))


def group_expression(g: Group) -> Expr:
    """Single product term of a group.

    Factors are one literal per fixed trit of the base, then per exclusion
    an OR of the complemented literals of the variables the exclusion fixes
    and the base leaves free.

    Args:
        g: The group.

    Returns:
        The product; TRUE for the full cube without exclusions.
    """
    return g.expression


def group_cost(g: Group) -> int:
    """2-input gate count of a group's product term.

    Args:
        g: The group.

    Returns:
        Equal to gate_cost(group_expression(g)).
    """
    return g.cost


def is_valid_group(g: Group, f: BoolFunc) -> bool:
    """Whether a group may appear in a cover of f.

    Args:
        g: The group.
        f: The function.

    Returns:
        True when the group covers no OFF cell and at least one ON cell.

    Raises:
        GroupError: On mismatched var_count.
    """
    if g.var_count != f.var_count:
        raise GroupError(f"group has {g.var_count} variables, function has {f.var_count}")
    return not g.cell_mask & f.off_mask and bool(g.cell_mask & f.on_mask)


def implicant_cubes(f: BoolFunc) -> list[Cube]:
    """Cubes lying inside ON plus DC that touch ON, in canonical order.

    Args:
        f: The function.

    Returns:
        Every implicant of f.
    """
    care = f.on_mask | f.dc_mask
    return [
        cube
        for cube in all_cubes(f.var_count)
        if not cube.cell_mask & ~care and cube.cell_mask & f.on_mask
    ]


@cache
def _proper_subcubes(var_count: int) -> dict[Cube, tuple[Cube, ...]]:
    cubes = all_cubes(var_count)
    return {
        base: tuple(
            c
            for c in cubes
            if c != base and not c.cell_mask & ~base.cell_mask
        )
        for base in cubes
    }


def _exclusion_sets(off: int, candidates: tuple[Cube, ...], limit: int) -> Iterator[tuple[Cube, ...]]:
    """Irredundant ways to remove every OFF cell of a base with <= limit subcubes.

    Branches on the lowest uncovered OFF cell. Every yielded set removes all
    of ``off`` and each member removes an OFF cell the others leave.
    """
    seen: set[tuple[int, ...]] = set()

    def extend(chosen: tuple[int, ...], removed: int) -> Iterator[tuple[int, ...]]:
        uncovered = off & ~removed
        if not uncovered:
            key = tuple(sorted(chosen))
            if key not in seen and _off_irredundant(key, candidates, off):
                seen.add(key)
                yield key
            return
        if len(chosen) == limit:
            return
        cell = uncovered & -uncovered
        for index, cand in enumerate(candidates):
            if cand.cell_mask & cell and index not in chosen:
                yield from extend((*chosen, index), removed | cand.cell_mask)

    for key in extend((), 0):
        yield tuple(candidates[i] for i in key)


def _off_irredundant(key: tuple[int, ...], candidates: tuple[Cube, ...], off: int) -> bool:
    for i in key:
        others = 0
        for j in key:
            if j != i:
                others |= candidates[j].cell_mask
        if not candidates[i].cell_mask & off & ~others:
            return False
    return True


def _all_exclusion_sets(
    base_cells: int, off: int, candidates: tuple[Cube, ...], limit: int
) -> Iterator[tuple[Cube, ...]]:
    """Every structurally valid exclusion set of <= limit subcubes that removes all of ``off``."""
    for size in range(1, limit + 1):
        for chosen in combinations(candidates, size):
            masks = [c.cell_mask for c in chosen]
            removed = 0
            for mask in masks:
                removed |= mask
            if off & ~removed or not base_cells & ~removed:
                continue
            if all(_removes_new(i, masks) for i in range(size)):
                yield chosen


def _removes_new(index: int, masks: list[int]) -> bool:
    others = 0
    for j, mask in enumerate(masks):
        if j != index:
            others |= mask
    return bool(masks[index] & ~others)


def enumerate_groups(
    f: BoolFunc, max_exclusions: int = DEFAULT_MAX_EXCLUSIONS, *, prune_dominated: bool = False
) -> list[Group]:
    """Valid groups of f with at most max_exclusions exclusions.

    Every base cube touching ON is considered, with every set of proper
    subcubes that removes all of its OFF cells. Exclusions may also remove
    ON or DC cells. Groups are deduplicated by covered-cell set, keeping the
    cheapest (ties by canonical order).

    With ``prune_dominated`` only exclusion sets in which every exclusion
    removes an OFF cell of its own are tried. Each skipped group has a valid
    superset of lower cost, so no cover optimum changes; the solver uses this.

    Args:
        f: The function.
        max_exclusions: Upper bound on exclusions per group.
        prune_dominated: Skip groups with an exclusion that removes no OFF cell of its own.

    Returns:
        Valid groups in canonical order. With max_exclusions=0 these are
        exactly the implicants of f.

    Raises:
        GroupError: If max_exclusions is negative.
    """
    if max_exclusions < 0:
        raise GroupError(f"max_exclusions must be >= 0, got {max_exclusions}")
    subcubes = _proper_subcubes(f.var_count)
    best: dict[int, Group] = {}

    def keep(group: Group) -> None:
        current = best.get(group.cell_mask)
        if current is None or (group.cost, group.sort_key) < (current.cost, current.sort_key):
            best[group.cell_mask] = group

    for base in all_cubes(f.var_count):
        base_cells = base.cell_mask
        if not base_cells & f.on_mask:
            continue
        off = base_cells & f.off_mask
        if not off:
            keep(Group(base))
        if max_exclusions == 0:
            continue
        if prune_dominated:
            if not off:
                continue
            candidates = tuple(c for c in subcubes[base] if c.cell_mask & off)
            exclusion_sets = _exclusion_sets(off, candidates, max_exclusions)
        else:
            exclusion_sets = _all_exclusion_sets(base_cells, off, subcubes[base], max_exclusions)
        for exclusions in exclusion_sets:
            removed = 0
            for exclusion in exclusions:
                removed |= exclusion.cell_mask
            covered = base_cells & ~removed
            if not covered & f.on_mask:
                continue
            cost = _closed_form_cost(base.literal_count, [x.literal_count for x in exclusions])
            current = best.get(covered)
            if current is not None and current.cost < cost:
                continue
            keep(Group(base, exclusions))
    return sorted(best.values(), key=lambda g: g.sort_key)


__all__ = [
    "DEFAULT_MAX_EXCLUSIONS",
    "Group",
    "enumerate_groups",
    "group_cells",
    "group_cost",
    "group_expression",
    "implicant_cubes",
    "is_valid_group",
]
