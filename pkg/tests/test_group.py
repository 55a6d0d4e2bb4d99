"""Tests for generalised groups.

Tests cover:
- covered cells, product term and closed-form cost of a group
- structural validation
- validity against a function
- candidate enumeration with and without exclusions
"""

from __future__ import annotations

from itertools import combinations
from typing import TYPE_CHECKING

import pytest

from kmapfactor.boolfn import parse_minterms
from kmapfactor.cube import Cube, all_cubes, cube_cells
from kmapfactor.exceptions import GroupError
from kmapfactor.expr import expr_to_func, gate_cost, print_expr
from kmapfactor.group import (
    Group,
    enumerate_groups,
    group_cells,
    group_cost,
    group_expression,
    implicant_cubes,
    is_valid_group,
)
from kmapfactor.sweep import function_from_index

if TYPE_CHECKING:
    from kmapfactor.boolfn import BoolFunc

NAMES = ("a", "b", "c", "d")


def make(base: str, *exclusions: str) -> Group:
    return Group(Cube.parse(base), tuple(Cube.parse(x) for x in exclusions))


def brute_force_groups(f: BoolFunc, limit: int) -> dict[int, int]:
    """Cheapest cost per cell mask over every valid Group with <= limit exclusions."""
    cubes = all_cubes(f.var_count)
    cheapest: dict[int, int] = {}
    for base in cubes:
        for size in range(limit + 1):
            for exclusions in combinations(cubes, size):
                try:
                    group = Group(base, exclusions)
                except GroupError:
                    continue
                if is_valid_group(group, f):
                    mask = group.cell_mask
                    cheapest[mask] = min(group.cost, cheapest.get(mask, group.cost))
    return cheapest


class TestGroupShape:
    """Test suite for cells, expression and cost of a group."""

    @pytest.mark.parametrize(
        ("base", "exclusions", "cells"),
        [
            ("--01", ["0001"], {5, 9, 13}),
            ("1---", ["1-10"], {8, 9, 11, 12, 13, 15}),
            ("----", ["00--", "--00"], {5, 6, 7, 9, 10, 11, 13, 14, 15}),
        ],
        ids=["three-in-a-row", "six-block", "three-by-three"],
    )
    def test_group_cells(self, base: str, exclusions: list[str], cells: set[int]) -> None:
        """Test base cells minus exclusion cells.

        Tests: group_cells
        How: Non-power-of-two blocks of 3, 6 and 9 cells
        Why: These are the shapes conventional grouping cannot express
        """
        assert group_cells(make(base, *exclusions)) == frozenset(cells)

    @pytest.mark.parametrize(
        ("base", "exclusions", "text"),
        [
            ("--01", ["0001"], "c'd(a+b)"),
            ("-1-1", ["0111"], "bd(a+c')"),
            ("0101", [], "a'bc'd"),
            ("---1", ["0001"], "d(a+b+c)"),
            ("----", ["00--", "--00"], "(a+b)(c+d)"),
        ],
    )
    def test_group_expression(self, base: str, exclusions: list[str], text: str) -> None:
        """Test the factored product of a group.

        Tests: group_expression
        How: Print the product of worked groups
        Why: Each exclusion becomes one OR of complemented residual literals
        """
        assert print_expr(group_expression(make(base, *exclusions)), NAMES) == text

    @pytest.mark.parametrize(
        ("base", "exclusions", "cost"),
        [("--01", ["0001"], 3), ("1-0-", [], 1), ("----", ["00--", "--00"], 3), ("----", [], 0)],
    )
    def test_group_cost(self, base: str, exclusions: list[str], cost: int) -> None:
        """Test the closed-form cost against gate_cost of the product."""
        group = make(base, *exclusions)
        assert group_cost(group) == cost
        assert gate_cost(group_expression(group)) == cost

    def test_closed_form_matches_expression_everywhere(self) -> None:
        """Test closed form, tabulated product and cell set agree for all groups.

        Tests: Group.cost, Group.expression and Group.cell_mask consistency
        How: Every valid group of a dense 4-variable function
        Why: The solver trusts the closed form and the mask
        """
        f = parse_minterms(4, [0, 1, 2, 3, 5, 7, 8, 10, 13, 15], [6, 14])
        for group in enumerate_groups(f, 2):
            assert group.cost == gate_cost(group.expression)
            assert expr_to_func(group.expression, 4).on_set == group_cells(group)

    def test_str_is_debug_form(self) -> None:
        """Test the trit-string debug form."""
        assert str(make("--01", "0001")) == "base --01 \\ {0001}"
        assert str(make("1-0-")) == "base 1-0-"


class TestGroupValidation:
    """Test suite for Group structural invariants."""

    @pytest.mark.parametrize(
        ("base", "exclusions"),
        [
            ("--01", ["0011"]),  # not inside the base
            ("--01", ["--01"]),  # not proper
            ("--01", ["0001", "0001"]),  # duplicate
            ("0-", ["00", "01"]),  # nothing left
            ("----", ["00--", "000-"]),  # second exclusion removes nothing new
            ("--", ["000"]),  # width
        ],
    )
    def test_rejects_invalid(self, base: str, exclusions: list[str]) -> None:
        """Test invalid exclusion lists raise GroupError."""
        with pytest.raises(GroupError):
            make(base, *exclusions)

    def test_exclusions_are_canonically_ordered(self) -> None:
        """Test exclusion order does not matter."""
        assert make("----", "--00", "00--") == make("----", "00--", "--00")


class TestIsValidGroup:
    """Test suite for is_valid_group."""

    def test_three_in_a_row_is_valid(self, eq1_function: BoolFunc) -> None:
        """Test the punctured row covers only ON cells."""
        assert is_valid_group(make("--01", "0001"), eq1_function)

    def test_group_touching_off_cell_is_invalid(self) -> None:
        """Test the whole d column touches OFF cell 1 of the seven-of-column map."""
        f = parse_minterms(4, [3, 5, 7, 9, 11, 13, 15])
        assert not is_valid_group(make("---1"), f)
        assert is_valid_group(make("---1", "0001"), f)

    def test_constant_zero_has_no_valid_group(self) -> None:
        """Test no group is valid without ON cells."""
        f = parse_minterms(2, [])
        assert not any(is_valid_group(Group(c), f) for c in all_cubes(2))

    def test_width_mismatch(self, eq1_function: BoolFunc) -> None:
        """Test groups and functions must share var_count."""
        with pytest.raises(GroupError):
            is_valid_group(make("--1"), eq1_function)


class TestEnumerateGroups:
    """Test suite for enumerate_groups."""

    def test_without_exclusions_gives_implicants(self, eq1_function: BoolFunc) -> None:
        """Test max_exclusions=0 yields exactly the implicants.

        Tests: enumerate_groups(f, 0)
        How: Compare with a brute-force filter of all 81 cubes
        Why: Conventional mode is the exclusion-free special case
        """
        groups = enumerate_groups(eq1_function, 0)

        assert [str(g.base) for g in groups] == ["0101", "1001", "1101", "1-01", "-101"]
        assert all(g.is_implicant_shape for g in groups)
        assert [g.base for g in groups] == implicant_cubes(eq1_function)

    def test_one_exclusion_adds_punctured_row(self, eq1_function: BoolFunc) -> None:
        """Test the three-in-a-row group appears with one exclusion."""
        assert make("--01", "0001") in enumerate_groups(eq1_function, 1)

    def test_constant_zero(self) -> None:
        """Test no candidates without ON cells."""
        assert enumerate_groups(parse_minterms(3, []), 2) == []

    def test_every_group_valid_and_unique(self, square_function: BoolFunc) -> None:
        """Test enumerated groups are valid and have distinct cell sets."""
        groups = enumerate_groups(square_function, 2)
        assert all(is_valid_group(g, square_function) for g in groups)
        assert len({g.cell_mask for g in groups}) == len(groups)
        assert make("----", "00--", "--00") in groups

    def test_exclusions_may_remove_on_cells(self) -> None:
        """Test a group whose exclusion removes an ON cell is still enumerated.

        Tests: enumerate_groups completeness
        How: ON {0, 1, 2} and the group 0-- minus {000, 011}, which covers {1, 2}
        Why: Validity depends only on the covered cells, not on what each exclusion removes
        """
        f = parse_minterms(3, [0, 1, 2])

        groups = {g.cell_mask: g for g in enumerate_groups(f, 2)}
        pruned = {g.cell_mask for g in enumerate_groups(f, 2, prune_dominated=True)}

        assert groups[0b110] == make("0--", "000", "011")
        assert groups[0b110].cost == 4
        assert 0b110 not in pruned

    @pytest.mark.parametrize("index", range(0, 256, 17))
    def test_matches_brute_force(self, index: int) -> None:
        """Test enumeration equals brute force on a strided subset of n=3.

        Tests: enumerate_groups(f, 2)
        How: Build every Group with up to two exclusions and keep the valid ones
        Why: Enumeration must return every valid cell set at its cheapest cost
        """
        f = function_from_index(index, 3)

        found = {g.cell_mask: g.cost for g in enumerate_groups(f, 2)}

        assert found == brute_force_groups(f, 2)

    @pytest.mark.slow
    def test_matches_brute_force_everywhere(self) -> None:
        """Test enumeration equals brute force on all 256 functions of 3 variables."""
        for index in range(256):
            f = function_from_index(index, 3)
            found = {g.cell_mask: g.cost for g in enumerate_groups(f, 2)}
            assert found == brute_force_groups(f, 2), index

    def test_pruning_keeps_a_cheaper_superset(self) -> None:
        """Test every group skipped by pruning has a no-costlier valid superset.

        Tests: enumerate_groups(prune_dominated=True)
        How: Compare pruned and complete enumerations of a sparse 4-variable map
        Why: The solver relies on pruning never changing an optimum
        """
        f = parse_minterms(4, [0, 1, 3, 4, 6, 9, 14], [12])
        complete = enumerate_groups(f, 2)
        pruned = {g.cell_mask: g.cost for g in enumerate_groups(f, 2, prune_dominated=True)}

        assert set(pruned) <= {g.cell_mask for g in complete}
        for group in complete:
            assert any(
                mask & group.cell_mask == group.cell_mask and cost <= group.cost
                for mask, cost in pruned.items()
            ), str(group)

    def test_negative_bound_rejected(self, eq1_function: BoolFunc) -> None:
        """Test max_exclusions must be non-negative."""
        with pytest.raises(GroupError):
            enumerate_groups(eq1_function, -1)

    def test_cube_cells_agree_with_masks(self) -> None:
        """Test cell masks of implicant groups match cube_cells."""
        f = parse_minterms(3, [1, 3, 5])
        for group in enumerate_groups(f, 0):
            assert group_cells(group) == cube_cells(group.base)
