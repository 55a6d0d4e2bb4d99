"""Tests for the subcube algebra.

Tests cover:
- trit-string parsing and canonical form
- member cells and containment
- canonical enumeration order of all cubes
"""

from __future__ import annotations

import pytest

from kmapfactor.cube import Cube, Trit, all_cubes, bit_of, cube_cells, cube_contains, iter_cells
from kmapfactor.exceptions import CubeError


class TestCubeParsing:
    """Test suite for Cube construction."""

    def test_parse_round_trips_to_trit_string(self) -> None:
        """Test parse and str agree.

        Tests: Cube.parse / Cube.__str__
        How: Parse a mixed trit string and print it back
        Why: The trit string is the debug and netlist-comment form
        """
        # Act
        cube = Cube.parse("--01")

        # Assert
        assert str(cube) == "--01"
        assert cube.trits == (Trit.FREE, Trit.FREE, Trit.ZERO, Trit.ONE)
        assert cube.literal_count == 2
        assert cube.cell_count == 4

    @pytest.mark.parametrize("text", ["", "01x1", "0000000"])
    def test_parse_rejects_bad_text(self, text: str) -> None:
        """Test malformed trit strings raise CubeError.

        Tests: Width and character validation
        How: Parse an empty, an invalid-character and a too-wide string
        Why: Cubes of 0 or more than 6 variables are out of range
        """
        with pytest.raises(CubeError):
            Cube.parse(text)

    def test_minterm_is_fully_fixed(self) -> None:
        """Test Cube.minterm uses the MSB-first encoding.

        Tests: Single-cell cube construction
        How: Build minterm 5 over four variables
        Why: a is the most significant bit, so 5 is 0101
        """
        assert str(Cube.minterm(5, 4)) == "0101"
        with pytest.raises(CubeError):
            Cube.minterm(16, 4)


class TestCubeCells:
    """Test suite for cube_cells and cube_contains."""

    @pytest.mark.parametrize(
        ("text", "cells"),
        [
            ("--01", {1, 5, 9, 13}),
            ("0101", {5}),
            ("----", set(range(16))),
        ],
    )
    def test_cube_cells(self, text: str, cells: set[int]) -> None:
        """Test member minterms of a cube.

        Tests: cube_cells
        How: Compare against hand-enumerated sets
        Why: Every cover computation starts from cube cells
        """
        assert cube_cells(Cube.parse(text)) == frozenset(cells)

    @pytest.mark.parametrize(
        ("outer", "inner", "expected"),
        [("--01", "0001", True), ("--01", "0011", False), ("1-0-", "1-0-", True)],
    )
    def test_cube_contains(self, outer: str, inner: str, expected: bool) -> None:
        """Test subcube containment.

        Tests: cube_contains
        How: A contained minterm, a conflicting one and reflexivity
        Why: Exclusions must be subcubes of their base
        """
        assert cube_contains(Cube.parse(outer), Cube.parse(inner)) is expected

    def test_contains_matches_cell_subset(self) -> None:
        """Test containment agrees with cell-set inclusion for every pair.

        Tests: cube_contains over all 3-variable cubes
        How: Compare with cube_cells(inner) <= cube_cells(outer)
        Why: The algebraic test must equal the set-theoretic definition
        """
        cubes = all_cubes(3)
        for outer in cubes:
            for inner in cubes:
                assert cube_contains(outer, inner) == (cube_cells(inner) <= cube_cells(outer))

    def test_contains_rejects_width_mismatch(self) -> None:
        """Test cubes of different widths cannot be compared."""
        with pytest.raises(CubeError):
            cube_contains(Cube.parse("--"), Cube.parse("---"))


class TestAllCubes:
    """Test suite for all_cubes ordering."""

    def test_counts_and_order(self) -> None:
        """Test 3**n cubes in 0 < 1 < - lexicographic order.

        Tests: all_cubes
        How: Check sizes and the first and last cubes
        Why: Canonical order makes every tie-break deterministic
        """
        assert [str(c) for c in all_cubes(1)] == ["0", "1", "-"]
        assert len(all_cubes(4)) == 81
        two = all_cubes(2)
        assert str(two[0]) == "00"
        assert str(two[-1]) == "--"
        assert [c.sort_key for c in two] == sorted(c.sort_key for c in two)


def test_bit_helpers() -> None:
    """Test bit_of and iter_cells on the MSB-first encoding."""
    assert bit_of(0, 4) == 8
    assert bit_of(3, 4) == 1
    assert iter_cells(0b10100010) == [1, 5, 7]
