"""Tests for boolean functions and their input formats.

Tests cover:
- explicit minterm construction and validation
- the PLA subset (headers, labels, DC and OFF lines, errors)
- the minterm-list format and format detection
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from kmapfactor.boolfn import (
    BoolFunc,
    Value,
    default_var_names,
    format_minterm_list,
    format_pla,
    load_function,
    parse_function_text,
    parse_minterm_list,
    parse_minterms,
    parse_pla,
    value_at,
)
from kmapfactor.exceptions import InputFormatError

if TYPE_CHECKING:
    from pathlib import Path


class TestParseMinterms:
    """Test suite for parse_minterms and BoolFunc validation."""

    def test_builds_on_set(self) -> None:
        """Test a plain ON list.

        Tests: parse_minterms
        How: Build the three-in-a-row function
        Why: Most fixtures are built this way
        """
        # Act
        f = parse_minterms(4, [5, 9, 13])

        # Assert
        assert f.on_set == frozenset({5, 9, 13})
        assert f.dc_set == frozenset()
        assert f.var_names == ("a", "b", "c", "d")
        assert f.off_set == frozenset(range(16)) - {5, 9, 13}

    def test_empty_on_set_is_constant_zero(self) -> None:
        """Test an empty ON list gives the contradiction."""
        f = parse_minterms(2, [])
        assert f.is_contradiction
        assert not f.is_tautology

    @pytest.mark.parametrize(
        ("var_count", "on", "dc"),
        [(4, [5, 9, 13], [5]), (4, [16], []), (0, [], []), (7, [], []), (2, [], [-1])],
    )
    def test_rejects_bad_input(self, var_count: int, on: list[int], dc: list[int]) -> None:
        """Test overlaps, out-of-range minterms and bad widths.

        Tests: BoolFunc.__post_init__ validation
        How: Construct invalid functions
        Why: Every later stage assumes disjoint in-range sets
        """
        with pytest.raises(InputFormatError):
            parse_minterms(var_count, on, dc)

    def test_rejects_bad_names(self) -> None:
        """Test names must be unique identifiers, one per variable."""
        with pytest.raises(InputFormatError):
            parse_minterms(2, [1], var_names=["a", "a"])
        with pytest.raises(InputFormatError):
            parse_minterms(2, [1], var_names=["a", "1b"])
        with pytest.raises(InputFormatError):
            parse_minterms(2, [1], var_names=["a"])

    def test_default_names(self) -> None:
        """Test a..d up to four variables, x1..xn beyond."""
        assert default_var_names(3) == ("a", "b", "c")
        assert default_var_names(5) == ("x1", "x2", "x3", "x4", "x5")


class TestValueAt:
    """Test suite for value_at."""

    def test_values(self, eq1_function: BoolFunc) -> None:
        """Test ONE, ZERO and DC lookups.

        Tests: value_at
        How: Query an ON cell, an OFF cell and a DC cell
        Why: Rendering and verification depend on it
        """
        assert value_at(eq1_function, 5) is Value.ONE
        assert value_at(eq1_function, 0) is Value.ZERO
        with_dc = parse_minterms(2, [1], [2])
        assert with_dc.value_at(2) is Value.DC

    def test_out_of_range(self, eq1_function: BoolFunc) -> None:
        """Test minterm 2**n is rejected."""
        with pytest.raises(InputFormatError):
            value_at(eq1_function, 16)


class TestParsePla:
    """Test suite for the PLA reader."""

    def test_cubes_union_into_on_set(self) -> None:
        """Test overlapping cube lines.

        Tests: parse_pla
        How: Two product lines that share minterm 13
        Why: ON-set is the union of the cubes
        """
        # Act
        f = parse_pla(".i 4\n.o 1\n-101 1\n1-01 1\n.e\n")

        # Assert
        assert f.on_set == frozenset({5, 9, 13})

    def test_empty_body_is_constant_zero(self) -> None:
        """Test headers only."""
        assert parse_pla(".i 2\n.o 1\n.e\n").is_contradiction

    def test_multi_output_rejected(self) -> None:
        """Test .o other than 1 is an error with its line number."""
        with pytest.raises(InputFormatError, match="multi-output") as excinfo:
            parse_pla(".i 4\n.o 2\n0101 11\n.e\n")
        assert excinfo.value.line == 2

    def test_labels_dc_and_off_lines(self) -> None:
        """Test .ilb, .type fr, .p, .ob, comments and explicit OFF lines.

        Tests: PLA extras
        How: Parse a file using every accepted directive
        Why: PLA files from other tools carry these headers
        """
        text = """# sample
.i 3
.o 1
.ilb x y z
.ob f
.type fr
.p 3
1-1 1   # x z
000 -
010 0
.e
"""
        f = parse_pla(text)
        assert f.var_names == ("x", "y", "z")
        assert f.on_set == frozenset({5, 7})
        assert f.dc_set == frozenset({0})

    @pytest.mark.parametrize(
        "text",
        [
            "0101 1\n",  # cube before headers
            ".i 4\n.o 1\n010 1\n",  # width
            ".i 2\n.o 1\n01 x\n",  # output char
            ".i 2\n.o 1\n.type fd\n",  # type
            ".i 2\n.o 1\n.kiss\n",  # directive
            ".i 2\n.o 1\n01 1\n0- -\n",  # ON then DC
            ".i 2\n.o 1\n0- -\n01 1\n",  # DC then ON
            ".i 2\n.o 1\n.ilb a\n",  # label count
            ".o 1\n",  # missing .i
        ],
    )
    def test_rejects_malformed(self, text: str) -> None:
        """Test PLA errors are InputFormatError."""
        with pytest.raises(InputFormatError):
            parse_pla(text)

    def test_format_pla_reads_back(self) -> None:
        """Test format_pla output parses to the same sets and names."""
        f = parse_minterms(3, [1, 6], [7], ["p", "q", "r"])
        again = parse_pla(format_pla(f))
        assert again == f


class TestMintermList:
    """Test suite for the minterm-list format."""

    def test_ranges_and_names(self) -> None:
        """Test ranges, key order and names.

        Tests: parse_minterm_list
        How: Keys out of order with a range in the ON list
        Why: Hand-written inputs use ranges
        """
        f = parse_minterm_list("on = 0-3, 8; names=p,q,r,s; vars=4; dc=15;")
        assert f.on_set == frozenset({0, 1, 2, 3, 8})
        assert f.dc_set == frozenset({15})
        assert f.var_names == ("p", "q", "r", "s")

    def test_canonical_form(self) -> None:
        """Test format_minterm_list writes names only when not default."""
        assert format_minterm_list(parse_minterms(4, [13, 5, 9])) == "vars=4; on=5,9,13; dc=;"
        named = parse_minterms(2, [1], [], ["x", "y"])
        assert format_minterm_list(named) == "vars=2; on=1; dc=; names=x,y;"
        assert parse_minterm_list(format_minterm_list(named)) == named

    @pytest.mark.parametrize("text", ["on=1;", "vars=two; on=1;", "vars=2; on=1; on=2;", "vars=2; off=1;"])
    def test_rejects_malformed(self, text: str) -> None:
        """Test missing, duplicate and unknown keys."""
        with pytest.raises(InputFormatError):
            parse_minterm_list(text)

    @pytest.mark.parametrize(
        "text",
        ["vars=4; on=0-100000000000;", "vars=4; on=3-16;", "vars=4; dc=9-2;", "vars=4; on=-3;", "vars=70; on=0-5;"],
        ids=["huge", "past-end", "reversed", "negative", "too-many-vars"],
    )
    def test_rejects_bad_ranges(self, text: str) -> None:
        """Test ranges are bounded by the map size before expansion.

        Tests: parse_minterm_list range checks
        How: Ranges past 2**vars, reversed and negative bounds, an oversized vars
        Why: A range is expanded cell by cell, so an unbounded one would exhaust memory
        """
        with pytest.raises(InputFormatError):
            parse_minterm_list(text)

    def test_full_range(self) -> None:
        """Test a range ending on the last cell is accepted."""
        assert parse_minterm_list("vars=3; on=0-7;").is_tautology


class TestFormatDetection:
    """Test suite for parse_function_text and load_function."""

    def test_detects_both_formats(self, tmp_path: Path) -> None:
        """Test detection from file content.

        Tests: load_function
        How: Write a PLA file and a minterm-list file
        Why: The CLI accepts either without a format flag
        """
        pla = tmp_path / "f.pla"
        pla.write_text(".i 4\n.o 1\n-101 1\n1-01 1\n.e\n", encoding="utf-8")
        listing = tmp_path / "f.txt"
        listing.write_text("# comment\nvars=4; on=5,9,13;\n", encoding="utf-8")

        assert load_function(pla) == load_function(listing)

    def test_unknown_format(self) -> None:
        """Test text in neither format is rejected."""
        with pytest.raises(InputFormatError):
            parse_function_text("hello world\n")

    def test_undecodable_file(self, tmp_path: Path) -> None:
        """Test a file that is not UTF-8 is an input error."""
        path = tmp_path / "f.pla"
        path.write_bytes(b"\xff\xfe.i 2\n")

        with pytest.raises(InputFormatError, match="not UTF-8"):
            load_function(path)

    def test_bool_func_is_hashable_value(self) -> None:
        """Test equal functions compare and hash equal."""
        assert hash(parse_minterms(2, [1, 2])) == hash(BoolFunc(2, frozenset({2, 1})))
