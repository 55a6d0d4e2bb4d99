"""Subcube algebra over the n-dimensional boolean space.

A Cube is the algebraic form of a power-of-two Karnaugh-map rectangle: each
variable is fixed to 0, fixed to 1, or free. Border adjacency of the map is
plain Hamming-1 adjacency here, so wraparound needs no special case.

Minterm encoding is MSB-first: variable 0 is the most significant bit.
Cell sets are carried as int bitmasks (bit m set means minterm m belongs).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cache, cached_property
from itertools import product

from kmapfactor.exceptions import CubeError

MAX_VARS = 6


class Trit(IntEnum):
    """Per-variable state of a cube; the int order is the canonical order."""

    ZERO = 0
    ONE = 1
    FREE = 2

    @property
    def char(self) -> str:
        """Single-character text form."""
        return _TRIT_CHARS[self]


_TRIT_CHARS = {Trit.ZERO: "0", Trit.ONE: "1", Trit.FREE: "-"}
_CHAR_TRITS = {char: trit for trit, char in _TRIT_CHARS.items()}


def check_var_count(var_count: int) -> None:
    """Validate a variable count.

    Args:
        var_count: Number of variables.

    Raises:
        CubeError: If var_count is outside 1..MAX_VARS.
    """
    if not 1 <= var_count <= MAX_VARS:
        raise CubeError(f"var_count must be in 1..{MAX_VARS}, got {var_count}")


def bit_of(var_index: int, var_count: int) -> int:
    """Bit weight of a variable under the MSB-first encoding.

    Args:
        var_index: 0-based variable index.
        var_count: Number of variables.

    Returns:
        The power of two contributed by that variable.
    """
    return 1 << (var_count - 1 - var_index)


def iter_cells(mask: int) -> list[int]:
    """List the minterms set in a cell bitmask, ascending.

    Args:
        mask: Cell bitmask.

    Returns:
        Sorted minterm indices.
    """
    cells: list[int] = []
    while mask:
        low = mask & -mask
        cells.append(low.bit_length() - 1)
        mask ^= low
    return cells


@dataclass(frozen=True, order=False)
class Cube:
    """A subcube: one trit per variable.

    Attributes:
        trits: Trit per variable, variable 0 first.
    """

    trits: tuple[Trit, ...]

    def __post_init__(self) -> None:
        """Validate width and coerce plain ints to Trit."""
        check_var_count(len(self.trits))
        try:
            object.__setattr__(self, "trits", tuple(Trit(t) for t in self.trits))
        except ValueError as exc:
            raise CubeError(str(exc)) from None

    @classmethod
    def parse(cls, text: str) -> Cube:
        """Build a cube from its canonical trit string, e.g. ``"--01"``.

        Args:
            text: One character per variable from ``0``, ``1``, ``-``.

        Returns:
            The cube.

        Raises:
            CubeError: On characters outside ``01-`` or bad width.
        """
        try:
            trits = tuple(_CHAR_TRITS[char] for char in text)
        except KeyError as exc:
            raise CubeError(f"invalid trit character {exc.args[0]!r} in {text!r}") from None
        return cls(trits)

    @classmethod
    def minterm(cls, index: int, var_count: int) -> Cube:
        """Build the fully fixed cube of one minterm.

        Args:
            index: Minterm index.
            var_count: Number of variables.

        Returns:
            The single-cell cube.

        Raises:
            CubeError: If the index is out of range.
        """
        check_var_count(var_count)
        if not 0 <= index < 1 << var_count:
            raise CubeError(f"minterm {index} out of range for {var_count} variables")
        return cls(
            tuple(
                Trit.ONE if index & bit_of(i, var_count) else Trit.ZERO
                for i in range(var_count)
            )
        )

    @property
    def var_count(self) -> int:
        """Number of variables."""
        return len(self.trits)

    @cached_property
    def free_count(self) -> int:
        """Number of FREE trits."""
        return sum(1 for trit in self.trits if trit is Trit.FREE)

    @property
    def literal_count(self) -> int:
        """Number of fixed trits, i.e. literals of the product term."""
        return self.var_count - self.free_count

    @cached_property
    def fixed_mask(self) -> int:
        """Bits of the fixed variables."""
        n = self.var_count
        return sum(bit_of(i, n) for i, trit in enumerate(self.trits) if trit is not Trit.FREE)

    @cached_property
    def fixed_value(self) -> int:
        """Values of the fixed variables, placed at their bits."""
        n = self.var_count
        return sum(bit_of(i, n) for i, trit in enumerate(self.trits) if trit is Trit.ONE)

    @cached_property
    def cell_mask(self) -> int:
        """Bitmask of the member minterms."""
        return _cell_mask(self.var_count, self.fixed_mask, self.fixed_value)

    @property
    def cell_count(self) -> int:
        """Number of member minterms, 2**free_count."""
        return 1 << self.free_count

    @property
    def sort_key(self) -> tuple[int, ...]:
        """Canonical order key: lexicographic over trits with 0 < 1 < -."""
        return tuple(int(trit) for trit in self.trits)

    def fixed_literals(self) -> list[tuple[int, bool]]:
        """Literals of the product term in variable order.

        Returns:
            (variable index, positive) for each fixed trit.
        """
        return [
            (i, trit is Trit.ONE)
            for i, trit in enumerate(self.trits)
            if trit is not Trit.FREE
        ]

    def __str__(self) -> str:
        """Canonical trit string."""
        return "".join(trit.char for trit in self.trits)

    def __repr__(self) -> str:
        """Debug form."""
        return f"Cube({str(self)!r})"


@cache
def _cell_mask(var_count: int, fixed_mask: int, fixed_value: int) -> int:
    mask = 0
    for minterm in range(1 << var_count):
        if minterm & fixed_mask == fixed_value:
            mask |= 1 << minterm
    return mask


def cube_cells(cube: Cube) -> frozenset[int]:
    """Minterms matching every fixed trit of the cube.

    Args:
        cube: The cube.

    Returns:
        Set of minterm indices.
    """
    return frozenset(iter_cells(cube.cell_mask))


def cube_contains(outer: Cube, inner: Cube) -> bool:
    """Whether every fixed trit of outer is fixed to the same value in inner.

    Args:
        outer: Enclosing candidate.
        inner: Contained candidate.

    Returns:
        True when inner is a subcube of outer.

    Raises:
        CubeError: On mismatched var_count.
    """
    if outer.var_count != inner.var_count:
        raise CubeError(
            f"cannot compare cubes of {outer.var_count} and {inner.var_count} variables"
        )
    return all(
        o is Trit.FREE or o is i for o, i in zip(outer.trits, inner.trits, strict=True)
    )


@cache
def all_cubes(var_count: int) -> tuple[Cube, ...]:
    """Every cube over var_count variables in canonical order.

    Args:
        var_count: Number of variables.

    Returns:
        All 3**var_count cubes, lexicographic over trit strings with 0 < 1 < -.
    """
    check_var_count(var_count)
    return tuple(Cube(trits) for trits in product(tuple(Trit), repeat=var_count))
