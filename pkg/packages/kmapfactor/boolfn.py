"""Single-output boolean functions and their text formats.

A BoolFunc is an ON-set and a DC-set of minterm indices over at most six
variables; every other minterm is OFF. The first variable is the most
significant bit, so with names a,b,c,d the index of a cell is 8a+4b+2c+d.

Two input formats are understood:

- a subset of the Berkeley PLA format (single output, fr-style), and
- a minterm list, e.g. ``vars=4; on=5,9,13; dc=;``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING

from kmapfactor.cube import MAX_VARS, Cube, iter_cells
from kmapfactor.exceptions import CubeError, InputFormatError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from pathlib import Path

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_SHORT_NAMES = ("a", "b", "c", "d")


class Value(Enum):
    """Value of a function at one minterm."""

    ZERO = "0"
    ONE = "1"
    DC = "-"


def default_var_names(var_count: int) -> tuple[str, ...]:
    """Default variable labels: a..d up to four variables, x1..xn beyond.

    Args:
        var_count: Number of variables.

    Returns:
        Tuple of names, most significant variable first.
    """
    if var_count <= len(_SHORT_NAMES):
        return _SHORT_NAMES[:var_count]
    return tuple(f"x{i}" for i in range(1, var_count + 1))


def _check_names(names: Sequence[str], var_count: int) -> tuple[str, ...]:
    if len(names) != var_count:
        raise InputFormatError(f"expected {var_count} variable names, got {len(names)}")
    for name in names:
        if not _IDENTIFIER.fullmatch(name):
            raise InputFormatError(f"variable name {name!r} is not an identifier")
    if len(set(names)) != len(names):
        raise InputFormatError(f"duplicate variable names in {list(names)}")
    return tuple(names)


@dataclass(frozen=True)
class BoolFunc:
    """A single-output boolean function with don't-cares.

    Attributes:
        var_count: Number of input variables (1..6).
        on_set: Minterms where the function is 1.
        dc_set: Minterms where the function is unconstrained.
        var_names: Label per variable, most significant first.
    """

    var_count: int
    on_set: frozenset[int] = field(default_factory=frozenset)
    dc_set: frozenset[int] = field(default_factory=frozenset)
    var_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        """Validate ranges and disjointness, fill default names."""
        if not 1 <= self.var_count <= MAX_VARS:
            raise InputFormatError(f"var_count must be in 1..{MAX_VARS}, got {self.var_count}")
        object.__setattr__(self, "on_set", frozenset(self.on_set))
        object.__setattr__(self, "dc_set", frozenset(self.dc_set))
        size = self.size
        for label, cells in (("ON", self.on_set), ("DC", self.dc_set)):
            bad = sorted(m for m in cells if not 0 <= m < size)
            if bad:
                raise InputFormatError(
                    f"{label} minterm {bad[0]} out of range 0..{size - 1}"
                )
        overlap = self.on_set & self.dc_set
        if overlap:
            raise InputFormatError(f"minterm {min(overlap)} is both ON and DC")
        names = self.var_names or default_var_names(self.var_count)
        object.__setattr__(self, "var_names", _check_names(names, self.var_count))

    @classmethod
    def from_masks(
        cls, var_count: int, on_mask: int, dc_mask: int = 0, var_names: Sequence[str] = ()
    ) -> BoolFunc:
        """Build from cell bitmasks.

        Args:
            var_count: Number of variables.
            on_mask: ON cells as a bitmask.
            dc_mask: DC cells as a bitmask.
            var_names: Optional names.

        Returns:
            The function.
        """
        return cls(
            var_count,
            frozenset(iter_cells(on_mask)),
            frozenset(iter_cells(dc_mask)),
            tuple(var_names),
        )

    @property
    def size(self) -> int:
        """Number of minterms, 2**var_count."""
        return 1 << self.var_count

    @cached_property
    def full_mask(self) -> int:
        """Bitmask of every minterm."""
        return (1 << self.size) - 1

    @cached_property
    def on_mask(self) -> int:
        """ON cells as a bitmask."""
        return sum(1 << m for m in self.on_set)

    @cached_property
    def dc_mask(self) -> int:
        """DC cells as a bitmask."""
        return sum(1 << m for m in self.dc_set)

    @cached_property
    def off_mask(self) -> int:
        """OFF cells as a bitmask."""
        return self.full_mask & ~(self.on_mask | self.dc_mask)

    @property
    def off_set(self) -> frozenset[int]:
        """Minterms where the function is 0."""
        return frozenset(iter_cells(self.off_mask))

    @property
    def is_contradiction(self) -> bool:
        """True when there is no ON cell."""
        return not self.on_set

    @property
    def is_tautology(self) -> bool:
        """True when there is an ON cell and no OFF cell."""
        return bool(self.on_set) and self.off_mask == 0

    def value_at(self, minterm: int) -> Value:
        """Value at one minterm; see module-level value_at().

        Args:
            minterm: Minterm index.

        Returns:
            ONE, DC or ZERO.
        """
        return value_at(self, minterm)


def value_at(f: BoolFunc, minterm: int) -> Value:
    """Value of f at a minterm.

    Args:
        f: The function.
        minterm: Minterm index.

    Returns:
        ONE if in the ON-set, DC if in the DC-set, else ZERO.

    Raises:
        InputFormatError: If the minterm is out of range.
    """
    if not 0 <= minterm < f.size:
        raise InputFormatError(f"minterm {minterm} out of range 0..{f.size - 1}")
    if minterm in f.on_set:
        return Value.ONE
    if minterm in f.dc_set:
        return Value.DC
    return Value.ZERO


def parse_minterms(
    var_count: int,
    on: Iterable[int],
    dc: Iterable[int] = (),
    var_names: Sequence[str] = (),
) -> BoolFunc:
    """Build a function from explicit minterm lists.

    Args:
        var_count: Number of variables (1..6).
        on: ON minterms.
        dc: DC minterms.
        var_names: Optional names; defaults per default_var_names().

    Returns:
        The function.
    """
    return BoolFunc(var_count, frozenset(on), frozenset(dc), tuple(var_names))


# --- PLA -------------------------------------------------------------------

_PLA_TYPES = frozenset({"f", "fr"})


@dataclass
class _PlaState:
    inputs: int | None = None
    outputs: int | None = None
    labels: tuple[str, ...] = ()
    on_mask: int = 0
    dc_mask: int = 0
    on_lines: dict[int, int] = field(default_factory=dict)


def _pla_directive(state: _PlaState, words: list[str], lineno: int) -> bool:
    """Apply one directive line.

    Returns:
        True when the directive ends the PLA body.
    """
    keyword, args = words[0], words[1:]
    match keyword:
        case ".e" | ".end":
            return True
        case ".i" | ".o" | ".p":
            if len(args) != 1 or not args[0].isdigit():
                raise InputFormatError(f"{keyword} expects one integer", lineno)
            value = int(args[0])
            if keyword == ".i":
                if not 1 <= value <= MAX_VARS:
                    raise InputFormatError(
                        f".i must be in 1..{MAX_VARS}, got {value}", lineno
                    )
                state.inputs = value
            elif keyword == ".o":
                if value != 1:
                    raise InputFormatError(
                        f"multi-output PLA unsupported (.o {value})", lineno
                    )
                state.outputs = value
        case ".ilb":
            state.labels = tuple(args)
        case ".ob":
            if len(args) != 1:
                raise InputFormatError(".ob expects exactly one label", lineno)
        case ".type":
            if len(args) != 1 or args[0] not in _PLA_TYPES:
                raise InputFormatError(f"unsupported PLA type {' '.join(args)!r}", lineno)
        case _:
            raise InputFormatError(f"unsupported directive {keyword!r}", lineno)
    return False


def _pla_cube_line(state: _PlaState, words: list[str], lineno: int) -> None:
    if state.inputs is None or state.outputs is None:
        raise InputFormatError("cube line before .i/.o headers", lineno)
    width = state.inputs
    if len(words) == 1 and len(words[0]) == width + 1:
        inputs, output = words[0][:width], words[0][width:]
    elif len(words) == 2:  # noqa: PLR2004
        inputs, output = words
    else:
        raise InputFormatError("expected '<inputs> <output>'", lineno)
    if len(inputs) != width:
        raise InputFormatError(f"input part has width {len(inputs)}, expected {width}", lineno)
    if len(output) != 1:
        raise InputFormatError(f"output part has width {len(output)}, expected 1", lineno)
    try:
        cells = Cube.parse(inputs).cell_mask
    except CubeError as exc:
        raise InputFormatError(str(exc), lineno) from None
    match output:
        case "1":
            state.on_mask |= cells
            for cell in iter_cells(cells):
                state.on_lines.setdefault(cell, lineno)
        case "-" | "~":
            clash = cells & state.on_mask
            if clash:
                cell = iter_cells(clash)[0]
                raise InputFormatError(
                    f"minterm {cell} is DC here but ON on line {state.on_lines[cell]}", lineno
                )
            state.dc_mask |= cells
        case "0":
            pass
        case _:
            raise InputFormatError(f"invalid output character {output!r}", lineno)
    if state.on_mask & state.dc_mask:
        cell = iter_cells(state.on_mask & state.dc_mask)[0]
        raise InputFormatError(f"minterm {cell} is ON here but DC earlier", lineno)


def parse_pla(text: str) -> BoolFunc:
    """Parse a single-output Berkeley PLA.

    Lines with output ``1`` contribute their cube's cells to the ON-set,
    ``-`` lines to the DC-set, ``0`` lines nothing. ``#`` starts a comment
    and ``.e`` ends the body.

    Args:
        text: PLA source.

    Returns:
        The function; names come from ``.ilb`` when present.

    Raises:
        InputFormatError: On missing headers, ``.o`` other than 1, bad
            characters, wrong widths or a cell claimed both ON and DC.
    """
    state = _PlaState()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        if words[0].startswith("."):
            if _pla_directive(state, words, lineno):
                break
        else:
            _pla_cube_line(state, words, lineno)
    if state.inputs is None:
        raise InputFormatError("missing .i header")
    if state.outputs is None:
        raise InputFormatError("missing .o header")
    if state.labels and len(state.labels) != state.inputs:
        raise InputFormatError(f".ilb lists {len(state.labels)} names for {state.inputs} inputs")
    return BoolFunc.from_masks(state.inputs, state.on_mask, state.dc_mask, state.labels)


def format_pla(f: BoolFunc) -> str:
    """Write f as a PLA with one line per ON or DC minterm.

    Args:
        f: The function.

    Returns:
        PLA text that parse_pla() reads back to identical sets.
    """
    lines = [f".i {f.var_count}", ".o 1"]
    if f.var_names != default_var_names(f.var_count):
        lines.append(".ilb " + " ".join(f.var_names))
    cells = [(m, "1") for m in f.on_set] + [(m, "-") for m in f.dc_set]
    lines.append(f".p {len(cells)}")
    lines.extend(
        f"{Cube.minterm(m, f.var_count)} {out}" for m, out in sorted(cells)
    )
    lines.append(".e")
    return "\n".join(lines) + "\n"


# --- minterm list ----------------------------------------------------------


def _parse_index_list(text: str, key: str, size: int) -> list[int]:
    indices: list[int] = []
    for item in (part.strip() for part in text.split(",")):
        if not item:
            continue
        low, sep, high = item.partition("-")
        try:
            if not sep:
                indices.append(int(item))
                continue
            first, last = int(low), int(high)
        except ValueError:
            raise InputFormatError(f"bad {key} entry {item!r}") from None
        # bounds first: a range is expanded cell by cell
        if not 0 <= first <= last < size:
            raise InputFormatError(f"{key} range {item!r} is not within 0..{size - 1}")
        indices.extend(range(first, last + 1))
    return indices


def parse_minterm_list(text: str) -> BoolFunc:
    """Parse ``vars=4; on=5,9,13; dc=; names=a,b,c,d;``.

    Keys may come in any order; ``dc`` and ``names`` are optional and list
    entries may be ranges such as ``0-3``. ``#`` starts a comment.

    Args:
        text: Minterm-list source.

    Returns:
        The function.

    Raises:
        InputFormatError: On unknown or missing keys and bad entries.
    """
    fields: dict[str, str] = {}
    body = ";".join(line.split("#", 1)[0] for line in text.splitlines())
    for part in body.split(";"):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        key = key.strip().lower()
        if not sep or key not in {"vars", "on", "dc", "names"}:
            raise InputFormatError(f"unexpected minterm-list field {part.strip()!r}")
        if key in fields:
            raise InputFormatError(f"duplicate minterm-list field {key!r}")
        fields[key] = value.strip()
    if "vars" not in fields:
        raise InputFormatError("minterm list needs a 'vars=' field")
    try:
        var_count = int(fields["vars"])
    except ValueError:
        raise InputFormatError(f"bad vars value {fields['vars']!r}") from None
    if not 1 <= var_count <= MAX_VARS:
        raise InputFormatError(f"var_count must be in 1..{MAX_VARS}, got {var_count}")
    names = tuple(n.strip() for n in fields.get("names", "").split(",") if n.strip())
    return parse_minterms(
        var_count,
        _parse_index_list(fields.get("on", ""), "on", 1 << var_count),
        _parse_index_list(fields.get("dc", ""), "dc", 1 << var_count),
        names,
    )


def format_minterm_list(f: BoolFunc) -> str:
    """Write f in the canonical minterm-list form.

    Args:
        f: The function.

    Returns:
        Text such as ``vars=4; on=5,9,13; dc=;``.
    """
    text = (
        f"vars={f.var_count}; "
        f"on={','.join(map(str, sorted(f.on_set)))}; "
        f"dc={','.join(map(str, sorted(f.dc_set)))};"
    )
    if f.var_names != default_var_names(f.var_count):
        text += f" names={','.join(f.var_names)};"
    return text


def parse_function_text(text: str) -> BoolFunc:
    """Parse either input format, detected from the content.

    Args:
        text: PLA or minterm-list source.

    Returns:
        The function.

    Raises:
        InputFormatError: If neither format matches.
    """
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("."):
            return parse_pla(text)
        if "vars" in line.replace(" ", "") and "=" in line:
            return parse_minterm_list(text)
        break
    if "vars=" in text.replace(" ", ""):
        return parse_minterm_list(text)
    raise InputFormatError("input is neither a PLA nor a minterm list")


def load_function(path: Path) -> BoolFunc:
    """Read a function from a PLA or minterm-list file.

    Args:
        path: File to read.

    Returns:
        The function.

    Raises:
        InputFormatError: If the file is not UTF-8 text or matches neither format.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as error:
        raise InputFormatError(f"{path} is not UTF-8 text: {error.reason}") from error
    return parse_function_text(text)
