"""ASCII Karnaugh maps for 2 to 4 variables.

The variable-to-axis assignment is fixed: with four variables the columns
are ab and the rows cd, with three the columns are ab and the row c, with
two the column a and the row b. Both axes follow Gray order.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_uppercase
from typing import TYPE_CHECKING

from kmapfactor.boolfn import Value
from kmapfactor.cube import bit_of
from kmapfactor.exceptions import RenderError
from kmapfactor.expr import print_expr
from kmapfactor.templates import KMAP_TEMPLATE, text_environment

if TYPE_CHECKING:
    from kmapfactor.boolfn import BoolFunc
    from kmapfactor.solver import Cover

MIN_RENDER_VARS = 2
MAX_RENDER_VARS = 4

_GRAY = {1: ("0", "1"), 2: ("00", "01", "11", "10")}
_VALUE_CHARS = {Value.ZERO: "0", Value.ONE: "1", Value.DC: "-"}


@dataclass(frozen=True)
class KMapLayout:
    """Axis assignment of a Karnaugh map.

    Attributes:
        var_count: Number of variables.
        col_vars: Variable indices spelled by the column Gray code.
        row_vars: Variable indices spelled by the row Gray code.
    """

    var_count: int
    col_vars: tuple[int, ...]
    row_vars: tuple[int, ...]

    @classmethod
    def for_vars(cls, var_count: int) -> KMapLayout:
        """Standard layout for a variable count.

        Args:
            var_count: Number of variables.

        Returns:
            The layout.

        Raises:
            RenderError: If var_count is outside 2..4.
        """
        if not MIN_RENDER_VARS <= var_count <= MAX_RENDER_VARS:
            raise RenderError(
                f"maps are rendered for {MIN_RENDER_VARS}..{MAX_RENDER_VARS} variables, got {var_count}"
            )
        split = 1 if var_count == MIN_RENDER_VARS else 2
        return cls(var_count, tuple(range(split)), tuple(range(split, var_count)))

    @property
    def col_codes(self) -> tuple[str, ...]:
        """Column labels in Gray order."""
        return _GRAY[len(self.col_vars)]

    @property
    def row_codes(self) -> tuple[str, ...]:
        """Row labels in Gray order."""
        return _GRAY[len(self.row_vars)]

    def minterm(self, row: int, col: int) -> int:
        """Minterm shown at a grid position.

        Args:
            row: Row position (0-based, Gray order).
            col: Column position (0-based, Gray order).

        Returns:
            Minterm index under the MSB-first encoding.
        """
        index = 0
        for var, bit in zip(self.col_vars, self.col_codes[col], strict=True):
            if bit == "1":
                index |= bit_of(var, self.var_count)
        for var, bit in zip(self.row_vars, self.row_codes[row], strict=True):
            if bit == "1":
                index |= bit_of(var, self.var_count)
        return index


def render_kmap(f: BoolFunc, cover: Cover | None = None) -> str:
    """Draw f as an ASCII Karnaugh map.

    Cells show 0, 1 or - (don't care). With a cover, groups are tagged A, B,
    ... in canonical order; each cell appends the tags of the groups covering
    it and a legend line per group gives its printed expression.

    Args:
        f: The function.
        cover: Optional cover of f to overlay.

    Returns:
        The map text, newline terminated.

    Raises:
        RenderError: If f has fewer than 2 or more than 4 variables, or the
            cover has more groups than there are tag letters.
    """
    layout = KMapLayout.for_vars(f.var_count)
    names = f.var_names
    groups = cover.groups if cover is not None else ()
    if len(groups) > len(ascii_uppercase):
        raise RenderError(f"cannot tag {len(groups)} groups")
    tags = ascii_uppercase[: len(groups)]

    grid: list[list[str]] = []
    for r in range(len(layout.row_codes)):
        row: list[str] = []
        for c in range(len(layout.col_codes)):
            minterm = layout.minterm(r, c)
            text = _VALUE_CHARS[f.value_at(minterm)]
            text += "".join(
                tag for tag, group in zip(tags, groups, strict=True) if group.cell_mask >> minterm & 1
            )
            row.append(text)
        grid.append(row)

    col_title = "".join(names[i] for i in layout.col_vars)
    row_title = "".join(names[i] for i in layout.row_vars)
    corner = f"{row_title}\\{col_title}"
    label_width = max(len(corner), len(layout.row_codes[0]))
    cell_width = max(
        max(len(code) for code in layout.col_codes),
        max(len(text) for row in grid for text in row),
    )

    header = corner.ljust(label_width) + "".join(
        "  " + code.ljust(cell_width) for code in layout.col_codes
    )
    rows = [
        code.ljust(label_width) + "".join("  " + text.ljust(cell_width) for text in row)
        for code, row in zip(layout.row_codes, grid, strict=True)
    ]
    legend = [
        {
            "tag": tag,
            "expression": print_expr(group.expression, names),
            "cells": group.cell_count,
            "cost": group.cost,
        }
        for tag, group in zip(tags, groups, strict=True)
    ]
    template = text_environment.from_string(KMAP_TEMPLATE)
    return template.render(
        header=header.rstrip(), rows=[line.rstrip() for line in rows], legend=legend
    )


__all__ = ["KMapLayout", "render_kmap"]
