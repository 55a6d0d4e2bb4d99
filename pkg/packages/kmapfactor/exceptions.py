"""Exception hierarchy for kmapfactor.

Library code raises these; the CLI maps them onto exit codes.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from kmapfactor.solver import Cover


class KmapError(Exception):
    """Base class for all kmapfactor errors."""


class InputFormatError(KmapError, ValueError):
    """Malformed function input: minterm lists, PLA text, ranges, overlaps.

    Attributes:
        line: 1-based source line of the problem, when known.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        """Initialise with a message and an optional line number.

        Args:
            message: Human-readable description.
            line: 1-based line number in the source text.
        """
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ExprSyntaxError(InputFormatError):
    """Expression text does not match the grammar.

    Attributes:
        position: 0-based column where parsing failed.
    """

    def __init__(self, message: str, position: int) -> None:
        """Initialise with a message and the failing column.

        Args:
            message: Human-readable description.
            position: 0-based column in the expression text.
        """
        self.position = position
        InputFormatError.__init__(self, f"{message} at position {position}")


class UnknownVariableError(ExprSyntaxError):
    """Identifier in an expression is not a known variable name."""


class CubeError(KmapError, ValueError):
    """Malformed trit string or cubes of mismatched width."""


class GroupError(KmapError, ValueError):
    """A Group violates its structural invariants."""


class RenderError(KmapError, ValueError):
    """Function cannot be drawn as a Karnaugh map."""


class OracleLimitError(KmapError, ValueError):
    """Brute-force oracle asked to solve a function that is too wide."""


class SearchBudgetExceeded(KmapError):
    """Exact cover search exhausted its node budget.

    Attributes:
        best: Best cover found before the abort (never claimed optimal).
        nodes: Number of search nodes expanded.
    """

    def __init__(self, best: Cover, nodes: int) -> None:
        """Initialise with the incumbent cover and the node count.

        Args:
            best: Best cover found so far.
            nodes: Search nodes expanded before giving up.
        """
        self.best = best
        self.nodes = nodes
        super().__init__(
            f"exact search aborted after {nodes} nodes; best cover found costs {best.cost} gates"
        )
