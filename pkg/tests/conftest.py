"""Shared pytest fixtures for the kmapfactor test suite.

Provides the worked example functions used across modules, a netlist
simulator and a Karnaugh-map grid reader, so tests can check emitted text
against tabulated truth tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import pytest

from kmapfactor.boolfn import BoolFunc, parse_minterms
from kmapfactor.console import set_quiet
from kmapfactor.render import KMapLayout

if TYPE_CHECKING:
    from collections.abc import Callable, Generator


@dataclass(frozen=True)
class WorkedExample:
    """A 4-variable function with its known cover costs.

    Attributes:
        name: Short label used in test ids.
        on: ON minterms.
        conventional: Exact conventional cost.
        extended: Exact extended cost.
    """

    name: str
    on: tuple[int, ...]
    conventional: int
    extended: int

    @property
    def function(self) -> BoolFunc:
        """The example as a BoolFunc."""
        return parse_minterms(4, self.on)


WORKED_EXAMPLES = (
    WorkedExample("three-in-a-row", (5, 9, 13), 5, 3),
    WorkedExample("row-plus-corner", (5, 8, 9, 11, 13), 8, 6),
    WorkedExample("three-by-three", (5, 6, 7, 9, 10, 11, 13, 14, 15), 7, 3),
    WorkedExample("six-block", (5, 7, 8, 9, 11, 12, 13, 15), 5, 4),
    WorkedExample("seven-of-column", (3, 5, 7, 9, 11, 13, 15), 5, 3),
)

L_SHAPES_ON = (0, 2, 5, 8, 13, 15)


@pytest.fixture(autouse=True)
def loud_consoles() -> Generator[None, None, None]:
    """Reset the shared consoles after each test.

    Tests: Console quiet flag isolation
    How: Restore quiet=False after the test body
    Why: --quiet mutates module-level consoles shared by every CLI invocation
    """
    yield
    set_quiet(False)


@pytest.fixture
def eq1_function() -> BoolFunc:
    """Three ones in the c'd row: ON {5, 9, 13}.

    Returns:
        The 4-variable function.
    """
    return parse_minterms(4, [5, 9, 13])


@pytest.fixture
def square_function() -> BoolFunc:
    """The 3x3 square of ones covered by (a+b)(c+d).

    Returns:
        The 4-variable function.
    """
    return parse_minterms(4, [5, 6, 7, 9, 10, 11, 13, 14, 15])


def simulate_netlist(text: str) -> int:
    """Evaluate a netlist over every input assignment.

    Args:
        text: Netlist in the line format.

    Returns:
        Truth-table bitmask of the ``output`` net (bit m set where f is 1).
    """
    inputs: list[str] = []
    gates: list[tuple[str, str, list[str]]] = []
    output = ""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        if words[0] == "input":
            inputs = words[1:]
        elif words[0] == "output":
            output = words[2]
        else:
            gates.append((words[0], words[2], words[3:]))

    width = len(inputs)
    mask = 0
    for minterm in range(1 << width):
        nets = {"0": 0, "1": 1}
        for i, name in enumerate(inputs):
            nets[name] = minterm >> (width - 1 - i) & 1
        for net, op, operands in gates:
            values = [nets[o] for o in operands]
            match op:
                case "AND":
                    nets[net] = values[0] & values[1]
                case "OR":
                    nets[net] = values[0] | values[1]
                case "NOT":
                    nets[net] = 1 - values[0]
        if nets[output]:
            mask |= 1 << minterm
    return mask


def read_kmap(text: str, var_count: int) -> dict[int, str]:
    """Parse a rendered map back into per-minterm cell text.

    Args:
        text: Output of render_kmap().
        var_count: Number of variables of the rendered function.

    Returns:
        Cell text (value character plus tags) keyed by minterm.
    """
    layout = KMapLayout.for_vars(var_count)
    lines = text.splitlines()
    cells: dict[int, str] = {}
    for row, line in enumerate(lines[1 : 1 + len(layout.row_codes)]):
        label, *tokens = line.split()
        assert label == layout.row_codes[row]
        for col, token in enumerate(tokens):
            cells[layout.minterm(row, col)] = token
    return cells


@pytest.fixture
def netlist_simulator() -> Callable[[str], int]:
    """Provide the netlist simulator.

    Tests: Netlist semantics
    How: Topological evaluation of gate lines in file order
    Why: Netlists must compute the same function as their expression

    Returns:
        simulate_netlist
    """
    return simulate_netlist


@pytest.fixture
def kmap_reader() -> Callable[[str, int], dict[int, str]]:
    """Provide the Karnaugh-map grid reader.

    Tests: Rendered map layout
    How: Map every grid token back to its minterm through KMapLayout
    Why: Lets tests compare rendered cells with the function's sets

    Returns:
        read_kmap
    """
    return read_kmap
