"""kmapfactor - Karnaugh-map minimisation with non-power-of-two groups.

Minimises single-output boolean functions either conventionally (prime
implicants, sum of products) or with extended groups (a subcube minus
excluded subcubes), counting cost in 2-input gates.
"""

from __future__ import annotations

from .boolfn import BoolFunc, load_function, parse_minterms, parse_pla
from .expr import gate_cost, parse_expr, print_expr
from .models import Method, Mode, SolverConfig
from .solver import Cover, minimize
from .version import __version__

__all__ = [
    "BoolFunc",
    "Cover",
    "Method",
    "Mode",
    "SolverConfig",
    "__version__",
    "gate_cost",
    "load_function",
    "minimize",
    "parse_expr",
    "parse_minterms",
    "parse_pla",
    "print_expr",
]
