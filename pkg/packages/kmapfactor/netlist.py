"""Line-based 2-input gate netlist emission.

Format::

    # optional comment lines
    input a b c d
    n1 = NOT c
    n2 = OR a b
    n3 = AND n1 d
    n4 = AND n3 n2
    output f n4

A k-input AND or OR becomes k - 1 left-associated two-input lines, so the
number of AND/OR lines equals gate_cost() of the expression. Inverters get
NOT lines, one per complemented variable; they are not counted as gates.
Constant outputs use the nets ``0`` and ``1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from kmapfactor.expr import And, Const, Not, Or, Var
from kmapfactor.templates import NETLIST_TEMPLATE, text_environment

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import TextIO

    from kmapfactor.expr import Expr


@dataclass(frozen=True)
class Gate:
    """One netlist line.

    Attributes:
        net: Output net name.
        op: AND, OR or NOT.
        operands: Input nets (two for AND/OR, one for NOT).
    """

    net: str
    op: str
    operands: tuple[str, ...]


@dataclass
class _Builder:
    names: Sequence[str]
    prefix: str
    gates: list[Gate] = field(default_factory=list)
    inverted: dict[str, str] = field(default_factory=dict)

    def add(self, op: str, *operands: str) -> str:
        net = f"{self.prefix}{len(self.gates) + 1}"
        self.gates.append(Gate(net, op, operands))
        return net

    def emit(self, e: Expr) -> str:
        match e:
            case Const(value=value):
                return "1" if value else "0"
            case Var(index=index):
                return self.names[index]
            case Not(child=child):
                source = self.emit(child)
                if source not in self.inverted:
                    self.inverted[source] = self.add("NOT", source)
                return self.inverted[source]
            case And(children=children) | Or(children=children):
                op = "AND" if isinstance(e, And) else "OR"
                nets = [self.emit(child) for child in children]
                result = nets[0]
                for net in nets[1:]:
                    result = self.add(op, result, net)
                return result
            case _:
                raise TypeError(f"unknown expression node {e!r}")


def _net_prefix(names: Sequence[str]) -> str:
    prefix = "n"
    while any(re.fullmatch(rf"{prefix}\d+", name) for name in names):
        prefix = f"_{prefix}"
    return prefix


def netlist_gates(e: Expr, var_names: Sequence[str]) -> tuple[list[Gate], str]:
    """Decompose an expression into 2-input gates.

    Args:
        e: The expression.
        var_names: Name per variable index.

    Returns:
        The gate lines in emission order and the output net.
    """
    builder = _Builder(var_names, _net_prefix(var_names))
    output = builder.emit(e)
    return builder.gates, output


def emit_netlist(
    e: Expr,
    var_names: Sequence[str],
    sink: TextIO | None = None,
    comments: Sequence[str] = (),
) -> str:
    """Write the netlist of an expression.

    Args:
        e: The expression.
        var_names: Name per variable index; all appear on the input line.
        sink: Optional stream that also receives the text.
        comments: Lines emitted as ``#`` comments before the input line.

    Returns:
        The netlist text.
    """
    gates, output = netlist_gates(e, var_names)
    text = text_environment.from_string(NETLIST_TEMPLATE).render(
        comments=comments, inputs=var_names, gates=gates, output=output
    )
    if sink is not None:
        sink.write(text)
    return text


__all__ = ["Gate", "emit_netlist", "netlist_gates"]
