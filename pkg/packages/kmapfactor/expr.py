"""Boolean expression trees, the 2-input gate cost model, parsing and printing.

Cost model: every k-ary AND/OR node is k-1 two-input gates; inverters,
wires and constants are free (complemented inputs are assumed available).
Common subterms are never shared, so cost is purely structural.

Text grammar (whitespace ignored)::

    expr    := term ('+' term)*
    term    := factor ('*'? factor)*
    factor  := ('!' | '~')* primary "'"*
    primary := NAME | '0' | '1' | '(' expr ')'

Variable names are matched longest-first, so ``ac'd`` reads as a, c', d
when the names are a, b, c, d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from kmapfactor.boolfn import BoolFunc, default_var_names
from kmapfactor.cube import MAX_VARS, Cube, Trit, iter_cells
from kmapfactor.exceptions import ExprSyntaxError, InputFormatError, UnknownVariableError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


@dataclass(frozen=True)
class Expr:
    """Base class of expression nodes."""


@dataclass(frozen=True)
class Const(Expr):
    """Constant 0 or 1."""

    value: bool


@dataclass(frozen=True)
class Var(Expr):
    """Positive literal of a variable."""

    index: int


@dataclass(frozen=True)
class Not(Expr):
    """Complement."""

    child: Expr


@dataclass(frozen=True)
class And(Expr):
    """k-ary conjunction, k >= 2."""

    children: tuple[Expr, ...]


@dataclass(frozen=True)
class Or(Expr):
    """k-ary disjunction, k >= 2."""

    children: tuple[Expr, ...]


TRUE = Const(value=True)
FALSE = Const(value=False)


def lit(index: int, positive: bool = True) -> Expr:
    """Literal of a variable.

    Args:
        index: Variable index.
        positive: False for the complemented literal.

    Returns:
        Var or Not(Var).
    """
    return Var(index) if positive else Not(Var(index))


def and_(*factors: Expr) -> Expr:
    """Conjunction that flattens nested ANDs and collapses trivial arity.

    Args:
        *factors: Operands.

    Returns:
        TRUE for no operands, the operand itself for one, else an And.
    """
    flat: list[Expr] = []
    for factor in factors:
        if isinstance(factor, And):
            flat.extend(factor.children)
        else:
            flat.append(factor)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def or_(*terms: Expr) -> Expr:
    """Disjunction that flattens nested ORs and collapses trivial arity.

    Args:
        *terms: Operands.

    Returns:
        FALSE for no operands, the operand itself for one, else an Or.
    """
    flat: list[Expr] = []
    for term in terms:
        if isinstance(term, Or):
            flat.extend(term.children)
        else:
            flat.append(term)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def cube_expression(cube: Cube) -> Expr:
    """Product term of a cube: one literal per fixed trit.

    Args:
        cube: The cube.

    Returns:
        AND of literals (TRUE for the full cube).
    """
    return and_(*(lit(i, positive) for i, positive in cube.fixed_literals()))


# --- cost and structure ----------------------------------------------------


def gate_cost(e: Expr) -> int:
    """Number of 2-input AND/OR gates.

    Args:
        e: Expression.

    Returns:
        Sum over AND/OR nodes of (arity - 1).
    """
    match e:
        case And(children) | Or(children):
            return len(children) - 1 + sum(gate_cost(child) for child in children)
        case Not(child):
            return gate_cost(child)
        case _:
            return 0


def depth(e: Expr) -> int:
    """Logic levels under balanced decomposition of k-ary nodes.

    Inverters add no level.

    Args:
        e: Expression.

    Returns:
        0 for literals and constants; ceil(log2 k) per k-ary node on the
        deepest path otherwise.
    """
    match e:
        case And(children) | Or(children):
            return (len(children) - 1).bit_length() + max(depth(c) for c in children)
        case Not(child):
            return depth(child)
        case _:
            return 0


def max_var_index(e: Expr) -> int:
    """Highest variable index used, -1 when there is none.

    Args:
        e: Expression.

    Returns:
        The index.
    """
    match e:
        case Var(index):
            return index
        case Not(child):
            return max_var_index(child)
        case And(children) | Or(children):
            return max(max_var_index(c) for c in children)
        case _:
            return -1


# --- evaluation ------------------------------------------------------------


def eval_expr(e: Expr, assignment: Sequence[int]) -> int:
    """Evaluate under one assignment.

    Args:
        e: Expression.
        assignment: Bit per variable, variable 0 first.

    Returns:
        0 or 1.

    Raises:
        InputFormatError: If a variable index has no bit in the assignment.
    """
    match e:
        case Const(value):
            return int(value)
        case Var(index):
            if index >= len(assignment):
                raise InputFormatError(f"variable index {index} is unbound")
            return 1 if assignment[index] else 0
        case Not(child):
            return 1 - eval_expr(child, assignment)
        case And(children):
            return int(all(eval_expr(c, assignment) for c in children))
        case Or(children):
            return int(any(eval_expr(c, assignment) for c in children))
        case _:
            raise TypeError(f"not an expression node: {e!r}")


def _var_mask(index: int, var_count: int) -> int:
    trits = [Trit.FREE] * var_count
    trits[index] = Trit.ONE
    return Cube(tuple(trits)).cell_mask


def truth_mask(e: Expr, var_count: int) -> int:
    """Tabulate e as a bitmask over all minterms.

    Args:
        e: Expression.
        var_count: Number of variables.

    Returns:
        Bitmask with bit m set where e is 1.

    Raises:
        InputFormatError: If var_count is out of range or too small for e.
    """
    if not 1 <= var_count <= MAX_VARS:
        raise InputFormatError(f"var_count must be in 1..{MAX_VARS}, got {var_count}")
    if max_var_index(e) >= var_count:
        raise InputFormatError(
            f"expression uses variable {max_var_index(e)} but var_count is {var_count}"
        )
    full = (1 << (1 << var_count)) - 1
    return _truth(e, var_count, full)


def _truth(e: Expr, var_count: int, full: int) -> int:
    match e:
        case Const(value):
            return full if value else 0
        case Var(index):
            return _var_mask(index, var_count)
        case Not(child):
            return full & ~_truth(child, var_count, full)
        case And(children):
            acc = full
            for child in children:
                acc &= _truth(child, var_count, full)
            return acc
        case Or(children):
            acc = 0
            for child in children:
                acc |= _truth(child, var_count, full)
            return acc
        case _:
            raise TypeError(f"not an expression node: {e!r}")


def expr_to_func(e: Expr, var_count: int, var_names: Sequence[str] = ()) -> BoolFunc:
    """Tabulate e into a function with an empty DC-set.

    Args:
        e: Expression.
        var_count: Number of variables (covers every variable of e).
        var_names: Optional names for the function.

    Returns:
        The function whose ON-set is where e evaluates to 1.
    """
    return BoolFunc.from_masks(var_count, truth_mask(e, var_count), 0, var_names)


def equivalent(e1: Expr, e2: Expr, var_count: int) -> bool:
    """Whether two expressions agree on every minterm.

    Args:
        e1: First expression.
        e2: Second expression.
        var_count: Number of variables.

    Returns:
        True when the tabulations match.
    """
    return truth_mask(e1, var_count) == truth_mask(e2, var_count)


def first_difference(e1: Expr, e2: Expr, var_count: int, ignore_mask: int = 0) -> int | None:
    """Lowest minterm where two expressions disagree.

    Args:
        e1: First expression.
        e2: Second expression.
        var_count: Number of variables.
        ignore_mask: Minterms to leave out of the comparison (don't-cares).

    Returns:
        The minterm, or None when equivalent outside ignore_mask.
    """
    diff = (truth_mask(e1, var_count) ^ truth_mask(e2, var_count)) & ~ignore_mask
    if not diff:
        return None
    return iter_cells(diff & -diff)[0]


# --- normalisation and canonical order ------------------------------------


def normalize(e: Expr) -> Expr:
    """Push complements down to variables and flatten same-kind nodes.

    Also folds constants, so the result has NOT only over Var and contains
    no constant below an AND/OR.

    Args:
        e: Expression.

    Returns:
        Equivalent normalised expression.
    """
    return _push(e, negate=False)


def _push(e: Expr, negate: bool) -> Expr:
    match e:
        case Const(value):
            return Const(value=value != negate)
        case Var():
            return Not(e) if negate else e
        case Not(child):
            return _push(child, not negate)
        case And(children):
            parts = [_push(c, negate) for c in children]
            return _fold_or(parts) if negate else _fold_and(parts)
        case Or(children):
            parts = [_push(c, negate) for c in children]
            return _fold_and(parts) if negate else _fold_or(parts)
        case _:
            raise TypeError(f"not an expression node: {e!r}")


def _fold_and(parts: list[Expr]) -> Expr:
    if FALSE in parts:
        return FALSE
    return and_(*(p for p in parts if p != TRUE))


def _fold_or(parts: list[Expr]) -> Expr:
    if TRUE in parts:
        return TRUE
    return or_(*(p for p in parts if p != FALSE))


_Key = tuple[tuple[int, int], ...]


def _literal(e: Expr) -> tuple[int, int] | None:
    match e:
        case Var(index):
            return (index, 0)
        case Not(Var(index)):
            return (index, 1)
        case _:
            return None


def _key(e: Expr) -> _Key:
    match e:
        case Const(value):
            return ((-1, int(value)),)
        case And(children) | Or(children):
            return tuple(k for child in children for k in _key(child))
        case Not(child):
            return _key(child)
        case _:
            literal = _literal(e)
            return (literal,) if literal is not None else ()


def canonical(e: Expr) -> Expr:
    """Reorder children into print order.

    AND: literals first in variable order (positive before complemented),
    then compound factors. OR: children in variable order of their literals.

    Args:
        e: Expression.

    Returns:
        The same expression with children reordered.
    """
    match e:
        case And(children):
            ordered = [canonical(c) for c in children]
            literals = sorted((c for c in ordered if _literal(c) is not None), key=_key)
            compound = sorted((c for c in ordered if _literal(c) is None), key=_key)
            return And((*literals, *compound))
        case Or(children):
            return Or(tuple(sorted((canonical(c) for c in children), key=_key)))
        case Not(child):
            return Not(canonical(child))
        case _:
            return e


# --- printing --------------------------------------------------------------


def print_expr(e: Expr, var_names: Sequence[str]) -> str:
    """Render in the text grammar with minimal parentheses.

    Top-level OR terms are joined with ``" + "``; nested ORs have no spaces.
    AND is juxtaposition when every name is one character, ``*`` otherwise.

    Args:
        e: Expression.
        var_names: Name per variable index.

    Returns:
        Expression text.
    """
    joiner = "" if all(len(name) == 1 for name in var_names) else "*"
    ordered = canonical(e)
    if isinstance(ordered, Or):
        return " + ".join(_render(c, var_names, joiner) for c in ordered.children)
    return _render(ordered, var_names, joiner)


def _render(e: Expr, names: Sequence[str], joiner: str) -> str:
    match e:
        case Const(value):
            return "1" if value else "0"
        case Var(index):
            return names[index]
        case Not(Var(index)):
            return names[index] + "'"
        case Not(child):
            return f"({_render(child, names, joiner)})'"
        case And(children):
            return joiner.join(
                f"({_render(c, names, joiner)})" if isinstance(c, Or) else _render(c, names, joiner)
                for c in children
            )
        case Or(children):
            return "+".join(_render(c, names, joiner) for c in children)
        case _:
            raise TypeError(f"not an expression node: {e!r}")


# --- parsing ---------------------------------------------------------------

_SINGLE_TOKENS = frozenset("+*()'!~01")


@dataclass(frozen=True)
class _Token:
    kind: str  # "name", or the punctuation/constant character itself, or "end"
    text: str
    position: int
    index: int = -1


def _tokenize(text: str, var_names: Sequence[str]) -> list[_Token]:
    by_length = sorted(enumerate(var_names), key=lambda item: -len(item[1]))
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        char = text[pos]
        if char.isspace():
            pos += 1
            continue
        match = next(
            ((index, name) for index, name in by_length if text.startswith(name, pos)), None
        )
        if match is not None:
            index, name = match
            tokens.append(_Token("name", name, pos, index))
            pos += len(name)
        elif char in _SINGLE_TOKENS:
            tokens.append(_Token(char, char, pos))
            pos += 1
        elif char.isalpha() or char == "_":
            end = pos
            while end < len(text) and (text[end].isalnum() or text[end] == "_"):
                end += 1
            raise UnknownVariableError(f"unknown variable {text[pos:end]!r}", pos)
        else:
            raise ExprSyntaxError(f"unexpected character {char!r}", pos)
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser over a token list."""

    _FACTOR_START = frozenset({"name", "(", "0", "1", "!", "~"})

    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.current = 0

    def peek(self) -> _Token:
        return self.tokens[self.current]

    def advance(self) -> _Token:
        token = self.tokens[self.current]
        if token.kind != "end":
            self.current += 1
        return token

    def match(self, kind: str) -> bool:
        if self.peek().kind == kind:
            self.advance()
            return True
        return False

    def expression(self) -> Expr:
        terms = [self.term()]
        while self.match("+"):
            terms.append(self.term())
        return or_(*terms)

    def term(self) -> Expr:
        factors = [self.factor()]
        while True:
            if self.match("*"):
                factors.append(self.factor())
            elif self.peek().kind in self._FACTOR_START:
                factors.append(self.factor())
            else:
                return and_(*factors)

    def factor(self) -> Expr:
        negations = 0
        while self.peek().kind in {"!", "~"}:
            self.advance()
            negations += 1
        node = self.primary()
        while self.match("'"):
            negations += 1
        return Not(node) if negations % 2 else node

    def primary(self) -> Expr:
        token = self.advance()
        match token.kind:
            case "name":
                return Var(token.index)
            case "0":
                return FALSE
            case "1":
                return TRUE
            case "(":
                inner = self.expression()
                closing = self.peek()
                if not self.match(")"):
                    raise ExprSyntaxError("expected ')'", closing.position)
                return inner
            case "end":
                raise ExprSyntaxError("unexpected end of expression", token.position)
            case _:
                raise ExprSyntaxError(f"unexpected {token.text!r}", token.position)


def parse_expr(text: str, var_names: Sequence[str]) -> Expr:
    """Parse expression text and normalise it.

    Args:
        text: Expression in the module grammar.
        var_names: Name per variable index.

    Returns:
        Normalised expression (NOT only over variables).

    Raises:
        ExprSyntaxError: On grammar violations, with the failing position.
        UnknownVariableError: On identifiers outside var_names.
    """
    parser = _Parser(_tokenize(text, var_names))
    result = parser.expression()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError(f"unexpected {trailing.text!r}", trailing.position)
    return normalize(result)


def infer_var_count(texts: Iterable[str]) -> int:
    """Smallest variable count whose default names cover every expression.

    Args:
        texts: Expression texts.

    Returns:
        The variable count.

    Raises:
        ExprSyntaxError: On grammar errors, or UnknownVariableError when no
            default naming fits.
    """
    sources = list(texts)
    last_error: UnknownVariableError | None = None
    for var_count in range(1, MAX_VARS + 1):
        names = default_var_names(var_count)
        try:
            for source in sources:
                parse_expr(source, names)
        except UnknownVariableError as exc:
            last_error = exc
            continue
        return var_count
    assert last_error is not None  # noqa: S101
    raise last_error
