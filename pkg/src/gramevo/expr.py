"""Formula trees: parsing, protected evaluation, canonical formatting.

The surface syntax is the one the mapper emits plus the handful of
conveniences needed for human-written formulas: ``np.sin``/``np.tanh``/
``np.exp`` as aliases, ``x[:, 0]`` as an alias of ``x``, ``log`` as an
alias of ``ln``, and juxtaposition of two factors as multiplication
(``0.97 x`` means ``0.97*x``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import FormulaSyntaxError, UnknownToken

PROTECTION_EPS = 1e-9


class UnaryOp(enum.Enum):
    SIN = "sin"
    TANH = "tanh"
    EXP = "exp"
    SQRT = "sqrt"
    LN = "ln"
    PSQRT = "psqrt"
    PLOG = "plog"
    NEG = "neg"


class BinaryOp(enum.Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    PDIV = "pdiv"


@dataclass(frozen=True)
class Const:
    value: float

    def __post_init__(self):
        v = float(self.value)
        if not np.isfinite(v):
            raise ValueError("constants must be finite")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    child: "ExprNode"


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: "ExprNode"
    right: "ExprNode"


ExprNode = Union[Const, Var, Unary, Binary]

_UNARY_NAMES = {
    "sin": UnaryOp.SIN,
    "np.sin": UnaryOp.SIN,
    "tanh": UnaryOp.TANH,
    "np.tanh": UnaryOp.TANH,
    "exp": UnaryOp.EXP,
    "np.exp": UnaryOp.EXP,
    "sqrt": UnaryOp.SQRT,
    "ln": UnaryOp.LN,
    "log": UnaryOp.LN,
    "psqrt": UnaryOp.PSQRT,
    "plog": UnaryOp.PLOG,
}

_NUMBER = re.compile(r"\d+(?:\.\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*(?:\.[A-Za-z_][A-Za-z_0-9]*)*")
_X_SUBSCRIPT = re.compile(r"\[\s*:\s*,\s*0\s*\]")


# --- tokenizer --------------------------------------------------------------

class _Kind(enum.Enum):
    NUMBER = enum.auto()
    NAME = enum.auto()
    VAR = enum.auto()
    PLUS = enum.auto()
    MINUS = enum.auto()
    STAR = enum.auto()
    SLASH = enum.auto()
    LPAREN = enum.auto()
    RPAREN = enum.auto()
    COMMA = enum.auto()
    EOF = enum.auto()


@dataclass(frozen=True)
class _Token:
    kind: _Kind
    text: str
    pos: int
    value: float = 0.0


_SINGLE = {
    "+": _Kind.PLUS,
    "-": _Kind.MINUS,
    "*": _Kind.STAR,
    "/": _Kind.SLASH,
    "(": _Kind.LPAREN,
    ")": _Kind.RPAREN,
    ",": _Kind.COMMA,
}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append(_Token(_SINGLE[ch], ch, i))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(_Token(_Kind.NUMBER, m.group(), i, float(m.group())))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            name = m.group()
            start = i
            i = m.end()
            if name == "x":
                # optional verbatim subscript form x[:, 0]
                if i < n and text[i] == "[":
                    sub = _X_SUBSCRIPT.match(text, i)
                    if not sub:
                        raise FormulaSyntaxError(i, "malformed subscript after x")
                    i = sub.end()
                tokens.append(_Token(_Kind.VAR, text[start:i], start))
            else:
                tokens.append(_Token(_Kind.NAME, name, start))
            continue
        raise FormulaSyntaxError(i, f"unexpected character {ch!r}")
    tokens.append(_Token(_Kind.EOF, "", n))
    return tokens


# --- parser ------------------------------------------------------------------

# token kinds that may open a factor; seeing one right after a factor
# means juxtaposed multiplication
_FACTOR_START = {_Kind.NUMBER, _Kind.NAME, _Kind.VAR, _Kind.LPAREN}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: _Kind, what: str) -> _Token:
        tok = self.peek()
        if tok.kind is not kind:
            got = tok.text or "end of input"
            raise FormulaSyntaxError(tok.pos, f"expected {what}, got {got!r}")
        return self.advance()

    def expression(self) -> ExprNode:
        node = self.term()
        while self.peek().kind in (_Kind.PLUS, _Kind.MINUS):
            op = BinaryOp.ADD if self.advance().kind is _Kind.PLUS else BinaryOp.SUB
            node = Binary(op, node, self.term())
        return node

    def term(self) -> ExprNode:
        node = self.factor()
        while True:
            kind = self.peek().kind
            if kind is _Kind.STAR:
                self.advance()
                node = Binary(BinaryOp.MUL, node, self.factor())
            elif kind is _Kind.SLASH:
                self.advance()
                node = Binary(BinaryOp.DIV, node, self.factor())
            elif kind in _FACTOR_START:
                node = Binary(BinaryOp.MUL, node, self.factor())
            else:
                return node

    def factor(self) -> ExprNode:
        if self.peek().kind is _Kind.MINUS:
            self.advance()
            return Unary(UnaryOp.NEG, self.factor())
        return self.atom()

    def atom(self) -> ExprNode:
        tok = self.advance()
        if tok.kind is _Kind.NUMBER:
            return Const(tok.value)
        if tok.kind is _Kind.VAR:
            return Var()
        if tok.kind is _Kind.LPAREN:
            inner = self.expression()
            self.expect(_Kind.RPAREN, "')'")
            return inner
        if tok.kind is _Kind.NAME:
            if tok.text == "pdiv":
                self.expect(_Kind.LPAREN, "'(' after pdiv")
                left = self.expression()
                self.expect(_Kind.COMMA, "',' between pdiv arguments")
                right = self.expression()
                self.expect(_Kind.RPAREN, "')'")
                return Binary(BinaryOp.PDIV, left, right)
            op = _UNARY_NAMES.get(tok.text)
            if op is None:
                raise UnknownToken(tok.text, tok.pos)
            self.expect(_Kind.LPAREN, f"'(' after {tok.text}")
            inner = self.expression()
            self.expect(_Kind.RPAREN, "')'")
            return Unary(op, inner)
        got = tok.text or "end of input"
        raise FormulaSyntaxError(tok.pos, f"expected a value, got {got!r}")


def parse_formula(text: str) -> ExprNode:
    """Parse formula text into an expression tree."""
    if not text.strip():
        raise FormulaSyntaxError(0, "empty formula")
    parser = _Parser(_tokenize(text))
    node = parser.expression()
    trailing = parser.peek()
    if trailing.kind is not _Kind.EOF:
        raise FormulaSyntaxError(trailing.pos, f"unexpected {trailing.text!r}")
    return node


# --- evaluation --------------------------------------------------------------

def _eval(node: ExprNode, x: np.ndarray):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        a = _eval(node.child, x)
        op = node.op
        if op is UnaryOp.NEG:
            return -a
        if op is UnaryOp.SIN:
            return np.sin(a)
        if op is UnaryOp.TANH:
            return np.tanh(a)
        if op is UnaryOp.EXP:
            return np.exp(a)
        if op is UnaryOp.SQRT:
            return np.sqrt(a)
        if op is UnaryOp.LN:
            return np.log(a)
        if op is UnaryOp.PSQRT:
            return np.sqrt(np.abs(a))
        # PLOG: 0.0 where the argument is within eps of zero
        return np.where(
            np.abs(a) > PROTECTION_EPS, np.log(np.abs(a)), 0.0
        )
    a = _eval(node.left, x)
    b = _eval(node.right, x)
    op = node.op
    if op is BinaryOp.ADD:
        return a + b
    if op is BinaryOp.SUB:
        return a - b
    if op is BinaryOp.MUL:
        return a * b
    if op is BinaryOp.DIV:
        return np.divide(a, b)
    # PDIV: 1.0 where the denominator is within eps of zero
    return np.where(np.abs(b) > PROTECTION_EPS, np.divide(a, b), 1.0)


def evaluate_array(expr: ExprNode, xs: np.ndarray) -> np.ndarray:
    """Vectorized evaluation; non-finite outputs are legal, never an error."""
    arr = np.asarray(xs, dtype=np.float64)
    with np.errstate(all="ignore"):
        out = _eval(expr, arr)
    result = np.asarray(out, dtype=np.float64)
    if result.shape != arr.shape:
        result = np.broadcast_to(result, arr.shape).copy()
    return result


def evaluate(expr: ExprNode, x: float) -> float:
    """Evaluate at one point; radians, IEEE doubles, protected ops per module doc."""
    return float(evaluate_array(expr, np.array([x], dtype=np.float64))[0])


def evaluate_batch(expr: ExprNode, xs) -> list[float]:
    arr = evaluate_array(expr, np.asarray(list(xs), dtype=np.float64))
    return [float(v) for v in arr]


# --- formatting --------------------------------------------------------------

_BINARY_PREC = {BinaryOp.ADD: 1, BinaryOp.SUB: 1, BinaryOp.MUL: 2, BinaryOp.DIV: 2}
_NEG_PREC = 3
_ATOM_PREC = 9


def _prec(node: ExprNode) -> int:
    if isinstance(node, Binary) and node.op is not BinaryOp.PDIV:
        return _BINARY_PREC[node.op]
    if isinstance(node, Unary) and node.op is UnaryOp.NEG:
        return _NEG_PREC
    return _ATOM_PREC    # constants, x, and function calls bind tightest


def format_expr(expr: ExprNode) -> str:
    """Canonical text: explicit `*`, canonical names, minimal parentheses.

    Reparsing the result evaluates identically to the input tree.
    """
    if isinstance(expr, Const):
        # shortest exact decimal, never scientific notation (tokenizer has no e-form)
        return np.format_float_positional(expr.value, unique=True, trim="-")
    if isinstance(expr, Var):
        return "x"
    if isinstance(expr, Unary):
        if expr.op is UnaryOp.NEG:
            inner = format_expr(expr.child)
            if _prec(expr.child) < _NEG_PREC:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{expr.op.value}({format_expr(expr.child)})"
    if expr.op is BinaryOp.PDIV:
        return f"pdiv({format_expr(expr.left)},{format_expr(expr.right)})"
    p = _BINARY_PREC[expr.op]
    left = format_expr(expr.left)
    if _prec(expr.left) < p:
        left = f"({left})"
    right = format_expr(expr.right)
    # wrap equal precedence on the right to preserve left associativity
    if _prec(expr.right) <= p:
        right = f"({right})"
    return f"{left}{expr.op.value}{right}"
