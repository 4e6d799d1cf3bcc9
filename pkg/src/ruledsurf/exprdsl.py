"""Scalar expressions of one variable ``u`` with exact derivatives.

Analytic curve/surface definitions are given as strings in this small
language; structural differentiation then supplies derivatives up to order 3
without finite-difference noise.

Grammar (whitespace insignificant)::

    expr   := term (("+" | "-") term)*
    term   := power (("*" | "/") power)*
    power  := unary ("^" ["-"] INT)?
    unary  := "-" unary | atom
    atom   := NUMBER | "u" | FUNC "(" expr ")" | "(" expr ")"
    FUNC   := "sin" | "cos" | "sinh" | "cosh" | "exp" | "sqrt"

Note the precedence: unary minus binds tighter than "^", so ``-u^2`` is
``(-u)^2``.  Exponents are integer literals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError

__all__ = [
    "Expr", "Lit", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "parse", "evaluate", "differentiate", "to_string",
]


class Expr:
    """Base class for expression nodes (immutable)."""

    def __call__(self, u):
        return evaluate(self, u)


@dataclass(frozen=True)
class Lit(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr


_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "exp": np.exp,
    "sqrt": np.sqrt,
}


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, offset) triples; kinds: num, ident, op, end."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", offset=i, expected=set())
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: set[str]):
        kind, value, offset = self.peek()
        shown = value if kind != "end" else "end of input"
        raise ParseError(f"unexpected {shown!r}", offset=offset, expected=expected)

    def expect_op(self, op: str):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            self.fail({op})
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail({"end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.advance()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.power()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.advance()[1]
            rhs = self.power()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def power(self) -> Expr:
        e = self.unary()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.advance()
                sign = -1
            kind, value, offset = self.peek()
            if kind != "num" or not value.isdigit():
                self.fail({"integer exponent"})
            self.advance()
            e = Pow(e, sign * int(value))
        return e

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        kind, value, offset = self.peek()
        if kind == "num":
            self.advance()
            return Lit(float(value))
        if kind == "ident":
            self.advance()
            if value == "u":
                return Var()
            if value in _FUNCS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(value, arg)
            raise ParseError(
                f"unknown identifier {value!r}",
                offset=offset,
                expected={"u"} | set(_FUNCS),
            )
        if kind == "op" and value == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        self.fail({"number", "identifier", "("})


def parse(text: str) -> Expr:
    """Parse an expression string; raises ParseError with a byte offset."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(e: Expr, u):
    """Evaluate at a scalar or ndarray argument with standard real semantics.

    Raises DomainError on division by zero or sqrt of a negative value.
    """
    if isinstance(e, Lit):
        return np.broadcast_to(np.float64(e.value), np.shape(u)).copy() if np.ndim(u) else float(e.value)
    if isinstance(e, Var):
        return np.asarray(u, dtype=float) if np.ndim(u) else float(u)
    if isinstance(e, Neg):
        return -evaluate(e.arg, u)
    if isinstance(e, Add):
        return evaluate(e.left, u) + evaluate(e.right, u)
    if isinstance(e, Sub):
        return evaluate(e.left, u) - evaluate(e.right, u)
    if isinstance(e, Mul):
        return evaluate(e.left, u) * evaluate(e.right, u)
    if isinstance(e, Div):
        num = evaluate(e.left, u)
        den = evaluate(e.right, u)
        if np.any(np.asarray(den) == 0.0):
            raise DomainError("division by zero")
        return num / den
    if isinstance(e, Pow):
        base = evaluate(e.base, u)
        if e.exponent < 0 and np.any(np.asarray(base) == 0.0):
            raise DomainError("zero raised to a negative power")
        return np.power(base, e.exponent) if np.ndim(base) else base ** e.exponent
    if isinstance(e, Call):
        arg = evaluate(e.arg, u)
        if e.fn == "sqrt" and np.any(np.asarray(arg) < 0.0):
            raise DomainError("sqrt of negative value")
        out = _FUNCS[e.fn](arg)
        return out if np.ndim(out) else float(out)
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# Differentiation with light constant folding
# ---------------------------------------------------------------------------

def _is_lit(e: Expr, value: float | None = None) -> bool:
    return isinstance(e, Lit) and (value is None or e.value == value)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_lit(a, 0.0):
        return b
    if _is_lit(b, 0.0):
        return a
    if isinstance(a, Lit) and isinstance(b, Lit):
        return Lit(a.value + b.value)
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_lit(b, 0.0):
        return a
    if isinstance(a, Lit) and isinstance(b, Lit):
        return Lit(a.value - b.value)
    if _is_lit(a, 0.0):
        return _neg(b)
    return Sub(a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Lit):
        return Lit(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_lit(a, 0.0) or _is_lit(b, 0.0):
        return Lit(0.0)
    if _is_lit(a, 1.0):
        return b
    if _is_lit(b, 1.0):
        return a
    if isinstance(a, Lit) and isinstance(b, Lit):
        return Lit(a.value * b.value)
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_lit(a, 0.0):
        return Lit(0.0)
    if _is_lit(b, 1.0):
        return a
    return Div(a, b)


def _pow(base: Expr, n: int) -> Expr:
    if n == 0:
        return Lit(1.0)
    if n == 1:
        return base
    return Pow(base, n)


_CHAIN = {
    "sin": lambda g: Call("cos", g),
    "cos": lambda g: _neg(Call("sin", g)),
    "sinh": lambda g: Call("cosh", g),
    "cosh": lambda g: Call("sinh", g),
    "exp": lambda g: Call("exp", g),
}


def differentiate(e: Expr) -> Expr:
    """Structural derivative d/du; apply repeatedly for higher orders."""
    if isinstance(e, Lit):
        return Lit(0.0)
    if isinstance(e, Var):
        return Lit(1.0)
    if isinstance(e, Neg):
        return _neg(differentiate(e.arg))
    if isinstance(e, Add):
        return _add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return _sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        return _add(
            _mul(differentiate(e.left), e.right),
            _mul(e.left, differentiate(e.right)),
        )
    if isinstance(e, Div):
        num = _sub(
            _mul(differentiate(e.left), e.right),
            _mul(e.left, differentiate(e.right)),
        )
        return _div(num, _pow(e.right, 2))
    if isinstance(e, Pow):
        inner = _mul(Lit(float(e.exponent)), _pow(e.base, e.exponent - 1))
        return _mul(inner, differentiate(e.base))
    if isinstance(e, Call):
        g = e.arg
        dg = differentiate(g)
        if e.fn == "sqrt":
            return _div(dg, _mul(Lit(2.0), Call("sqrt", g)))
        return _mul(_CHAIN[e.fn](g), dg)
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_POW, _LEVEL_UNARY, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _level(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _LEVEL_ADD
    if isinstance(e, (Mul, Div)):
        return _LEVEL_MUL
    if isinstance(e, Pow):
        return _LEVEL_POW
    if isinstance(e, Neg):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def _wrap(e: Expr, minimum: int) -> str:
    s = to_string(e)
    return f"({s})" if _level(e) < minimum else s


def to_string(e: Expr) -> str:
    """Render so that parse(to_string(e)) evaluates identically to e."""
    if isinstance(e, Lit):
        return f"{e.value:g}" if e.value == int(e.value) else repr(e.value)
    if isinstance(e, Var):
        return "u"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _LEVEL_UNARY)
    if isinstance(e, Add):
        return f"{_wrap(e.left, _LEVEL_ADD)} + {_wrap(e.right, _LEVEL_ADD + 1)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, _LEVEL_ADD)} - {_wrap(e.right, _LEVEL_ADD + 1)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, _LEVEL_MUL)}*{_wrap(e.right, _LEVEL_MUL + 1)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, _LEVEL_MUL)}/{_wrap(e.right, _LEVEL_MUL + 1)}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _LEVEL_UNARY)}^{e.exponent}"
    if isinstance(e, Call):
        return f"{e.fn}({to_string(e.arg)})"
    raise TypeError(f"not an Expr: {e!r}")
