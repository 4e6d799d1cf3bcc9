"""Single-variable expression DSL: parsing, evaluation, differentiation."""

import numpy as np
import pytest

from ruledsurf.errors import DomainError, ParseError
from ruledsurf.exprdsl import (
    Add,
    Call,
    Lit,
    Mul,
    Var,
    differentiate,
    evaluate,
    parse,
    to_string,
)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_function_call():
    assert parse("cosh(u)") == Call("cosh", Var())


def test_parse_sum_of_product():
    assert parse("u*u + 1") == Add(Mul(Var(), Var()), Lit(1.0))


def test_parse_unbalanced_paren_offset():
    with pytest.raises(ParseError) as exc:
        parse("cos(u")
    assert exc.value.offset == 5
    assert ")" in "".join(exc.value.expected)


def test_parse_error_reports_offset_and_expected():
    with pytest.raises(ParseError) as exc:
        parse("u +* 2")
    assert exc.value.offset == 3
    assert exc.value.expected


def test_parse_rejects_unknown_function_and_characters():
    with pytest.raises(ParseError):
        parse("tan(u)")
    with pytest.raises(ParseError):
        parse("u @ 2")
    with pytest.raises(ParseError):
        parse("")


def test_parse_rejects_fractional_exponent():
    with pytest.raises(ParseError):
        parse("u^0.5")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_eval_examples():
    assert evaluate(parse("sinh(u)"), 0.0) == 0.0
    assert evaluate(parse("cosh(u)"), 0.0) == 1.0


def test_eval_domain_errors():
    with pytest.raises(DomainError):
        evaluate(parse("1/u"), 0.0)
    with pytest.raises(DomainError):
        evaluate(parse("sqrt(u)"), -1.0)
    with pytest.raises(DomainError):
        evaluate(parse("u^-2"), 0.0)


def test_eval_accepts_arrays():
    u = np.linspace(0.0, 1.0, 11)
    out = parse("u^2 + sin(u)")(u)
    np.testing.assert_allclose(out, u ** 2 + np.sin(u), atol=1e-15)
    assert isinstance(parse("u + 1")(0.5), float)


def test_precedence():
    # unary minus binds tighter than ^, so -2^2 = (-2)^2
    assert evaluate(parse("-2^2"), 0.0) == 4.0
    assert evaluate(parse("2*u^3"), 2.0) == 16.0
    assert evaluate(parse("u^-2"), 2.0) == 0.25
    # left association
    assert evaluate(parse("8 - 3 - 2"), 0.0) == 3.0
    assert evaluate(parse("16 / 4 / 2"), 0.0) == 2.0


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------

def test_derivative_examples():
    d = differentiate(parse("sinh(u)"))
    assert d == Call("cosh", Var())
    d2 = differentiate(parse("u*u"))
    for u in np.linspace(-2.0, 2.0, 20):
        assert abs(evaluate(d2, u) - 2 * u) < 1e-12
    assert evaluate(differentiate(parse("cos(u)")), 0.0) == 0.0


_RANDOM_SOURCES = [
    "sin(u)*cosh(u)", "u^3 - 2*u", "exp(-u^2)", "sqrt(u + 2)",
    "1/(u + 3)", "cos(u)^2 + sin(u)^2", "sinh(u*u)", "(u + 1)*(u - 1)",
    "exp(sin(u))", "u/(1 + u^2)",
]


def test_derivative_against_finite_differences():
    rng = np.random.default_rng(41)
    h = 1e-5
    checked = 0
    while checked < 200:
        src = _RANDOM_SOURCES[checked % len(_RANDOM_SOURCES)]
        u = float(rng.uniform(-1.0, 1.0))
        expr = parse(src)
        d = differentiate(expr)
        fd = (evaluate(expr, u + h) - evaluate(expr, u - h)) / (2 * h)
        exact = evaluate(d, u)
        assert abs(exact - fd) <= 1e-6 * max(1.0, abs(exact)), (src, u)
        checked += 1


def test_third_derivatives_exist():
    expr = parse("sinh(u^2)")
    d2 = differentiate(differentiate(expr))
    d3 = differentiate(d2)
    u, h = 0.7, 1e-6
    fd3 = (evaluate(d2, u + h) - evaluate(d2, u - h)) / (2 * h)
    assert abs(evaluate(d3, u) - fd3) < 1e-6 * max(1.0, abs(fd3))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def test_print_parse_round_trip():
    for src in _RANDOM_SOURCES + ["-u^2", "u^-3", "-(u + 1)", "2 - -u"]:
        expr = parse(src)
        reparsed = parse(to_string(expr))
        for u in np.linspace(-0.9, 0.9, 20):
            try:
                lhs = evaluate(expr, u)
            except DomainError:
                continue
            assert abs(lhs - evaluate(reparsed, u)) <= 1e-12 * max(1.0, abs(lhs))


def test_to_string_examples():
    assert to_string(parse("cosh(u)")) == "cosh(u)"
    assert to_string(parse("u*u + 1")) == "u*u + 1"
