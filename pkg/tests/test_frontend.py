import math
from fractions import Fraction

import mpmath
import pytest

from faadibruno import DomainError, LexError, ParseError, derive, parse, to_source, tokenize
from faadibruno.frontend import Apply, BinOp, Const, Neg, Pow, Var
from oracles import bell_numbers

# (source, point); every point keeps elementary values rational so exact mode applies
CORPUS = [
    ("x^2", "3"),
    ("x^3 - 2*x + 1", "0.5"),
    ("(x + 1)^5 / (x^2 + 2)", "0.25"),
    ("1 / (1 - x)", "0.5"),
    ("log(x)", "1"),
    ("log(x^2 - 2*x + 2)", "1"),
    ("exp(x^2 - x)", "1"),
    ("exp(x)", "0"),
    ("sin(x^3 - 8)", "2"),
    ("cos(2*x - 1)", "0.5"),
    ("sqrt(x)", "2.25"),
    ("sqrt(x^2 + 9)", "4"),
    ("log(exp(x))", "0"),
    ("exp(sin(x))", "0"),
    ("sin(sin(x))", "0"),
    ("log(1 + x) * exp(x)", "0"),
    ("-x^2 + 3*x - 0.5", "1.5"),
    ("(x - 1) / (x + 1)", "3"),
    ("cos(x)^3 + sin(x)^2", "0"),
    ("exp(log(x))", "1"),
    ("sqrt(1 + x) - 1 / (2 + x)", "3"),
]


def test_tokenize():
    toks = tokenize("exp(exp(x))")
    assert [(t.kind, t.lexeme) for t in toks] == [
        ("identifier", "exp"), ("paren", "("), ("identifier", "exp"), ("paren", "("),
        ("identifier", "x"), ("paren", ")"), ("paren", ")"),
    ]
    toks = tokenize("x^3 + 2*x")
    assert len(toks) == 7
    assert [t.offset for t in toks] == [0, 1, 2, 4, 6, 7, 8]
    assert tokenize("  0.125")[0].lexeme == "0.125"


def test_tokenize_error_offset():
    with pytest.raises(LexError) as exc:
        tokenize("x $ 2")
    assert exc.value.offset == 2


def test_parse_shapes():
    assert parse("exp(exp(x))") == Apply("exp", Apply("exp", Var()))
    assert parse("log(exp(x))") == Apply("log", Apply("exp", Var()))
    assert parse("1 - x - 2") == BinOp("-", BinOp("-", Const(1), Var()), Const(2))
    assert parse("-x^2") == Neg(Pow(Var(), 2))
    assert parse("2*x^3") == BinOp("*", Const(2), Pow(Var(), 3))
    assert parse("0.5") == Const(Fraction(1, 2))
    assert parse(tokenize("x + 1")) == BinOp("+", Var(), Const(1))


@pytest.mark.parametrize(
    "source, offset, fragment",
    [
        ("sin(x", 5, "expected ')'"),
        ("tan(x)", 0, "unknown function"),
        ("x x", 2, "trailing"),
        ("x^2.5", 2, "integer exponent"),
        ("x^-1", 2, "integer exponent"),
        ("", 0, "expected a number"),
        ("(x + 1", 6, "expected ')'"),
        ("x +", 3, "expected a number"),
    ],
)
def test_parse_errors(source, offset, fragment):
    with pytest.raises(ParseError) as exc:
        parse(source)
    assert exc.value.offset == offset
    assert fragment in str(exc.value)


@pytest.mark.parametrize(
    "source",
    [s for s, _ in CORPUS]
    + ["-(x + 1)^2", "(x^2)^3", "x - (x - 1)", "2 / (x / 3)", "--x", "(-x)^2", "0.0625 * x"],
)
def test_print_round_trip(source):
    tree = parse(source)
    assert parse(to_source(tree)) == tree


def test_print_quotient_constant():
    assert to_source(Const(Fraction(1, 3))) == "(1/3)"
    assert to_source(Const(Fraction(3, 8))) == "0.375"


def test_derive_examples():
    assert derive("x^2", 2, 3, mode="exact").derivs == (9, 6, 2)
    jet = derive("exp(exp(x))", 5, 0.0)
    assert jet[5] == pytest.approx(math.e * 52, rel=1e-12)
    jet = derive("log(exp(x))", 8, 0.7)
    assert jet[1] == pytest.approx(1.0, abs=1e-9)
    assert all(abs(d) <= 1e-9 for d in jet.derivs[2:])


def test_exp_exp_needs_float_mode():
    with pytest.raises(DomainError):
        derive("exp(exp(x))", 3, 0, mode="exact")


@pytest.mark.parametrize("source, at", [("log(x - 1)", 1), ("1 / (x - 2)", 2), ("sqrt(x - 3)", 1)])
def test_derive_domain_errors(source, at):
    with pytest.raises(DomainError) as exc:
        derive(source, 2, at, mode="exact")
    with pytest.raises(DomainError):
        derive(source, 2, float(at))
    assert "(" in str(exc.value) or "division" in str(exc.value)


@pytest.mark.parametrize("source, at", CORPUS)
def test_exact_and_float_agree(source, at):
    exact = derive(source, 6, Fraction(at), mode="exact")
    approx = derive(source, 6, float(at))
    for e, a in zip(exact.derivs, approx.derivs):
        assert a == pytest.approx(float(e), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("source, at", CORPUS)
def test_oracle_toggle_is_exact(source, at):
    assert derive(source, 7, Fraction(at), mode="exact") == derive(
        source, 7, Fraction(at), mode="exact", oracle=True
    )


def _mp_function(source):
    code = source.replace("^", "**")
    env = {name: getattr(mpmath, name) for name in ("exp", "log", "sin", "cos", "sqrt")}
    return lambda x: eval(code, {"__builtins__": {}}, {**env, "x": x})


@pytest.mark.parametrize("source, at", CORPUS)
def test_float_derive_against_mpmath(source, at):
    fn = _mp_function(source)
    x0 = float(at) + 0.1  # move off the special points
    jet = derive(source, 4, x0)
    with mpmath.workdps(40):
        for m in range(5):
            ref = float(mpmath.diff(fn, mpmath.mpf(x0), m))
            assert jet[m] == pytest.approx(ref, rel=1e-9, abs=1e-9)


def test_exp_exp_bell_float():
    jet = derive("exp(exp(x))", 10, 0.0)
    for n, b in enumerate(bell_numbers(10)):
        assert jet[n] == pytest.approx(math.e * b, rel=1e-12)
