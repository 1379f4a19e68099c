import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adoframes import symbolic as sym
from adoframes.symbolic import NumericDomainExhausted, differentiate, expr_equal, parse

BOX = {"x": (-1.0, 1.0), "y": (-1.0, 1.0), "z": (-1.0, 1.0), "w": (-1.0, 1.0)}


def same(a, b, box=BOX):
    return expr_equal(a, b, box)[0]


def test_parse_round_trip():
    text = "(* 1/2 (- (^ z 2) (^ y 2)))"
    e = parse(text)
    assert same(parse(sym.to_prefix(e)), e)


def test_evaluate_numbers():
    e = parse("(+ (exp x) (sin y))")
    assert sym.evaluate(e, {"x": 0.0, "y": math.pi / 2}) == pytest.approx(2.0)


def test_derivative_of_z_cos_w():
    d = differentiate(parse("(* z (cos w))"), "w")
    assert same(d, parse("(- (* z (sin w)))"))


def test_derivative_of_sech():
    d = differentiate(parse("(sech y)"), "y")
    assert same(d, parse("(- (* (sech y) (tanh y)))"))


def test_derivative_of_exp_minus_z():
    d = differentiate(parse("(exp (- z))"), "z")
    assert same(d, parse("(- (exp (- z)))"))


def test_derivative_of_constant_vanishes():
    assert differentiate(parse("(* 3 (cos y))"), "x") == sym.ZERO


def test_expr_equal_pythagoras():
    assert same(parse("(+ (^ (sin x) 2) (^ (cos x) 2))"), parse("1"))


def test_expr_equal_exp_product():
    assert same(parse("(* (exp z) (exp (- z)))"), parse("1"))


def test_expr_equal_reports_witness():
    ok, witness = expr_equal(parse("y"), parse("(+ y 1/1000)"), BOX)
    assert not ok
    y = witness["point"]["y"]
    assert witness["lhs"] == pytest.approx(y)
    assert witness["rhs"] == pytest.approx(y + 1e-3)


def test_expr_equal_is_seeded():
    a = expr_equal(parse("y"), parse("(+ y 1/1000)"), BOX, seed=5)
    b = expr_equal(parse("y"), parse("(+ y 1/1000)"), BOX, seed=5)
    assert a == b


def test_expr_equal_skips_singular_points():
    # 1/x blows up near 0; the remaining points still compare equal
    e = parse("(/ 1 x)")
    assert same(e, parse("(^ x -1)"))


def test_expr_equal_exhaustion_raises():
    # every sample exceeds the magnitude cap, so no point is regular
    e = parse("(exp x)")
    with pytest.raises(NumericDomainExhausted):
        expr_equal(e, e, {"x": (40.0, 50.0)})


def test_substitute_parameter():
    e = sym.substitute(parse("(* h x)"), {"h": sym.const(-1)})
    assert same(e, parse("(- x)"))


_leaf = st.sampled_from(["x", "y", "z", "1", "2", "1/3"])


def _expr(depth):
    if depth == 0:
        return _leaf
    sub = _expr(depth - 1)
    return st.one_of(
        _leaf,
        st.builds(lambda a, b: f"(+ {a} {b})", sub, sub),
        st.builds(lambda a, b: f"(* {a} {b})", sub, sub),
        st.builds(lambda f, a: f"({f} {a})", st.sampled_from(["sin", "cos", "exp"]), sub),
    )


@settings(max_examples=40, deadline=None)
@given(_expr(3), _expr(3))
def test_derivative_is_linear(a, b):
    ea, eb = parse(a), parse(b)
    lhs = differentiate(sym.add(ea, sym.mul(sym.const(3), eb)), "x")
    rhs = sym.add(differentiate(ea, "x"), sym.mul(sym.const(3), differentiate(eb, "x")))
    assert same(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(_expr(3), _expr(3))
def test_product_rule(a, b):
    ea, eb = parse(a), parse(b)
    lhs = differentiate(sym.mul(ea, eb), "y")
    rhs = sym.add(sym.mul(differentiate(ea, "y"), eb), sym.mul(ea, differentiate(eb, "y")))
    assert same(lhs, rhs)


@settings(max_examples=30, deadline=None)
@given(_expr(3))
def test_derivative_matches_finite_difference(a):
    e = parse(a)
    d = differentiate(e, "z")
    pt = {"x": 0.3, "y": -0.2, "z": 0.1}
    h = 1e-6
    up = dict(pt, z=pt["z"] + h)
    dn = dict(pt, z=pt["z"] - h)
    fd = (sym.evaluate(e, up) - sym.evaluate(e, dn)) / (2 * h)
    assert np.real(sym.evaluate(d, pt)) == pytest.approx(np.real(fd), rel=1e-5, abs=1e-6)


@settings(max_examples=30, deadline=None)
@given(_expr(2), _expr(2))
def test_expr_equal_is_symmetric_and_reflexive(a, b):
    ea, eb = parse(a), parse(b)
    assert same(ea, ea)
    rewritten = parse(f"(+ (* 2 {b}) (- {b}))")
    assert same(eb, rewritten) and same(rewritten, eb)
    shifted = sym.add(ea, sym.const(1))
    assert not same(ea, shifted) and not same(shifted, ea)
