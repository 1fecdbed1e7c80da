from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from blx.polycore import (
    MPoly,
    NEG_INF,
    NotDivisibleError,
    ONE,
    PolySyntaxError,
    UnknownVariableError,
    ZERO,
    degree_in_block,
    divexact,
    divides,
    format_poly,
    gcd_list,
    gcd_multi,
    homogeneous_part,
    homogenize,
    integer_content,
    is_homogeneous_in_block,
    normalize,
    parse_poly,
    substitute,
)

VARS = ("t1", "t2", "t3", "x1")


@st.composite
def small_polys(draw, max_terms=5, max_exp=3, variables=VARS):
    n = draw(st.integers(0, max_terms))
    f = ZERO
    for _ in range(n):
        c = draw(st.integers(-6, 6))
        exps = {v: draw(st.integers(0, max_exp)) for v in variables}
        f = f + MPoly.monomial(exps, c)
    return f


def to_sympy(f):
    return sympy.sympify(format_poly(f).replace("^", "**"))


@given(small_polys(), small_polys(), small_polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(small_polys())
@settings(max_examples=60, deadline=None)
def test_format_parse_round_trip(f):
    assert parse_poly(format_poly(f)) == f


@given(small_polys(max_terms=3), small_polys(max_terms=3), small_polys(max_terms=2))
@settings(max_examples=40, deadline=None)
def test_gcd_scales_with_common_factor(f, g, h):
    if not h.terms or (not f.terms and not g.terms):
        return
    lhs = gcd_multi(f * h, g * h)
    rhs = normalize(gcd_multi(f, g) * h)
    assert lhs == rhs


@given(small_polys(max_terms=4), small_polys(max_terms=4))
@settings(max_examples=40, deadline=None)
def test_gcd_matches_sympy(f, g):
    if not f.terms or not g.terms:
        return
    ours = gcd_multi(f, g)
    theirs = sympy.gcd(to_sympy(f), to_sympy(g))
    assert sympy.simplify(to_sympy(ours) / theirs).is_number


@given(small_polys(max_terms=4), small_polys(max_terms=3))
@settings(max_examples=40, deadline=None)
def test_divexact_inverts_multiplication(f, g):
    if not g.terms:
        return
    assert divexact(f * g, g) == f
    assert divides(g, f * g)


def test_parse_grammar():
    f = parse_poly("(t1 - t2)^2 / 2 + 3*x1")
    assert f == (MPoly.var("t1") - MPoly.var("t2")) ** 2 * Fraction(1, 2) + MPoly.var("x1") * 3
    assert parse_poly("t1**2") == parse_poly("t1^2")
    assert parse_poly("  - t1 ") == -MPoly.var("t1")


@pytest.mark.parametrize("bad", ["t1 +", "t1^-1", "(t1", "t1 / t2", "2t1 t2 )"])
def test_parse_rejects(bad):
    with pytest.raises(PolySyntaxError):
        parse_poly(bad)


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("q + 1")
    with pytest.raises(UnknownVariableError):
        parse_poly("x1", variables=("t1",))


def test_format_is_canonical():
    f = parse_poly("t2^4 - 4*t1*t2^3 + 6*t1^2*t2^2 - 4*t1^3*t2 + t1^4")
    assert format_poly(f) == "t1^4 - 4*t1^3*t2 + 6*t1^2*t2^2 - 4*t1*t2^3 + t2^4"
    assert format_poly(ZERO) == "0"


def test_degrees():
    f = parse_poly("t1^2*x1 + t3*x1^3")
    assert degree_in_block(f, ("t1", "t2", "t3")) == 2
    assert degree_in_block(f, ("x1",)) == 3
    assert f.degree("t2") == 0
    assert ZERO.degree("t1") is NEG_INF
    assert NEG_INF < 0


def test_homogeneity_helpers():
    f = parse_poly("t1^2 + t1*t3 + t2")
    assert not is_homogeneous_in_block(f, ("t1", "t2", "t3"))
    assert homogeneous_part(f, ("t1", "t2", "t3"), 2) == parse_poly("t1^2 + t1*t3")
    assert homogenize(f, ("t1", "t2", "t3"), "h1") == parse_poly("t1^2 + t1*t3 + t2*h1")


def test_substitute_is_simultaneous():
    f = parse_poly("t1 - 2*t2")
    g = substitute(f, {"t1": MPoly.var("t2"), "t2": MPoly.var("t1")})
    assert g == parse_poly("t2 - 2*t1")


def test_normalize_and_content():
    f = parse_poly("-6*t1 + 4/3*t2")
    assert integer_content(f) == Fraction(2, 3)
    assert normalize(f) == parse_poly("9*t1 - 2*t2")


def test_divexact_raises():
    with pytest.raises(NotDivisibleError):
        divexact(parse_poly("t1^2 + 1"), parse_poly("t1 - 1"))


def test_gcd_list_examples():
    comps = [parse_poly(s) for s in ("t1^2*t3", "t1*t2*t3", "t1*t3^2")]
    assert gcd_list(comps) == parse_poly("t1*t3")
    assert gcd_multi(parse_poly("t1^2 - t2^2"), parse_poly("t1^2 + 2*t1*t2 + t2^2")) == parse_poly("t1 + t2")
