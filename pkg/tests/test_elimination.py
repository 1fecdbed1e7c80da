import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from blx.elimination import (
    EliminationError,
    bareiss_determinant,
    content_split,
    homogeneous_linear_factors,
    linear_form,
    resultant,
    sylvester_matrix,
)
from blx.polycore import MPoly, ZERO, format_poly, normalize, parse_poly

T1, T2, T3 = (MPoly.var(v) for v in ("t1", "t2", "t3"))


@st.composite
def polys_in_t3(draw, max_deg=3, coeff_vars=("t1", "x1")):
    deg = draw(st.integers(1, max_deg))
    f = ZERO
    for k in range(deg + 1):
        for _ in range(draw(st.integers(0, 2))):
            c = draw(st.integers(-5, 5))
            exps = {v: draw(st.integers(0, 2)) for v in coeff_vars}
            exps["t3"] = k
            f = f + MPoly.monomial(exps, c)
    f = f + MPoly.monomial({"t3": deg}, draw(st.integers(1, 4)))
    if f.degree("t3") != deg:
        f = f + MPoly.monomial({"t3": deg})
    return f


def sym(f):
    return sympy.sympify(format_poly(f).replace("^", "**"))


@given(polys_in_t3(), polys_in_t3())
@settings(max_examples=30, deadline=None)
def test_resultant_matches_sympy(f, g):
    ours = resultant(f, g, "t3")
    # sympy.resultant swaps its arguments when deg f < deg g, so compare
    # with the determinant of sympy's own Sylvester matrix instead
    theirs = sylvester(sym(f), sym(g), sympy.Symbol("t3")).det(method="berkowitz")
    assert sympy.expand(sym(ours) - theirs) == 0


@given(polys_in_t3(), polys_in_t3())
@settings(max_examples=30, deadline=None)
def test_resultant_antisymmetry(f, g):
    m, n = f.degree("t3"), g.degree("t3")
    sign = -1 if (m * n) % 2 else 1
    assert resultant(f, g, "t3") == resultant(g, f, "t3") * sign


@given(polys_in_t3(max_deg=2), polys_in_t3(max_deg=2), polys_in_t3(max_deg=2))
@settings(max_examples=15, deadline=None)
def test_resultant_multiplicative(f, g, h):
    assert resultant(f * g, h, "t3") == resultant(f, h, "t3") * resultant(g, h, "t3")


@given(polys_in_t3(), polys_in_t3())
@settings(max_examples=20, deadline=None)
def test_methods_agree(f, g):
    a = resultant(f, g, "t3", method="sylvester")
    assert resultant(f, g, "t3") == a
    assert resultant(f, g, "t3", method="interp") == a


def test_homogeneous_resultant_degree():
    f = parse_poly("t1*t3 + t2^2 + x1*t3^2")
    g = parse_poly("t3^2 - t1*t2")
    R = resultant(f, g, "t3", homogeneous=True)
    assert R.gens and {sum(e[i] for i, v in enumerate(R.gens) if v in ("t1", "t2")) for e in R.terms} == {4}


def test_common_root_kills_resultant():
    f = (T3 - T1) * (T3 + 2)
    g = (T3 - T1) * (T3 - T2)
    assert not resultant(f, g, "t3").terms


def test_bareiss_small():
    M = [[MPoly.constant(c) for c in row] for row in ([2, 1, 0], [1, 3, 1], [0, 1, 4])]
    assert bareiss_determinant(M) == MPoly.constant(18)


def test_sylvester_shape():
    M = sylvester_matrix(T3 ** 2 + T1, T3 ** 3 + T2, "t3")
    assert len(M) == 5 and all(len(r) == 5 for r in M)


def test_content_split():
    f = parse_poly("(t1 - t2)^2 * (x1*t1 + x2*t2)")
    s = content_split(f, "x1 x2")
    assert s.content == parse_poly("t1^2 - 2*t1*t2 + t2^2")
    assert normalize(s.primpart) == parse_poly("x1*t1 + x2*t2")
    assert s.content * s.primpart == f or s.content * s.primpart == -f


def test_linear_factors():
    f = normalize((T1 - T2) ** 3 * T2 ** 2 * (2 * T1 + 3 * T2) * (T1 ** 2 + T2 ** 2))
    lf = homogeneous_linear_factors(f)
    got = dict(lf.factors)
    assert got[(1, 1)] == 3
    assert got[(1, 0)] == 2
    assert got[(-3, 2)] == 1
    assert lf.residual == parse_poly("t1^2 + t2^2")
    for (a, b), m in lf.factors:
        assert not linear_form((a, b)).substitute({"t1": a, "t2": b}).terms


def test_linear_factors_large_coefficients():
    f = normalize((1234567 * T1 - 7654321 * T2) * (T1 ** 2 - 3 * T2 ** 2))
    assert dict(homogeneous_linear_factors(f).factors) == {(7654321, 1234567): 1}


def test_linear_factors_rejects_inhomogeneous():
    with pytest.raises(EliminationError):
        homogeneous_linear_factors(T1 + 1)
