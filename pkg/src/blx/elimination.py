"""Resultants, contents with respect to a variable block, and rational
linear factors of binary forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from .polycore import (
    MPoly,
    ONE,
    ZERO,
    PolyError,
    _as_block,
    as_poly,
    divexact,
    degree_in_block,
    gcd_list,
    homogenize,
    integer_content,
    is_homogeneous_in_block,
    normalize,
    substitute,
)


class EliminationError(PolyError):
    pass


# --------------------------------------------------------------------------
# resultants


def sylvester_matrix(f: MPoly, g: MPoly, v: str) -> list[list[MPoly]]:
    a = f.to_univariate(v)
    b = g.to_univariate(v)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix: list[list[MPoly]]) -> MPoly:
    """Fraction-free Gaussian elimination; every division is exact."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        # pick the sparsest non-zero pivot in column k
        best = None
        for i in range(k, n):
            if M[i][k].terms and (best is None or len(M[i][k]) < len(M[best][k])):
                best = i
        if best is None:
            return ZERO
        if best != k:
            M[k], M[best] = M[best], M[k]
            sign = -sign
        piv = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            lead = rowi[k]
            for j in range(k + 1, n):
                val = rowi[j] * piv
                if lead.terms and rowk[j].terms:
                    val = val - lead * rowk[j]
                rowi[j] = divexact(val, prev) if prev is not ONE else val
            rowi[k] = ZERO
        prev = piv
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def bezout_matrix(f: MPoly, g: MPoly, v: str) -> list[list[MPoly]]:
    """Bezoutian of two polynomials of the same ``v``-degree ``n`` (n x n)."""
    a = f.to_univariate(v)
    b = g.to_univariate(v)
    n = len(a) - 1
    if len(b) - 1 != n:
        raise EliminationError("Bezout matrix needs equal degrees")
    B = [[ZERO] * n for _ in range(n)]
    for p in range(n + 1):
        for q in range(p + 1, n + 1):
            m = a[p] * b[q] - a[q] * b[p]
            if not m.terms:
                continue
            for r in range(q - p):
                i, j = p + r, q - 1 - r
                B[i][j] = B[i][j] - m
    return B


def resultant(f: MPoly, g: MPoly, v: str, homogeneous: bool = False, method: str = "auto") -> MPoly:
    """Sylvester resultant of ``f`` and ``g`` eliminating ``v``.

    With ``homogeneous=True`` both inputs must be homogeneous in t1,t2,t3 with
    ``v = "t3"`` and leading ``v``-coefficients free of t; the computation then
    runs with ``t2 = 1`` and the output is rehomogenized to degree
    ``deg f * deg g``.  ``method="sylvester"`` forces the Sylvester matrix;
    the default uses the smaller Bezout matrix when both degrees agree.
    ``method="interp"`` evaluates t1 at integer points and interpolates.
    All methods return exactly the same polynomial.
    """
    f = as_poly(f)
    g = as_poly(g)
    if not f.terms or not g.terms:
        raise EliminationError("resultant of a zero polynomial")
    m, n = f.degree(v), g.degree(v)
    if m == 0 and n == 0:
        raise EliminationError(f"both polynomials are constant in {v}")
    if homogeneous:
        return _homogeneous_resultant(f, g, v, method)
    if method == "interp":
        return _interp_resultant(f, g, v, "t1")
    return _plain_resultant(f, g, v, method)


def _plain_resultant(f: MPoly, g: MPoly, v: str, method: str = "auto") -> MPoly:
    m, n = f.degree(v), g.degree(v)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    if m == n and method != "sylvester":
        det = bareiss_determinant(bezout_matrix(f, g, v))
        return -det if (n * (n - 1) // 2) % 2 else det
    return bareiss_determinant(sylvester_matrix(f, g, v))


def _homogeneous_resultant(f: MPoly, g: MPoly, v: str, method: str) -> MPoly:
    T = ("t1", "t2", "t3")
    if v != "t3":
        raise EliminationError("homogeneous mode eliminates t3")
    for p in (f, g):
        if not is_homogeneous_in_block(p, T):
            raise EliminationError("homogeneous mode needs t-homogeneous inputs")
        lead = p.to_univariate(v)[-1]
        if degree_in_block(lead, T) != 0:
            raise EliminationError("leading t3-coefficient depends on t")
    m = degree_in_block(f, T)
    n = degree_in_block(g, T)
    fd = substitute(f, {"t2": 1})
    gd = substitute(g, {"t2": 1})
    if method == "interp":
        r = _interp_resultant(fd, gd, v, "t1")
    else:
        r = _plain_resultant(fd, gd, v, method)
    if not r.terms:
        return r
    return homogenize(r, ("t1",), "t2", m * n)


def _interp_resultant(f: MPoly, g: MPoly, v: str, w: str) -> MPoly:
    m, n = f.degree(v), g.degree(v)
    lead_f = f.to_univariate(v)[-1]
    lead_g = g.to_univariate(v)[-1]
    if w in lead_f.gens or w in lead_g.gens:
        # degree drops at special values would corrupt the samples
        return _plain_resultant(f, g, v)
    bound = m * max(g.degree(w), 0) + n * max(f.degree(w), 0)
    if bound == 0:
        return _plain_resultant(f, g, v)
    xs = list(range(bound + 1))
    ys = [_plain_resultant(substitute(f, {w: x}), substitute(g, {w: x}), v) for x in xs]
    return newton_interpolate(xs, ys, w)


def newton_interpolate(xs: list[int], ys: list[MPoly], w: str) -> MPoly:
    """Polynomial in ``w`` through ``(xs[i], ys[i])`` with MPoly values."""
    coef = list(ys)
    k = len(xs)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]).scale(Fraction(1, xs[i] - xs[i - j]))
    wv = MPoly.var(w)
    out = coef[-1]
    for i in range(k - 2, -1, -1):
        out = out * (wv - xs[i]) + coef[i]
    return out


# --------------------------------------------------------------------------
# content and primitive part


@dataclass(frozen=True)
class ContentSplit:
    content: MPoly
    primpart: MPoly
    block: frozenset

    @property
    def content_degree(self):
        return degree_in_block(self.content, ("t1", "t2", "t3"))


def content_split(f: MPoly, B) -> ContentSplit:
    """Content (gcd of the B-coefficients) and primitive part of ``f``.

    The content is normalized; ``content * primpart`` equals ``f`` up to a
    non-zero rational constant and the primitive part is normalized too.
    """
    if not f.terms:
        raise EliminationError("content of the zero polynomial")
    B = _as_block(B)
    coeffs = list(f.coefficients_in(B).values())
    content = gcd_list(coeffs)
    prim = divexact(f, content)
    return ContentSplit(content=normalize(content), primpart=normalize(prim), block=B)


# --------------------------------------------------------------------------
# rational linear factors of binary forms


@dataclass(frozen=True)
class LinearFactors:
    """``factors`` lists ``((a, b), m)`` for ``(b*t1 - a*t2)^m``."""

    factors: tuple
    residual: MPoly

    @property
    def linear_degree(self) -> int:
        return sum(m for _, m in self.factors)


def linear_form(point: tuple[int, int]) -> MPoly:
    a, b = point
    return normalize(MPoly.var("t1").scale(b) - MPoly.var("t2").scale(a)) if (a or b) else ZERO


def _point_key(a: int, b: int) -> tuple[int, int]:
    g = igcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return a, b


def homogeneous_linear_factors(f: MPoly) -> LinearFactors:
    """Rational linear factors of a binary form in t1, t2 with multiplicities."""
    if not f.terms:
        raise EliminationError("linear factors of the zero polynomial")
    if not set(f.gens) <= {"t1", "t2"}:
        raise EliminationError("expected a form in t1, t2 only")
    if not is_homogeneous_in_block(f, ("t1", "t2")):
        raise EliminationError("input is not homogeneous in t1, t2")
    factors = []
    rest = normalize(f)
    k = _power_of(rest, "t2")
    if k:
        factors.append(((1, 0), k))
        rest = divexact(rest, MPoly.var("t2") ** k)
    j = _power_of(rest, "t1")
    if j:
        factors.append(((0, 1), j))
        rest = divexact(rest, MPoly.var("t1") ** j)
    if rest.gens:
        for a, b in _rational_roots(rest):
            lf = linear_form((a, b))
            m = 0
            while True:
                try:
                    rest = divexact(rest, lf)
                except ArithmeticError:
                    break
                m += 1
            if m:
                factors.append(((a, b), m))
    factors.sort(key=lambda item: (item[0][1] == 0, Fraction(item[0][0], item[0][1]) if item[0][1] else 0))
    return LinearFactors(factors=tuple(factors), residual=normalize(rest))


def _power_of(f: MPoly, v: str) -> int:
    if v not in f.gens:
        return 0
    i = f.gens.index(v)
    return min(e[i] for e in f.terms)


def _rational_roots(f: MPoly) -> list[tuple[int, int]]:
    """Roots ``t1/t2 = a/b`` of a binary form with non-zero t1^d and t2^d terms."""
    from sympy import Poly, Symbol

    coeffs = [c.constant_value() for c in substitute(f, {"t2": 1}).to_univariate("t1")]
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    # linear factors q*x - p over Z give the rational roots p/q
    _, facs = Poly(ints[::-1], Symbol("x"), domain="ZZ").factor_list()
    roots = []
    for fac, _mult in facs:
        if fac.degree() == 1:
            q, p = (int(c) for c in fac.all_coeffs())
            roots.append(_point_key(-p, q))
    return sorted(set(roots))
