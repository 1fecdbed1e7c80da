"""Brute-force checks that do not go through resultant contents.

* :func:`local_intersection_multiplicity` runs the classical recursive
  reduction for the intersection number of two affine plane curves at a
  point; :func:`truncated_local_dimension` computes the same number as the
  dimension of a truncated local algebra.
* :func:`base_point_multiplicity` specializes the generic combinations of
  the components to random integers and applies the first oracle.
* :func:`fiber_count_plane` counts the preimages of a random point under a
  plane map by elimination and square-free degrees.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .elimination import resultant
from .polycore import (
    MPoly,
    ONE,
    ZERO,
    degree_in_block,
    divexact,
    gcd_multi,
    homogenize,
    normalize,
    substitute,
)
from .transform import T_VARS, RationalMap, sample_star_transform, apply_param


class OracleError(RuntimeError):
    pass


class InfiniteMultiplicityError(OracleError):
    pass


_T1, _T2 = MPoly.var("t1"), MPoly.var("t2")


# --------------------------------------------------------------------------
# intersection numbers of affine plane curves


def _at_origin(f: MPoly, A: Sequence) -> MPoly:
    a1, a2 = A
    return substitute(f, {"t1": _T1 + a1, "t2": _T2 + a2})


def _value_at_origin(f: MPoly) -> Fraction:
    return substitute(f, {"t1": 0, "t2": 0}).constant_value()


def _order_x(u: MPoly) -> int:
    """Order of vanishing at 0 of a polynomial in t1 only."""
    return min(e[0] if u.gens else 0 for e in u.terms)


def local_intersection_multiplicity(f: MPoly, g: MPoly, A: Sequence = (0, 0), max_steps: int = 10000) -> int:
    """Intersection number at ``A`` of the affine curves ``f = 0`` and ``g = 0``.

    ``f`` and ``g`` are polynomials in t1, t2.  The recursion uses
    ``I(F, G) = I(F, G')`` for ``G' = a G - b t1^k F`` killing the top term
    of ``G(t1, 0)``, and ``I(t2 H, G) = ord G(t1, 0) + I(H, G)``.
    """
    for p in (f, g):
        if not set(p.gens) <= {"t1", "t2"}:
            raise ValueError("expected polynomials in t1, t2")
    F, G = _at_origin(f, A), _at_origin(g, A)
    total = 0
    stack = [(F, G)]
    steps = 0
    while stack:
        F, G = stack.pop()
        steps += 1
        if steps > max_steps:
            raise OracleError("intersection recursion did not terminate")
        if not F.terms or not G.terms:
            raise InfiniteMultiplicityError("a curve is the zero polynomial")
        if _value_at_origin(F) != 0 or _value_at_origin(G) != 0:
            continue
        Fx = substitute(F, {"t2": 0})
        Gx = substitute(G, {"t2": 0})
        if not Fx.terms and not Gx.terms:
            raise InfiniteMultiplicityError("the curves share the component t2 = 0")
        if not Fx.terms:
            F, G, Fx, Gx = G, F, Gx, Fx
        if not Gx.terms:
            # G = t2 * H: I(F, t2) + I(F, H)
            H = divexact(G, _T2)
            total += _order_x(Fx)
            stack.append((F, H))
            continue
        r, s = Fx.degree("t1"), Gx.degree("t1")
        if r > s:
            F, G, Fx, Gx, r, s = G, F, Gx, Fx, s, r
        a = Fx.to_univariate("t1")[-1].constant_value()
        b = Gx.to_univariate("t1")[-1].constant_value()
        G2 = G.scale(a) - (_T1 ** (s - r) * F).scale(b)
        stack.append((F, G2))
    return total


def truncated_local_dimension(f: MPoly, g: MPoly, A: Sequence = (0, 0), max_order: int = 80) -> int:
    """``dim Q[t1,t2] / ((f, g) + m^D)`` at ``A`` for growing ``D``.

    Stops at the first ``D`` whose value equals that of ``D + 1``; then
    ``m^D`` lies in the local ideal by Nakayama's lemma and the value is the
    intersection number.
    """
    F, G = _at_origin(f, A), _at_origin(g, A)
    prev = None
    for D in range(1, max_order + 1):
        cur = _truncated_dim(F, G, D)
        if prev is not None and cur == prev:
            return cur
        prev = cur
    raise InfiniteMultiplicityError("dimension did not stabilize; common component?")


def _truncated_dim(F: MPoly, G: MPoly, D: int) -> int:
    monos = [(i, d - i) for d in range(D) for i in range(d + 1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for P in (F, G):
        if not P.terms:
            continue
        pos = [P.gens.index(v) if v in P.gens else None for v in ("t1", "t2")]
        terms = [((e[pos[0]] if pos[0] is not None else 0, e[pos[1]] if pos[1] is not None else 0), c)
                 for e, c in P.terms.items()]
        for (i, j) in monos:
            row = {}
            for (a, b), c in terms:
                key = (a + i, b + j)
                if key in index:
                    row[index[key]] = Fraction(c)
            if row:
                rows.append(row)
    return len(monos) - _rank(rows)


def _rank(rows: list[dict]) -> int:
    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                factor = row[col] / prow[col]
                for k, v in prow.items():
                    nv = row.get(k, 0) - factor * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                pivots[col] = row
                break
    return len(pivots)


# --------------------------------------------------------------------------
# base points


@dataclass(frozen=True)
class LocalMultResult:
    value: int
    seeds: tuple
    agreement: int


def _chart(A: Sequence) -> tuple[int, list]:
    j = max(i for i, a in enumerate(A) if a != 0)
    others = [i for i in range(3) if i != j]
    return j, others


def _dehomogenize(f: MPoly, A: Sequence) -> tuple[MPoly, tuple]:
    """Affine equation of ``f`` in the chart ``t_j = 1`` containing ``A``."""
    j, others = _chart(A)
    names = [T_VARS[i] for i in others]
    tmp = {T_VARS[j]: 1}
    # rename the two remaining variables to t1, t2 via h1/h2 to avoid clashes
    tmp.update({names[0]: MPoly.var("h1"), names[1]: MPoly.var("h2")})
    g = substitute(f, tmp)
    g = substitute(g, {"h1": _T1, "h2": _T2})
    point = tuple(Fraction(A[i]) / A[j] for i in others)
    return g, point


def base_point_multiplicity(comps: Sequence[MPoly], A: Sequence, seeds: Sequence = (0, 1, 2),
                            bound: int = 50, method: str = "fulton") -> LocalMultResult:
    """Intersection number at ``A`` of two random combinations of the components.

    The generic coefficients are specialized to integers in ``[-bound, bound]``;
    every seed must give the same value.
    """
    for c in comps:
        if substitute(c, dict(zip(T_VARS, A))).terms:
            raise ValueError(f"{tuple(A)} is not a base point")
    values = []
    fn = local_intersection_multiplicity if method == "fulton" else truncated_local_dimension
    for s in seeds:
        rng = random.Random(f"hs:{s}")
        a = [rng.randint(-bound, bound) for _ in comps]
        b = [rng.randint(-bound, bound) for _ in comps]
        W1 = sum((c.scale(x) for c, x in zip(comps, a) if x), ZERO)
        W2 = sum((c.scale(x) for c, x in zip(comps, b) if x), ZERO)
        f, pt = _dehomogenize(W1, A)
        g, _ = _dehomogenize(W2, A)
        values.append(fn(f, g, pt))
    if len(set(values)) != 1:
        raise OracleError(f"specializations disagree: {values}")
    return LocalMultResult(values[0], tuple(seeds), len(values))


# --------------------------------------------------------------------------
# fibers of plane maps


def _squarefree_form(R: MPoly) -> MPoly:
    """Product of the distinct linear factors (over Q-bar) of a binary form."""
    if not R.gens:
        return ONE
    k = 0
    if "t2" in R.gens:
        i = R.gens.index("t2")
        k = min(e[i] for e in R.terms)
    R0 = divexact(R, _T2 ** k) if k else R
    u = substitute(R0, {"t2": 1})
    out = ONE
    if u.gens:
        g = gcd_multi(u, u.diff("t1"))
        sq = divexact(u, g)
        out = homogenize(sq, ("t1",), "t2")
    if k:
        out = out * _T2
    return normalize(out)


def _distinct_solutions(F1: MPoly, F2: MPoly, base: MPoly) -> int | None:
    R = resultant(F1, F2, "t3", homogeneous=True)
    if not R.terms:
        return None
    sR = _squarefree_form(R)
    sB = _squarefree_form(base)
    common = gcd_multi(sR, sB)
    deg = lambda f: degree_in_block(f, ("t1", "t2")) if f.terms else 0
    return deg(sR) - deg(common)


def fiber_count_plane(S: RationalMap, seed=0, targets: int = 2, max_attempts: int = 5, bound: int = 30) -> int:
    """Number of points of P^2 over Q-bar mapping to a random rational point.

    For a target ``(c1 : c2 : 1)`` the system ``s1 - c1 s3 = s2 - c2 s3 = 0``
    is solved by eliminating t3 after a random reparametrization; the
    distinct roots of the eliminant, minus the lines through base points,
    count the fiber.  Two reparametrizations must agree for each target and
    ``targets`` targets must agree with each other.
    """
    counts = []
    attempt = 0
    while len(counts) < targets:
        if attempt >= max_attempts * targets:
            raise OracleError("could not find generic targets")
        rng = random.Random(f"fiber:{seed}:{attempt}")
        attempt += 1
        c1, c2 = rng.randint(-bound, bound), rng.randint(-bound, bound)
        lam1, lam2 = rng.randint(1, bound), rng.randint(1, bound)
        per_shear = []
        for k in range(2):
            ell = sample_star_transform(2, f"fiber:{seed}:{attempt}:{k}")
            s1, s2, s3 = apply_param(ell, S).comps
            F1 = s1 - s3.scale(c1)
            F2 = s2 - s3.scale(c2)
            if F1.degree("t3") != S.degree or F2.degree("t3") != S.degree or s3.degree("t3") != S.degree:
                per_shear.append(None)
                continue
            base = resultant(s3, s1.scale(lam1) + s2.scale(lam2), "t3", homogeneous=True)
            per_shear.append(_distinct_solutions(F1, F2, base))
        if None in per_shear or per_shear[0] != per_shear[1]:
            continue
        counts.append(per_shear[0])
    if len(set(counts)) != 1:
        raise OracleError(f"fiber counts disagree across targets: {counts}")
    return counts[0]


# --------------------------------------------------------------------------
# surfaces through projections


def vanishes_on(F: MPoly, comps: Sequence[MPoly]) -> bool:
    """Whether ``F(u1, ..., u4)`` vanishes on the parametrization."""
    sub = {f"u{i + 1}": c for i, c in enumerate(comps)}
    return not substitute(F, sub).terms


def projection_fiber_count(comps: Sequence[MPoly], seed=0, bound: int = 10) -> int:
    """Fiber size of a random linear projection ``P^3 --> P^2`` composed with the map.

    For a generic projection this equals ``deg(surface) * degMap``.
    """
    from .planemaps import PlaneMap
    from .polycore import gcd_list

    rng = random.Random(f"proj:{seed}")
    for _ in range(100):
        M = [[rng.randint(-bound, bound) for _ in range(4)] for _ in range(3)]
        proj = [sum((c.scale(a) for c, a in zip(comps, row) if a), ZERO) for row in M]
        if any(not p.terms for p in proj):
            continue
        g = gcd_list(proj)
        if g.gens:
            continue
        try:
            S = PlaneMap(tuple(proj))
        except Exception:
            continue
        return fiber_count_plane(S, seed=seed)
    raise OracleError("no usable projection found")
