"""Base-point locus of a surface parametrization P^2 --> P^3.

The multiplicity of the base locus is read off the t-degree of the content
(with respect to the generic coefficients) of a resultant in t3 of two
auxiliary polynomials.  Two constructions are available:

* ``W``: ``W1 = sum x_i L_i(P)``, ``W2 = sum y_i L_i(P)``, valid for every
  invertible ``L``;
* ``K``: ``K1 = x4 L1(P) - x1 L4(P)``, ``K2 = x4 L3(P) - x3 L4(P)`` for a
  star ``L``, cheaper (one coefficient block) but only valid for generic
  ``L``, so every choice is certified and resampled on failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd, isqrt
from typing import Sequence

from .elimination import (
    ContentSplit,
    content_split,
    homogeneous_linear_factors,
    resultant,
)
from .polycore import (
    MPoly,
    ONE,
    ZERO,
    degree_in_block,
    format_poly,
    gcd_list,
    gcd_multi,
    homogeneous_part,
    min_degree_in_block,
    substitute,
)
from .transform import (
    T_VARS,
    Check,
    HypothesisCertificate,
    HypothesisError,
    ProjTransform,
    RationalMap,
    TransformError,
    apply_param,
    hypothesis_checks,
    normalize_hypotheses,
    sample_star_transform,
    sample_transform,
    satisfies_hypotheses,
)

X = [MPoly.var(f"x{i}") for i in range(1, 5)]
Y = [MPoly.var(f"y{i}") for i in range(1, 5)]


class CertificationError(RuntimeError):
    """No sampled transformation passed the genericity certificate."""

    def __init__(self, message: str, attempts: Sequence = ()):
        super().__init__(message)
        self.attempts = list(attempts)


@dataclass(frozen=True)
class ParamSurface(RationalMap):
    """``(p1 : p2 : p3 : p4)`` with optional metadata on the image surface.

    ``degmap`` is the cardinality of the generic fiber and ``surface_degree``
    the degree of the image; both are optional user or fixture metadata and
    ``meta_source`` says where they came from.
    """

    degmap: int | None = None
    surface_degree: int | None = None
    meta_source: str = ""

    arity = 4


@dataclass(frozen=True)
class GenericityCertificate:
    conditions: tuple
    L: ProjTransform | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_json(self) -> dict:
        return {
            "L": self.L.to_lists() if self.L is not None else None,
            "conditions": [c.to_json() for c in self.conditions],
            "pass": self.passed,
        }


@dataclass(frozen=True)
class BasePoint:
    point: tuple
    multiplicity: int
    curve_multiplicity: int | None = None
    tangent_cone: MPoly | None = None

    def to_json(self) -> dict:
        return {
            "point": [str(c) for c in self.point],
            "multiplicity": self.multiplicity,
            "curve_multiplicity": self.curve_multiplicity,
            "tangent_cone": format_poly(self.tangent_cone) if self.tangent_cone is not None else None,
        }


@dataclass(frozen=True)
class BaseLocusReport:
    degree: int
    mult_total: int
    content: MPoly
    primpart_degree: int
    rational_points: tuple
    residual_degree: int
    genericity: GenericityCertificate
    path: str
    seed: object
    attribution_ell: ProjTransform | None = None
    rejected: tuple = ()
    resultant_terms: int = 0

    def to_json(self) -> dict:
        kind = "x,y" if self.path == "W" else "x"
        return {
            "path": self.path,
            "deg": self.degree,
            "mult_total": self.mult_total,
            "content": format_poly(self.content),
            "primpart_degree": self.primpart_degree,
            "rational_points": [p.to_json() for p in self.rational_points],
            "residual_degree": self.residual_degree,
            "genericity": self.genericity.to_json(),
            "rejected_L": len(self.rejected),
            "attribution_ell": self.attribution_ell.to_lists() if self.attribution_ell is not None else None,
            "seed": str(self.seed),
            "sources": {
                "deg": "common t-degree of the components",
                "mult_total": f"deg_t Content_{{{kind}}} Res_t3({self.path}1, {self.path}2)",
                "primpart_degree": f"deg_t Primpart_{{{kind}}} Res_t3({self.path}1, {self.path}2)",
                "rational_points.multiplicity": "exponent of the line factor of the content",
                "rational_points.curve_multiplicity": "min order of the components at the point",
                "residual_degree": "mult_total minus attributed rational multiplicities",
            },
        }


# --------------------------------------------------------------------------
# auxiliary polynomials


def _left(P: RationalMap, L: ProjTransform | None) -> list[MPoly]:
    if L is None:
        return list(P.comps)
    if L.k + 1 != len(P.comps):
        raise TransformError("dimension mismatch")
    return L.apply_forms(P.comps)


def build_W(P: RationalMap, L: ProjTransform | None = None) -> tuple[MPoly, MPoly]:
    """``W1 = sum x_i L_i(P)`` and ``W2 = sum y_i L_i(P)``."""
    comps = _left(P, L)
    W1 = sum((x * c for x, c in zip(X, comps)), ZERO)
    W2 = sum((y * c for y, c in zip(Y, comps)), ZERO)
    return W1, W2


def build_K(P: ParamSurface, L: ProjTransform | None = None) -> tuple[MPoly, MPoly]:
    """``K1 = x4 L1(P) - x1 L4(P)``, ``K2 = x4 L3(P) - x3 L4(P)`` for star ``L``."""
    if L is not None and not L.star:
        raise TransformError("the K construction needs a star transform")
    if len(P.comps) != 4:
        raise TransformError("the K construction needs four components")
    c = _left(P, L)
    K1 = X[3] * c[0] - X[0] * c[3]
    K2 = X[3] * c[2] - X[2] * c[3]
    return K1, K2


# --------------------------------------------------------------------------
# multiplicity


@dataclass(frozen=True)
class _Attempt:
    certificate: GenericityCertificate
    split: ContentSplit | None


def _k_attempt(P: ParamSurface, L: ProjTransform) -> _Attempt:
    n = P.degree
    c = L.apply_forms(P.comps)
    checks = []
    g14 = gcd_multi(c[0], c[3])
    g34 = gcd_multi(c[2], c[3])
    checks.append(Check("gcd(L1(P), L4(P)) = 1", not g14.gens, format_poly(g14)))
    checks.append(Check("gcd(L3(P), L4(P)) = 1", not g34.gens, format_poly(g34)))
    K1, K2 = build_K(P, L)
    d1, d2 = K1.degree("t3"), K2.degree("t3")
    checks.append(Check("deg_t3 K1 = deg_t3 K2 = deg P", d1 == n and d2 == n, f"{d1}, {d2}"))
    if not all(ch.passed for ch in checks):
        return _Attempt(GenericityCertificate(tuple(checks), L), None)
    R = resultant(K1, K2, "t3", homogeneous=True)
    checks.append(Check("Res_t3(K1, K2) != 0", bool(R.terms), f"{len(R)} terms"))
    if not R.terms:
        return _Attempt(GenericityCertificate(tuple(checks), L), None)
    split = content_split(R, "x")
    return _Attempt(GenericityCertificate(tuple(checks), L), split)


def _w_attempt(P: RationalMap, L: ProjTransform | None) -> _Attempt:
    n = P.degree
    W1, W2 = build_W(P, L)
    checks = []
    d1, d2 = W1.degree("t3"), W2.degree("t3")
    checks.append(Check("deg_t3 W1 = deg_t3 W2 = deg P", d1 == n and d2 == n, f"{d1}, {d2}"))
    if not checks[0].passed:
        return _Attempt(GenericityCertificate(tuple(checks), L), None)
    R = resultant(W1, W2, "t3", homogeneous=True)
    checks.append(Check("Res_t3(W1, W2) != 0", bool(R.terms), f"{len(R)} terms"))
    if not R.terms:
        return _Attempt(GenericityCertificate(tuple(checks), L), None)
    return _Attempt(GenericityCertificate(tuple(checks), L), content_split(R, "x y"))


def certified_k_content(P: ParamSurface, L: ProjTransform | None = None, trials: int = 25,
                        seed=0, cross_check: bool = True, bound: int = 10):
    """Content split of the K resultant for a certified star ``L``.

    Returns ``(split, certificate, rejected)``.  With ``cross_check`` a second
    independently sampled star transform must also pass and produce the same
    content; the agreement is recorded in the certificate.
    """
    rejected = []
    if L is not None:
        candidates = [L]
    else:
        candidates = [sample_star_transform(3, f"{seed}:K:{i}", bound) for i in range(trials)]
    first = None
    for cand in candidates:
        att = _k_attempt(P, cand)
        if att.split is None:
            rejected.append(att.certificate)
            continue
        if first is None:
            first = att
            if not cross_check:
                break
            if L is not None:
                # cross-check the supplied L against a sampled one
                for i in range(trials):
                    other = _k_attempt(P, sample_star_transform(3, f"{seed}:Kx:{i}", bound))
                    if other.split is not None:
                        return _finish_cross(first, other, rejected)
                    rejected.append(other.certificate)
                raise CertificationError("no cross-check transform passed", rejected)
            continue
        return _finish_cross(first, att, rejected)
    if first is not None and not cross_check:
        return first.split, first.certificate, rejected
    if first is not None:
        raise CertificationError("no second transform passed for the cross-check", rejected)
    raise CertificationError(f"no star transform passed the certificate in {len(candidates)} trials", rejected)


def _finish_cross(first: _Attempt, other: _Attempt, rejected):
    same = first.split.content == other.split.content
    cert = GenericityCertificate(
        first.certificate.conditions
        + (Check("content agrees with an independent L'", same,
                 f"L' rows {other.certificate.L.to_lists()}"),),
        first.certificate.L,
    )
    if not same:
        rejected.append(cert)
        raise CertificationError("contents disagree between two certified transforms", rejected)
    return first.split, cert, rejected


def w_content(P: RationalMap, L: ProjTransform | None = None):
    att = _w_attempt(P, L)
    if att.split is None:
        raise CertificationError("W resultant vanished", [att.certificate])
    return att.split, att.certificate


def mult_base_locus(P: ParamSurface, path: str = "K", L: ProjTransform | None = None,
                    trials: int = 25, seed=0, validate: bool = False, attribute: bool = True,
                    cross_check: bool = True, bound: int = 10) -> BaseLocusReport:
    """Multiplicity of the base locus of a normalized parametrization."""
    path = path.upper()
    if path not in ("W", "K"):
        raise ValueError("path must be W or K")
    if not satisfies_hypotheses(P):
        raise HypothesisError("input is not normalized (components must be non-zero at (0:0:1))")
    if P.gcd().gens:
        raise HypothesisError("components are not coprime")
    n = P.degree
    rejected: list = []
    if path == "K":
        split, cert, rejected = certified_k_content(P, L, trials, seed, cross_check, bound)
    else:
        split, cert = w_content(P, L)
    if validate:
        other_split, _ = w_content(P, None) if path == "K" else certified_k_content(P, None, trials, seed, False, bound)[:2]
        cert = GenericityCertificate(
            cert.conditions + (Check("W and K contents agree", other_split.content == split.content,
                                     format_poly(other_split.content)),),
            cert.L,
        )
        if not cert.passed:
            raise CertificationError("W and K contents disagree", list(rejected) + [cert])
    mult = degree_in_block(split.content, T_VARS)
    prim = degree_in_block(split.primpart, T_VARS)
    cert = GenericityCertificate(
        cert.conditions + (Check("content degree + primpart degree = deg(P)^2", mult + prim == n * n,
                                 f"{mult} + {prim} vs {n * n}"),),
        cert.L,
    )
    if not cert.passed:
        raise CertificationError("degree split failed", list(rejected) + [cert])
    points: tuple = ()
    residual = mult
    ell_used = None
    if attribute and mult > 0:
        points, residual, ell_used = attribute_points(P, split.content, seed=seed, path=path,
                                                      trials=trials, bound=bound)
    return BaseLocusReport(
        degree=n,
        mult_total=mult,
        content=split.content,
        primpart_degree=prim,
        rational_points=points,
        residual_degree=residual,
        genericity=cert,
        path=path,
        seed=seed,
        attribution_ell=ell_used,
        rejected=tuple(rejected),
    )


# --------------------------------------------------------------------------
# attribution of the content to rational base points


def _primitive_point(pt: Sequence) -> tuple:
    fr = [Fraction(c) for c in pt]
    den = 1
    for c in fr:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    last = next(c for c in reversed(ints) if c)
    return tuple(-c for c in ints) if last < 0 else tuple(ints)


def _points_on_lines(P: RationalMap, content: MPoly):
    """Match line factors of the content with base points.

    Returns ``(points, residual_degree)`` or ``None`` when some rational line
    through (0:0:1) does not carry exactly one rational base point.
    """
    lf = homogeneous_linear_factors(content)
    points = []
    s, r = MPoly.var("t1"), MPoly.var("t3")
    for (a, b), m in lf.factors:
        line = {"t1": s.scale(a), "t2": s.scale(b), "t3": r}
        g = gcd_list([substitute(c, line) for c in P.comps])
        if not g.gens:
            return None
        g2 = substitute(g, {"t1": MPoly.var("t1"), "t3": MPoly.var("t2")})
        roots = homogeneous_linear_factors(g2)
        if len(roots.factors) != 1 or roots.residual.gens:
            return None
        (u, w), _ = roots.factors[0]
        # root at t1 : t3 = u : w, i.e. the point (a u : b u : w)
        if u == 0:
            return None
        points.append((_primitive_point((a * u, b * u, w)), m))
    residual = degree_in_block(lf.residual, T_VARS)
    return points, residual


def attribute_points(P: RationalMap, content: MPoly, seed=0, path: str = "K", trials: int = 25,
                     bound: int = 10, max_moves: int = 10, content_fn=None):
    """Rational base points with multiplicities, plus the residual degree.

    When two base points share a line through (0:0:1) the parametrization is
    moved by a fresh star transform ``ell``; points are reported in the
    coordinates of ``P``.  ``content_fn(Q, seed)`` recomputes the content
    for a moved map; by default the K or W construction is used.
    """
    found = _points_on_lines(P, content)
    ell_used = None
    if found is None:
        for i in range(max_moves):
            ell = sample_star_transform(2, f"{seed}:move:{i}", bound)
            Q = apply_param(ell, P)
            if not satisfies_hypotheses(Q):
                continue
            sub_seed = f"{seed}:move:{i}"
            if content_fn is not None:
                moved_content = content_fn(Q, sub_seed)
            elif path == "K":
                moved_content = certified_k_content(Q, None, trials, sub_seed, False, bound)[0].content
            else:
                moved_content = w_content(Q, None)[0].content
            found = _points_on_lines(Q, moved_content)
            if found is not None:
                pts, residual = found
                found = ([(_primitive_point(ell.apply_point(p)), m) for p, m in pts], residual)
                ell_used = ell
                break
    if found is None:
        # give up on attribution: everything stays in the residual
        return (), degree_in_block(content, T_VARS), None
    pts, residual = found
    out = []
    for p, m in sorted(pts):
        ord_ = point_curve_multiplicity(P, p)
        cone = tangent_cone(P, p)
        out.append(BasePoint(p, m, ord_, cone))
    return tuple(out), residual, ell_used


# --------------------------------------------------------------------------
# local data at a base point


def move_to_origin(A: Sequence) -> ProjTransform:
    """A transform ``M`` with ``M (0,0,1) = A``."""
    A = [Fraction(c) for c in A]
    if len(A) != 3 or not any(A):
        raise ValueError("expected a point of P^2")
    for i, j in ((0, 1), (0, 2), (1, 2)):
        cols = [[int(r == i) for r in range(3)], [int(r == j) for r in range(3)], A]
        rows = [[cols[c][r] for c in range(3)] for r in range(3)]
        try:
            return ProjTransform.from_rows(rows)
        except TransformError:
            continue
    raise AssertionError("unreachable")  # pragma: no cover


def _check_base_point(P: RationalMap, A: Sequence):
    if any(v != 0 for v in P.at(tuple(A))):
        raise ValueError(f"{tuple(A)} is not a base point")


def _local_orders(P: RationalMap, A: Sequence):
    _check_base_point(P, A)
    M = move_to_origin(A)
    moved = apply_param(M, P).comps if list(A) != [0, 0, 1] else P.comps
    n = P.degree
    orders = []
    for c in moved:
        if not c.terms:
            orders.append(None)
        else:
            orders.append(n - c.degree("t3"))
    return moved, orders


def point_curve_multiplicity(P: RationalMap, A: Sequence) -> int:
    """Minimum over all components of the order of vanishing at ``A``."""
    _, orders = _local_orders(P, A)
    return min(o for o in orders if o is not None)


def tangent_cone(P: RationalMap, A: Sequence) -> MPoly:
    """``sum x_i M_i`` over the components of lowest order at ``A``, ``M_i`` being that lowest form.

    ``A`` is first moved to (0:0:1); the cone is a form in t1, t2 of degree
    equal to :func:`point_curve_multiplicity`.
    """
    moved, orders = _local_orders(P, A)
    low = min(o for o in orders if o is not None)
    out = ZERO
    for x, c, o in zip(X, moved, orders):
        if o == low:
            part = homogeneous_part(c, ("t1", "t2"), low)
            out = out + x * substitute(part, {"t3": 1})
    return out


# --------------------------------------------------------------------------
# degree formula


@dataclass(frozen=True)
class DegreeFormulaReport:
    degree: int
    mult_total: int
    primpart_degree: int
    surface_degree: int | None
    degmap: int | None
    checks: tuple
    base: BaseLocusReport

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "deg": self.degree,
            "mult_total": self.mult_total,
            "primpart_degree": self.primpart_degree,
            "surface_degree": self.surface_degree,
            "degmap": self.degmap,
            "checks": [c.to_json() for c in self.checks],
            "sources": {
                "primpart_degree": "deg_t of the primitive part of the resultant",
                "surface_degree": "primpart_degree / degmap",
                "degmap": "primpart_degree / surface_degree",
            },
        }


class InconsistentDataError(ValueError):
    pass


def degree_formula_report(P: ParamSurface, degmap: int | None = None, surface_degree: int | None = None,
                          report: BaseLocusReport | None = None, **kwargs) -> DegreeFormulaReport:
    """Split ``deg(P)^2`` into ``mult(B(P))`` and ``deg(S) * degMap(P)``."""
    degmap = degmap if degmap is not None else P.degmap
    surface_degree = surface_degree if surface_degree is not None else P.surface_degree
    base = report if report is not None else mult_base_locus(P, **kwargs)
    n = base.degree
    D = base.primpart_degree
    checks = [Check("primpart degree = deg(P)^2 - mult", D == n * n - base.mult_total,
                    f"{D} = {n}^2 - {base.mult_total}")]
    if degmap is not None:
        if degmap < 1 or D % degmap:
            raise InconsistentDataError(f"degMap {degmap} does not divide {D}")
        sd = D // degmap
        if surface_degree is not None and surface_degree != sd:
            raise InconsistentDataError(f"surface degree {surface_degree} but formula gives {sd}")
        surface_degree = sd
    elif surface_degree is not None:
        if surface_degree < 1 or D % surface_degree:
            raise InconsistentDataError(f"surface degree {surface_degree} does not divide {D}")
        degmap = D // surface_degree
    if degmap is not None:
        checks.append(Check("mult = deg(P)^2 - deg(S) degMap(P)",
                            base.mult_total == n * n - surface_degree * degmap,
                            f"{base.mult_total} = {n}^2 - {surface_degree}*{degmap}"))
        checks.append(Check("mult >= 0 and deg(P)^2 >= deg(S) degMap(P)",
                            base.mult_total >= 0 and n * n >= surface_degree * degmap,
                            f"{n * n} >= {surface_degree * degmap}"))
        if degmap == 1:
            checks.append(Check("birational: deg(P)^2 - mult = deg(S)", n * n - base.mult_total == surface_degree,
                                f"{n * n - base.mult_total} = {surface_degree}"))
            forced = isqrt(surface_degree) ** 2 != surface_degree
            checks.append(Check("non-square surface degree forces base points",
                                (not forced) or base.mult_total > 0,
                                f"deg(S) = {surface_degree}, square = {not forced}, mult = {base.mult_total}"))
    return DegreeFormulaReport(n, base.mult_total, D, surface_degree, degmap, tuple(checks), base)


# --------------------------------------------------------------------------
# convenience


@dataclass(frozen=True)
class SurfaceAnalysis:
    original: ParamSurface
    normalized: ParamSurface
    ell: ProjTransform
    left: ProjTransform | None
    report: BaseLocusReport
    points_original: tuple

    def to_json(self) -> dict:
        out = self.report.to_json()
        out["normalization"] = {
            "ell": self.ell.to_lists(),
            "left": self.left.to_lists() if self.left is not None else None,
            "certificate": self.normalized.certificate.to_json() if self.normalized.certificate else [],
        }
        out["rational_points_original"] = [
            {"point": [str(c) for c in p.point], "multiplicity": p.multiplicity} for p in self.points_original
        ]
        return out


def analyze_surface(P: ParamSurface, path: str = "K", seed=0, trials: int = 25, validate: bool = False,
                    bound: int = 10) -> SurfaceAnalysis:
    """Normalize ``P`` and compute its base-locus report.

    Rational base points are also mapped back to the coordinates of the input.
    """
    norm = normalize_hypotheses(P, seed=seed, bound=bound)
    Pn = norm.obj
    rep = mult_base_locus(Pn, path=path, trials=trials, seed=seed, validate=validate, bound=bound)
    back = []
    for bp in rep.rational_points:
        q = _primitive_point(norm.ell.apply_point(bp.point))
        back.append(BasePoint(q, bp.multiplicity, point_curve_multiplicity(P, q), tangent_cone(P, q)))
    return SurfaceAnalysis(P, Pn, norm.ell, norm.left, rep, tuple(back))
