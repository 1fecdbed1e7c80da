"""Dominant rational maps of the projective plane.

For a map ``S = (s1 : s2 : s3)`` of degree ``d`` the base-locus multiplicity
is obtained exactly as for surfaces, with ``V1 = sum x_i L_i(S)``,
``V2 = sum y_i L_i(S)`` (any ``L``) or ``J1 = x3 L1(S) - x1 L3(S)``,
``J2 = x3 L2(S) - x2 L3(S)`` (generic ``L``, certified).  The generic fiber
size is then ``d^2 - mult``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .baselocus import (
    X,
    Y,
    BasePoint,
    CertificationError,
    GenericityCertificate,
    ParamSurface,
    _points_on_lines,
    attribute_points,
    mult_base_locus,
)
from .elimination import ContentSplit, content_split, resultant
from .polycore import (
    MPoly,
    ZERO,
    degree_in_block,
    format_poly,
    gcd_multi,
    homogenize,
    substitute,
)
from .transform import (
    T_VARS,
    Check,
    HypothesisError,
    ProjTransform,
    RationalMap,
    TransformError,
    normalize_hypotheses,
    sample_transform,
    satisfies_hypotheses,
)


class NotDominantError(HypothesisError):
    pass


class InverseError(ValueError):
    pass


def _jacobian_det_at(comps: Sequence[MPoly], point: Sequence[int]) -> Fraction:
    sub = dict(zip(T_VARS, point))
    J = [[substitute(c.diff(t), sub).constant_value() for t in T_VARS] for c in comps]
    (a, b, c), (d, e, f), (g, h, i) = J
    return Fraction(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


def dominance_witness(comps: Sequence[MPoly], tries: int = 3, seed="dominance"):
    """A point where the Jacobian of ``(s1, s2, s3)`` is non-singular, or None.

    For homogeneous components this 3x3 determinant is non-zero exactly when
    the affine Jacobian of ``(s1/s3, s2/s3)`` has rank 2 at a point off
    ``s3 = 0`` (Euler's relation), so it decides dominance.
    """
    rng = random.Random(seed)
    for _ in range(tries):
        pt = tuple(rng.randint(-1000, 1000) for _ in range(3))
        det = _jacobian_det_at(comps, pt)
        if det != 0:
            return pt, det
    return None


@dataclass(frozen=True)
class PlaneMap(RationalMap):
    """``(s1 : s2 : s3)``; dominance is checked on construction."""

    dominance: tuple | None = field(default=None, compare=False)

    arity = 3

    def __post_init__(self):
        super().__post_init__()
        if any(not c.terms for c in self.comps):
            raise NotDominantError("a zero component: the map is not dominant")
        wit = dominance_witness(self.comps)
        if wit is None:
            raise NotDominantError("Jacobian vanished at three random points: the map is not dominant")
        object.__setattr__(self, "dominance", wit)


# --------------------------------------------------------------------------


def build_V(S: RationalMap, L: ProjTransform | None = None) -> tuple[MPoly, MPoly]:
    c = L.apply_forms(S.comps) if L is not None else list(S.comps)
    V1 = sum((x * s for x, s in zip(X, c)), ZERO)
    V2 = sum((y * s for y, s in zip(Y, c)), ZERO)
    return V1, V2


def build_J(S: RationalMap, L: ProjTransform | None = None) -> tuple[MPoly, MPoly]:
    """``J1 = x3 L1(S) - x1 L3(S)``, ``J2 = x3 L2(S) - x2 L3(S)``."""
    if L is not None and L.k != 2:
        raise TransformError("plane maps need a transform of P^2")
    c = L.apply_forms(S.comps) if L is not None else list(S.comps)
    J1 = X[2] * c[0] - X[0] * c[2]
    J2 = X[2] * c[1] - X[1] * c[2]
    return J1, J2


@dataclass(frozen=True)
class PlaneMapReport:
    degree: int
    mult_total: int
    degmap: int
    birational: bool
    content: MPoly
    primpart_degree: int
    rational_points: tuple
    residual_degree: int
    certificate: GenericityCertificate
    path: str
    seed: object
    rejected: tuple = ()

    def to_json(self) -> dict:
        kind = "x,y" if self.path == "V" else "x"
        return {
            "deg": self.degree,
            "mult": self.mult_total,
            "degmap": self.degmap,
            "birational": self.birational,
            "path": self.path,
            "content": format_poly(self.content),
            "primpart_degree": self.primpart_degree,
            "rational_points": [p.to_json() for p in self.rational_points],
            "residual_degree": self.residual_degree,
            "genericity": self.certificate.to_json(),
            "rejected_L": len(self.rejected),
            "seed": str(self.seed),
            "sources": {
                "deg": "common t-degree of the components",
                "mult": f"deg_t Content_{{{kind}}} Res_t3({self.path}1, {self.path}2)",
                "degmap": "deg^2 - mult",
                "primpart_degree": f"deg_t Primpart_{{{kind}}} Res_t3({self.path}1, {self.path}2)",
                "birational": "degmap == 1",
            },
        }


def _j_attempt(S: RationalMap, L: ProjTransform):
    d = S.degree
    c = L.apply_forms(S.comps)
    checks = []
    at = [substitute(ci, {"t1": 0, "t2": 0, "t3": 1}).constant_value() for ci in c]
    checks.append(Check("L_i(S)(0,0,1) != 0 for i = 1,2,3", all(v != 0 for v in at), str(at)))
    g13 = gcd_multi(c[0], c[2])
    g23 = gcd_multi(c[1], c[2])
    checks.append(Check("gcd(L1(S), L3(S)) = 1", not g13.gens, format_poly(g13)))
    checks.append(Check("gcd(L2(S), L3(S)) = 1", not g23.gens, format_poly(g23)))
    J1, J2 = build_J(S, L)
    d1, d2 = J1.degree("t3"), J2.degree("t3")
    checks.append(Check("deg_t3 J1 = deg_t3 J2 = deg S", d1 == d and d2 == d, f"{d1}, {d2}"))
    if not all(ch.passed for ch in checks):
        return GenericityCertificate(tuple(checks), L), None
    R = resultant(J1, J2, "t3", homogeneous=True)
    checks.append(Check("Res_t3(J1, J2) != 0", bool(R.terms), f"{len(R)} terms"))
    if not R.terms:
        return GenericityCertificate(tuple(checks), L), None
    return GenericityCertificate(tuple(checks), L), content_split(R, "x")


def certified_j_content(S: RationalMap, L: ProjTransform | None = None, trials: int = 25, seed=0,
                        cross_check: bool = True, bound: int = 10):
    """Content split of the J resultant for a certified ``L`` (see the K analogue)."""
    rejected = []
    cands = [L] if L is not None else [sample_transform(2, f"{seed}:J:{i}", bound) for i in range(trials)]
    first = None
    for cand in cands:
        cert, split = _j_attempt(S, cand)
        if split is None:
            rejected.append(cert)
            continue
        first = (cert, split)
        break
    if first is None:
        raise CertificationError(f"no transform passed the plane-map certificate in {len(cands)} trials", rejected)
    cert, split = first
    if cross_check:
        for i in range(trials):
            c2, s2 = _j_attempt(S, sample_transform(2, f"{seed}:Jx:{i}", bound))
            if s2 is None:
                rejected.append(c2)
                continue
            same = s2.content == split.content
            cert = GenericityCertificate(
                cert.conditions + (Check("content agrees with an independent L'", same,
                                         f"L' rows {c2.L.to_lists()}"),), cert.L)
            if not same:
                raise CertificationError("contents disagree between two certified transforms", rejected + [cert])
            break
        else:
            raise CertificationError("no second transform passed for the cross-check", rejected)
    return split, cert, rejected


def v_content(S: RationalMap, L: ProjTransform | None = None):
    d = S.degree
    V1, V2 = build_V(S, L)
    checks = [Check("deg_t3 V1 = deg_t3 V2 = deg S", V1.degree("t3") == d and V2.degree("t3") == d,
                    f"{V1.degree('t3')}, {V2.degree('t3')}")]
    if not checks[0].passed:
        raise CertificationError("V polynomials drop degree", [GenericityCertificate(tuple(checks), L)])
    R = resultant(V1, V2, "t3", homogeneous=True)
    checks.append(Check("Res_t3(V1, V2) != 0", bool(R.terms), f"{len(R)} terms"))
    if not R.terms:
        raise CertificationError("V resultant vanished", [GenericityCertificate(tuple(checks), L)])
    return content_split(R, "x y"), GenericityCertificate(tuple(checks), L)


def mult_base_locus_plane(S: RationalMap, path: str = "J", L: ProjTransform | None = None, trials: int = 25,
                          seed=0, validate: bool = False, attribute: bool = True, cross_check: bool = True,
                          bound: int = 10) -> PlaneMapReport:
    """Base-locus multiplicity, degMap and birationality of a normalized plane map."""
    path = path.upper()
    if path not in ("V", "J"):
        raise ValueError("path must be V or J")
    if not satisfies_hypotheses(S):
        raise HypothesisError("input is not normalized (components must be non-zero at (0:0:1))")
    if S.gcd().gens:
        raise HypothesisError("components are not coprime")
    d = S.degree
    rejected: list = []
    if path == "J":
        split, cert, rejected = certified_j_content(S, L, trials, seed, cross_check, bound)
    else:
        split, cert = v_content(S, L)
    if validate:
        other = v_content(S)[0] if path == "J" else certified_j_content(S, None, trials, seed, False, bound)[0]
        cert = GenericityCertificate(
            cert.conditions + (Check("V and J contents agree", other.content == split.content,
                                     format_poly(other.content)),), cert.L)
        if not cert.passed:
            raise CertificationError("V and J contents disagree", rejected + [cert])
    mult = degree_in_block(split.content, T_VARS)
    prim = degree_in_block(split.primpart, T_VARS)
    degmap = d * d - mult
    cert = GenericityCertificate(
        cert.conditions
        + (Check("content degree + primpart degree = deg(S)^2", mult + prim == d * d, f"{mult} + {prim} vs {d * d}"),
           Check("degMap = deg^2 - mult >= 1", degmap >= 1, str(degmap))),
        cert.L)
    if degmap < 1:
        raise NotDominantError(f"deg^2 - mult = {degmap} < 1: not dominant or upstream failure")
    if not cert.passed:
        raise CertificationError("degree split failed", rejected + [cert])
    points: tuple = ()
    residual = mult
    if attribute and mult > 0:
        def content_fn(Q, sub_seed):
            if path == "J":
                return certified_j_content(Q, None, trials, sub_seed, False, bound)[0].content
            return v_content(Q)[0].content

        points, residual, _ = attribute_points(S, split.content, seed=seed, trials=trials, bound=bound,
                                               content_fn=content_fn)
    return PlaneMapReport(d, mult, degmap, degmap == 1, split.content, prim, points, residual, cert, path, seed,
                          tuple(rejected))


def degmap_plane(S: RationalMap, **kwargs) -> int:
    """``deg(S)^2 - mult(B(S))``; raises when the result is below 1."""
    return mult_base_locus_plane(S, attribute=False, **kwargs).degmap


def is_birational(S: RationalMap, **kwargs) -> bool:
    return degmap_plane(S, **kwargs) == 1


# --------------------------------------------------------------------------
# associated surface


def associated_surface_param(S: RationalMap, degmap: int | None = None) -> ParamSurface:
    """``(s1 : s2 : s2 : s3)``, a parametrization of the plane ``u2 = u3``."""
    s1, s2, s3 = S.comps
    return ParamSurface((s1, s2, s2, s3), certificate=S.certificate, degmap=degmap, surface_degree=1,
                        meta_source="associated surface of a plane map: image is the plane u2 = u3")


@dataclass(frozen=True)
class AssociatedCheck:
    same_base_points: bool
    mult_plane: int
    mult_surface: int
    content_plane: MPoly
    content_surface: MPoly

    @property
    def passed(self) -> bool:
        return (self.same_base_points and self.mult_plane == self.mult_surface
                and self.content_plane == self.content_surface)


def check_associated_surface(S: RationalMap, seed=0, trials: int = 25) -> AssociatedCheck:
    """Compare base loci of ``S`` and of its associated surface."""
    P = associated_surface_param(S)
    same = set(P.comps) == set(S.comps)
    rs = mult_base_locus_plane(S, seed=seed, trials=trials, attribute=False)
    rp = mult_base_locus(P, seed=seed, trials=trials, attribute=False)
    return AssociatedCheck(same, rs.mult_total, rp.mult_total, rs.content, rp.content)


# --------------------------------------------------------------------------
# irreducibility of the J curves and their parametrization


def check_J_irreducible(S: RationalMap, L: ProjTransform | None = None) -> tuple[bool, bool]:
    """Irreducibility of ``J1`` and ``J2`` over the algebraic closure of Q(x).

    ``J1 = x3 c1 - x1 c3`` is linear in the coefficients; by Gauss's lemma a
    factorization must have a factor free of x, which then divides both
    ``c1`` and ``c3``.  Hence ``J1`` is irreducible exactly when
    ``gcd(c1, c3) = 1`` (gcds do not change under field extension), and the
    test is exact rather than conservative.  ``c1`` and ``c3`` cannot be
    proportional because the components of a dominant map are linearly
    independent.
    """
    c = L.apply_forms(S.comps) if L is not None else list(S.comps)
    return (not gcd_multi(c[0], c[2]).gens, not gcd_multi(c[1], c[2]).gens)


def _check_inverse(S: RationalMap, L: ProjTransform | None, Rinv: Sequence[MPoly]):
    c = L.apply_forms(S.comps) if L is not None else list(S.comps)
    sub = dict(zip(T_VARS, Rinv))
    comp = [substitute(ci, sub) for ci in c]
    t = [MPoly.var(v) for v in T_VARS]
    if all(not x.terms for x in comp):
        raise InverseError("(L o S) o Rinv is identically zero")
    for i in range(3):
        for j in range(i + 1, 3):
            if (comp[i] * t[j] - comp[j] * t[i]).terms:
                raise InverseError("(L o S) o Rinv is not the identity up to a common factor")


def j_parametrizations(Rinv: Sequence[MPoly]):
    """The homogenized substitutions parametrizing the two J curves.

    For the first curve ``t = Rinv(x1, h1, x3)``, for the second
    ``t = Rinv(h1, x2, x3)``; each triple is homogenized in ``h1`` with
    ``h2`` to the largest ``h1``-degree among its entries so that the
    three entries stay proportional.
    """
    out = []
    for point in (("x1", "h1", "x3"), ("h1", "x2", "x3")):
        sub = {t: MPoly.var(v) for t, v in zip(T_VARS, point)}
        raw = [substitute(r, sub) for r in Rinv]
        top = max(r.degree("h1") for r in raw if r.terms)
        out.append(tuple(homogenize(r, ("h1",), "h2", top) if r.terms else r for r in raw))
    return out


def verify_inverse_parametrizes_J(S: RationalMap, L: ProjTransform | None, Rinv: Sequence) -> bool:
    """True iff ``J_i(Jcal_i(h1, h2))`` vanishes identically for both curves.

    ``Rinv`` must be the inverse of ``L o S`` (checked first).
    """
    from .polycore import as_poly

    Rinv = [as_poly(r) for r in Rinv]
    _check_inverse(S, L, Rinv)
    J1, J2 = build_J(S, L)
    par1, par2 = j_parametrizations(Rinv)
    e1 = substitute(J1, dict(zip(T_VARS, par1)))
    e2 = substitute(J2, dict(zip(T_VARS, par2)))
    return not e1.terms and not e2.terms


# --------------------------------------------------------------------------
# resultant formula for degMap


def formula_ratios(S: RationalMap, degmap: int, L: ProjTransform | None = None, trials: int = 25, seed=0):
    """The four quotients of the resultant-based degMap formula.

    With V (any ``L``) and J (certified ``L``):
    ``(d^2 - deg Content) / degMap`` and ``deg Primpart / degMap``.
    Each should equal 1.
    """
    d = S.degree
    sv, _ = v_content(S, L)
    sj, _, _ = certified_j_content(S, None, trials, seed, False)
    out = {}
    for name, split in (("V", sv), ("J", sj)):
        out[f"{name}_content"] = Fraction(d * d - degree_in_block(split.content, T_VARS), degmap)
        out[f"{name}_primpart"] = Fraction(degree_in_block(split.primpart, T_VARS), degmap)
    return out


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneMapAnalysis:
    original: PlaneMap
    normalized: PlaneMap
    ell: ProjTransform
    report: PlaneMapReport
    points_original: tuple

    def to_json(self) -> dict:
        out = self.report.to_json()
        out["normalization"] = {
            "ell": self.ell.to_lists(),
            "certificate": self.normalized.certificate.to_json() if self.normalized.certificate else [],
        }
        out["rational_points_original"] = [
            {"point": [str(c) for c in p.point], "multiplicity": p.multiplicity} for p in self.points_original
        ]
        return out


def analyze_plane_map(S: PlaneMap, path: str = "J", seed=0, trials: int = 25, validate: bool = False,
                      bound: int = 10) -> PlaneMapAnalysis:
    from .baselocus import _primitive_point, point_curve_multiplicity, tangent_cone

    norm = normalize_hypotheses(S, seed=seed, bound=bound)
    rep = mult_base_locus_plane(norm.obj, path=path, seed=seed, trials=trials, validate=validate, bound=bound)
    back = []
    for bp in rep.rational_points:
        q = _primitive_point(norm.ell.apply_point(bp.point))
        back.append(BasePoint(q, bp.multiplicity, point_curve_multiplicity(S, q), tangent_cone(S, q)))
    return PlaneMapAnalysis(S, norm.obj, norm.ell, rep, tuple(back))
