"""Reparametrizations ``P = Q o S`` of a surface parametrization ``Q`` by a
plane map ``S``: common factor, degrees, and how the base-locus
multiplicities of ``P``, ``Q`` and ``S`` relate."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .baselocus import (
    CertificationError,
    ParamSurface,
    SurfaceAnalysis,
    analyze_surface,
    certified_k_content,
)
from .planemaps import (
    PlaneMap,
    PlaneMapAnalysis,
    NotDominantError,
    analyze_plane_map,
    certified_j_content,
)
from .polycore import MPoly, ONE, divexact, format_poly, gcd_list, normalize, substitute
from .transform import (
    SHIFT,
    T_VARS,
    HypothesisError,
    ProjTransform,
    apply_param,
    sample_star_transform,
    satisfies_hypotheses,
)


class MissingMetadataError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Composition:
    raw: tuple
    h: MPoly
    P: ParamSurface
    deg_Q: int
    deg_S: int

    @property
    def deg_P(self) -> int:
        return self.P.degree


def compose(Q: ParamSurface, S: PlaneMap) -> Composition:
    """``p_i = q_i(s1, s2, s3)``, their gcd ``h`` and the reduced ``P``."""
    if not isinstance(S, PlaneMap):
        S = PlaneMap(tuple(S.comps))  # checks dominance
    sub = dict(zip(T_VARS, S.comps))
    raw = tuple(substitute(q, sub) for q in Q.comps)
    h = gcd_list(raw)
    comps = tuple(divexact(p, h) if p.terms else p for p in raw)
    P = ParamSurface(comps, degmap=None, surface_degree=Q.surface_degree,
                     meta_source="image surface shared with Q")
    return Composition(raw, h, P, Q.degree, S.degree)


@dataclass(frozen=True)
class CompositionReport:
    composition: Composition
    surface_degree: int
    degmap_Q: int
    mult_P: int
    mult_Q: int
    mult_S: int
    degmap_S: int
    statements: tuple
    ineq_degree: bool
    ineq_mult: bool
    degree_mult_identity: bool
    analyses: dict = field(default_factory=dict, compare=False)

    @property
    def rhs(self) -> int:
        c = self.composition
        return c.deg_S ** 2 * self.mult_Q + self.surface_degree * self.degmap_Q * self.mult_S

    @property
    def statements_agree(self) -> bool:
        return len(set(self.statements)) == 1

    def to_json(self) -> dict:
        c = self.composition
        return {
            "raw": [format_poly(p) for p in c.raw],
            "h": format_poly(c.h),
            "P": [format_poly(p) for p in c.P.comps],
            "deg_P": c.deg_P,
            "deg_Q": c.deg_Q,
            "deg_S": c.deg_S,
            "deg_Q_times_deg_S": c.deg_Q * c.deg_S,
            "mult_P": self.mult_P,
            "mult_Q": self.mult_Q,
            "mult_S": self.mult_S,
            "degmap_S": self.degmap_S,
            "surface_degree": self.surface_degree,
            "degmap_Q": self.degmap_Q,
            "rhs": self.rhs,
            "statements": {
                "gcd_is_one": self.statements[0],
                "degree_multiplies": self.statements[1],
                "mult_equality": self.statements[2],
            },
            "statements_agree": self.statements_agree,
            "ineq_degree": self.ineq_degree,
            "ineq_mult": self.ineq_mult,
            "degree_mult_identity": self.degree_mult_identity,
            "sources": {
                "h": "gcd of q_i(s1, s2, s3)",
                "deg_P": "deg(Q) deg(S) - deg(h)",
                "mult_P": "K path on the normalized reduced composition",
                "mult_Q": "K path on the normalized Q",
                "mult_S": "J path on the normalized S",
                "degmap_S": "deg(S)^2 - mult_S",
                "surface_degree": "metadata",
                "degmap_Q": "metadata",
                "rhs": "deg(S)^2 mult_Q + surface_degree degmap_Q mult_S",
            },
        }


def _metadata(Q: ParamSurface, surface_degree, degmap_q):
    sd = surface_degree if surface_degree is not None else Q.surface_degree
    dm = degmap_q if degmap_q is not None else Q.degmap
    if sd is None or dm is None:
        raise MissingMetadataError("surface degree and degMap of Q are required")
    return sd, dm


def composition_report(Q: ParamSurface, S: PlaneMap, surface_degree: int | None = None,
                      degmap_q: int | None = None, seed=0, trials: int = 25) -> CompositionReport:
    """Evaluate the three equivalent conditions for ``P = Q o S`` separately.

    The conditions are ``gcd(p_i) = 1``, ``deg P = deg Q deg S`` and
    ``mult(B(P)) = deg(S)^2 mult(B(Q)) + deg(surface) degMap(Q) mult(B(S))``.
    """
    sd, dm = _metadata(Q, surface_degree, degmap_q)
    comp = compose(Q, S)
    aP = analyze_surface(comp.P, seed=seed, trials=trials)
    aQ = analyze_surface(Q, seed=seed, trials=trials)
    aS = analyze_plane_map(S, seed=seed, trials=trials)
    mP, mQ, mS = aP.report.mult_total, aQ.report.mult_total, aS.report.mult_total
    nQ, nS, nP = comp.deg_Q, comp.deg_S, comp.deg_P
    rhs = nS ** 2 * mQ + sd * dm * mS
    statements = (not comp.h.gens, nP == nQ * nS, mP == rhs)
    return CompositionReport(
        composition=comp,
        surface_degree=sd,
        degmap_Q=dm,
        mult_P=mP,
        mult_Q=mQ,
        mult_S=mS,
        degmap_S=aS.report.degmap,
        statements=statements,
        ineq_degree=nP <= nQ * nS,
        ineq_mult=mP <= rhs,
        degree_mult_identity=(nP ** 2 - nQ ** 2 * nS ** 2) == mP - rhs,
        analyses={"P": aP, "Q": aQ, "S": aS},
    )


@dataclass(frozen=True)
class NoBasePointVerdict:
    applicable: bool
    gcd_trivial: bool | None = None
    degree_multiplies: bool | None = None
    mult_formula: bool | None = None

    @property
    def passed(self) -> bool:
        return (not self.applicable) or bool(self.gcd_trivial and self.degree_multiplies and self.mult_formula)


def check_no_base_points_Q(report: CompositionReport) -> NoBasePointVerdict:
    """Consequences of ``B(Q)`` being empty; "not applicable" otherwise."""
    if report.mult_Q != 0:
        return NoBasePointVerdict(False)
    c = report.composition
    return NoBasePointVerdict(
        True,
        gcd_trivial=not c.h.gens,
        degree_multiplies=c.deg_P == c.deg_Q * c.deg_S,
        mult_formula=report.mult_P == report.surface_degree * report.degmap_Q * report.mult_S,
    )


@dataclass(frozen=True)
class ContentPowerReport:
    holds: bool
    degree_holds: bool
    exponent: int
    content_P: MPoly
    content_S: MPoly
    ell: ProjTransform

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "degree_holds": self.degree_holds,
            "exponent": self.exponent,
            "content_P": format_poly(self.content_P),
            "content_S": format_poly(self.content_S),
            "ell": self.ell.to_lists(),
        }


def content_power_check(Q: ParamSurface, S: PlaneMap, surface_degree: int | None = None,
                        degmap_q: int | None = None, seed=0, trials: int = 25,
                        mult_Q: int | None = None, max_tries: int = 50) -> ContentPowerReport:
    """Compare the K content of ``P`` with the J content of ``S`` raised to
    ``deg(surface) * degMap(Q)``, both computed after one common
    reparametrization ``ell``."""
    sd, dm = _metadata(Q, surface_degree, degmap_q)
    if mult_Q is None:
        mult_Q = analyze_surface(Q, seed=seed, trials=trials).report.mult_total
    if mult_Q != 0:
        raise PreconditionError("Q has base points")
    comp = compose(Q, S)
    if comp.h.gens:
        raise PreconditionError("Q o S has a common factor although Q has no base points")
    cands = [ProjTransform.identity(2), SHIFT] + [sample_star_transform(2, f"{seed}:cp:{i}") for i in range(max_tries)]
    for ell in cands:
        S1 = apply_param(ell, S)
        P1 = apply_param(ell, comp.P)
        if satisfies_hypotheses(S1) and satisfies_hypotheses(P1):
            break
    else:
        raise HypothesisError("no common normalization found")
    cP = certified_k_content(P1, None, trials, seed)[0].content
    cS = certified_j_content(S1, None, trials, seed)[0].content
    e = sd * dm
    holds = cP == normalize(cS ** e)
    deg = lambda f: 0 if not f.gens else max(sum(x) for x in f.terms)
    return ContentPowerReport(holds, deg(cP) == e * deg(cS), e, cP, cS, ell)


# --------------------------------------------------------------------------


def monomial_plane_maps(degree: int = 2):
    """Dominant monomial maps of the given degree, in a fixed order."""
    t = [MPoly.var(v) for v in T_VARS]
    monos = []
    for combo in combinations_with_replacement(range(3), degree):
        m = ONE
        for i in combo:
            m = m * t[i]
        monos.append(m)
    for a, b, c in _triples(len(monos)):
        try:
            yield PlaneMap((monos[a], monos[b], monos[c]))
        except Exception:
            continue


def _triples(n):
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if len({a, b, c}) == 3:
                    yield a, b, c


def find_converse_witness(Q: ParamSurface, candidates=None, seed=0, trials: int = 25):
    """Search a non-linear ``S`` with ``gcd(q_i(S)) = 1`` although ``B(Q)`` is non-empty.

    Returns ``(S, composition)`` or ``None``.  Candidates are tried in order;
    the default list is the squaring map followed by monomial maps of degree 2.
    """
    mQ = analyze_surface(Q, seed=seed, trials=trials).report.mult_total
    if mQ == 0:
        return None
    if candidates is None:
        t = [MPoly.var(v) for v in T_VARS]
        candidates = [PlaneMap(tuple(v * v for v in t)), *monomial_plane_maps(2)]
    for S in candidates:
        if S.degree < 2:
            continue
        comp = compose(Q, S)
        if not comp.h.gens:
            return S, comp
    return None
