"""Seeded random parametrizations and plane maps with known rational base points.

Base points are placed at coordinate points by restricting the monomial
support and then moved by a random projective change of coordinates, so the
true base points are known without running any of the multiplicity code.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .baselocus import ParamSurface
from .planemaps import NotDominantError, PlaneMap, _jacobian_det_at
from .polycore import MPoly, ZERO, gcd_list
from .transform import T_VARS, RationalMap, apply_param, sample_transform

COORD_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def monomials(n: int):
    return [(a, b, n - a - b) for a in range(n, -1, -1) for b in range(n - a, -1, -1)]


def _mono(e) -> MPoly:
    return MPoly.monomial(dict(zip(T_VARS, e)))


def allowed_support(n: int, orders: dict) -> list:
    """Monomials of degree ``n`` vanishing to order ``orders[i]`` at the i-th coordinate point."""
    out = []
    for e in monomials(n):
        # order at e_i of a monomial is the degree in the other two variables
        if all(n - e[i] >= k for i, k in orders.items()):
            out.append(e)
    return out


def _random_form(rng: random.Random, support, bound: int) -> MPoly:
    f = ZERO
    for e in support:
        c = rng.randint(-bound, bound)
        if c:
            f = f + _mono(e).scale(c)
    return f


@dataclass(frozen=True)
class SurfaceInstance:
    P: ParamSurface
    base_points: tuple
    seed: object


@dataclass(frozen=True)
class PlaneInstance:
    S: PlaneMap
    base_points: tuple
    seed: object
    kind: str


def _is_surface(comps, rng) -> bool:
    """Rank of the 4x3 Jacobian at a random point is 3."""
    pt = [rng.randint(-20, 20) for _ in range(3)]
    rows = []
    for c in comps:
        sub = dict(zip(T_VARS, pt))
        rows.append([c.diff(v).substitute(sub).constant_value() for v in T_VARS])
    return sympy.Matrix(rows).rank() == 3


def random_surface(seed, max_degree: int = 3, bound: int = 3) -> SurfaceInstance:
    rng = random.Random(f"surface:{seed}")
    for attempt in range(200):
        n = rng.randint(1, max_degree)
        orders = {}
        if n > 1:
            for i in range(3):
                if rng.random() < 0.6:
                    orders[i] = rng.randint(1, n - 1)
        support = allowed_support(n, orders)
        if len(support) < 3:
            continue
        comps = [_random_form(rng, support, bound) for _ in range(4)]
        if any(not c.terms for c in comps) or gcd_list(comps).gens or not _is_surface(comps, rng):
            continue
        ell = sample_transform(2, f"surface:{seed}:{attempt}", bound=3)
        moved = apply_param(ell, RationalMap(tuple(comps)))
        inv = ell.inverse()
        pts = tuple(_scaled(inv.apply_point(COORD_POINTS[i])) for i in sorted(orders))
        return SurfaceInstance(ParamSurface(moved.comps), pts, seed)
    raise RuntimeError("no random surface found")


def _scaled(pt) -> tuple:
    """Primitive integer representative of a projective point."""
    den = math.lcm(*(Fraction(c).denominator for c in pt))
    ints = [int(Fraction(c) * den) for c in pt]
    g = math.gcd(*ints)
    return tuple(c // g for c in ints)


# --------------------------------------------------------------------------
# plane maps


def _dominant(comps, rng) -> bool:
    return any(_jacobian_det_at(comps, [rng.randint(-20, 20) for _ in range(3)]) != 0 for _ in range(3))


def linear_system(n: int, orders: dict, points=()) -> list[MPoly]:
    """Basis of degree-``n`` forms with the given orders at coordinate points
    that also vanish at the extra ``points``."""
    support = allowed_support(n, orders)
    if not points:
        return [_mono(e) for e in support]
    M = sympy.Matrix([[sympy.Integer(p[0]) ** e[0] * p[1] ** e[1] * p[2] ** e[2] for e in support] for p in points])
    basis = []
    for v in M.nullspace():
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
        f = ZERO
        for e, x in zip(support, v):
            x = int(x * den)
            if x:
                f = f + _mono(e).scale(x)
        basis.append(f)
    return basis


def _combine(rng, basis, k: int, bound: int):
    return [sum((b.scale(rng.randint(-bound, bound)) for b in basis), ZERO) for _ in range(k)]


def de_jonquieres(seed) -> PlaneInstance:
    """Cubic Cremona map: double point at (0:0:1), four simple points."""
    rng = random.Random(f"dj:{seed}")
    for _ in range(100):
        pts = [(rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(4)]
        basis = linear_system(3, {2: 2}, pts)
        if len(basis) != 3:
            continue
        try:
            S = PlaneMap(tuple(basis))
        except NotDominantError:
            continue
        if gcd_list(S.comps).gens:
            continue
        return PlaneInstance(S, ((0, 0, 1), *pts), seed, "de-jonquieres")
    raise RuntimeError("no cubic Cremona map found")


PLANE_KINDS = ("generic", "base-points", "cremona", "de-jonquieres")


def random_plane_map(seed: int, max_degree: int = 3, bound: int = 3) -> PlaneInstance:
    """A dominant plane map of degree at most ``max_degree``.

    The kind cycles with the seed: generic, monomial-restricted base points,
    quadratic Cremona conjugated by random transformations, and cubic
    de Jonquieres maps.
    """
    rng = random.Random(f"plane:{seed}")
    kind = PLANE_KINDS[seed % len(PLANE_KINDS)]
    if kind == "de-jonquieres":
        return de_jonquieres(seed)
    for attempt in range(200):
        if kind == "cremona":
            comps = [_mono(e) for e in ((0, 1, 1), (1, 0, 1), (1, 1, 0))]
            orders = {0: 1, 1: 1, 2: 1}
        else:
            n = rng.randint(1, max_degree)
            orders = {}
            if kind == "base-points" and n > 1:
                for i in range(3):
                    if rng.random() < 0.7:
                        orders[i] = rng.randint(1, n - 1)
            comps = _combine(rng, linear_system(n, orders), 3, bound)
        if any(not c.terms for c in comps) or gcd_list(comps).gens or not _dominant(comps, rng):
            continue
        ell = sample_transform(2, f"plane:{seed}:{attempt}", bound=3)
        left = sample_transform(2, f"plane-left:{seed}:{attempt}", bound=3)
        moved = apply_param(ell, RationalMap(tuple(left.apply_forms(comps))))
        inv = ell.inverse()
        pts = tuple(_scaled(inv.apply_point(COORD_POINTS[i])) for i in sorted(orders))
        return PlaneInstance(PlaneMap(moved.comps), pts, seed, kind)
    raise RuntimeError("no random plane map found")

