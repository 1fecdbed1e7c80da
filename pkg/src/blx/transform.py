"""Projective transformations of P^2 and P^3 and the normalization of maps
to the standing hypotheses (components non-zero at (0:0:1), last component
non-zero)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .polycore import (
    MPoly,
    ZERO,
    PolyError,
    as_poly,
    degree_in_block,
    format_poly,
    gcd_list,
    is_homogeneous_in_block,
    substitute,
)

T_VARS = ("t1", "t2", "t3")


class TransformError(PolyError):
    pass


class HypothesisError(PolyError):
    """Input cannot be brought into the standing hypotheses."""


class ConfigurationError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# matrices


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            r = M[i][k] / M[k][k]
            if r:
                M[i] = [a - r * b for a, b in zip(M[i], M[k])]
    return det


def _inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise TransformError("singular matrix")
        M[k], M[piv] = M[piv], M[k]
        p = M[k][k]
        M[k] = [x / p for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                r = M[i][k]
                M[i] = [a - r * b for a, b in zip(M[i], M[k])]
    return [row[n:] for row in M]


def _clean(x) -> int | Fraction:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class ProjTransform:
    """Invertible ``(k+1) x (k+1)`` rational matrix acting on P^k.

    Row ``i`` is the linear form ``L_i``; ``star`` marks the subgroup whose
    last row is ``(0, ..., 0, 1)``.
    """

    matrix: tuple
    k: int
    star: bool = False

    def __post_init__(self):
        rows = tuple(tuple(_clean(x) for x in r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = self.k + 1
        if self.k not in (2, 3) or len(rows) != n or any(len(r) != n for r in rows):
            raise TransformError(f"expected a {n}x{n} matrix for k={self.k}")
        if _det(rows) == 0:
            raise TransformError("matrix is singular")
        last = tuple([0] * self.k + [1])
        if self.star and rows[-1] != last:
            raise TransformError("star transforms need last row (0,...,0,1)")

    @classmethod
    def from_rows(cls, rows, star: bool | None = None) -> "ProjTransform":
        rows = tuple(tuple(_clean(x) for x in r) for r in rows)
        k = len(rows) - 1
        if star is None:
            star = rows[-1] == tuple([0] * k + [1])
        return cls(rows, k, star)

    @classmethod
    def identity(cls, k: int) -> "ProjTransform":
        return cls(tuple(tuple(int(i == j) for j in range(k + 1)) for i in range(k + 1)), k, True)

    @property
    def is_identity(self) -> bool:
        return self == ProjTransform.identity(self.k)

    def det(self) -> Fraction:
        return _det(self.matrix)

    def inverse(self) -> "ProjTransform":
        return ProjTransform.from_rows(_inverse(self.matrix))

    def compose(self, other: "ProjTransform") -> "ProjTransform":
        """Matrix product ``self @ other`` (apply ``other`` first)."""
        if self.k != other.k:
            raise TransformError("dimension mismatch")
        n = self.k + 1
        rows = [[sum(Fraction(self.matrix[i][l]) * other.matrix[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        return ProjTransform.from_rows(rows)

    def apply_point(self, point: Sequence) -> tuple:
        return tuple(_clean(sum(Fraction(a) * x for a, x in zip(row, point))) for row in self.matrix)

    def forms(self, names: Sequence[str]) -> list[MPoly]:
        """The linear forms ``L_i`` in the given variable names."""
        vs = [MPoly.var(v) for v in names]
        return [sum((v.scale(a) for v, a in zip(vs, row) if a), ZERO) for row in self.matrix]

    def apply_forms(self, polys: Sequence[MPoly]) -> list[MPoly]:
        """``L_i(p_1, ..., p_{k+1})`` for each row."""
        if len(polys) != self.k + 1:
            raise TransformError("dimension mismatch")
        return [sum((p.scale(a) for p, a in zip(polys, row) if a), ZERO) for row in self.matrix]

    def to_lists(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.matrix]


def _rng(seed, tag: str, attempt: int = 0) -> random.Random:
    return random.Random(f"{seed}:{tag}:{attempt}")


def sample_star_transform(k: int, seed, bound: int = 10, max_attempts: int = 1000) -> ProjTransform:
    """Random star transform with integer entries in ``[-bound, bound]``."""
    rng = _rng(seed, f"star{k}")
    for _ in range(max_attempts):
        rows = [[rng.randint(-bound, bound) for _ in range(k + 1)] for _ in range(k)]
        rows.append([0] * k + [1])
        if _det(rows) != 0:
            return ProjTransform(tuple(map(tuple, rows)), k, True)
    raise ConfigurationError("could not sample an invertible star transform")


def sample_transform(k: int, seed, bound: int = 10, max_attempts: int = 1000) -> ProjTransform:
    """Random element of the full projective group with small integer entries."""
    rng = _rng(seed, f"gen{k}")
    for _ in range(max_attempts):
        rows = [[rng.randint(-bound, bound) for _ in range(k + 1)] for _ in range(k + 1)]
        if _det(rows) != 0:
            return ProjTransform.from_rows(rows)
    raise ConfigurationError("could not sample an invertible transform")


# --------------------------------------------------------------------------
# rational maps


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class HypothesisCertificate:
    checks: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> list:
        return [c.to_json() for c in self.checks]


@dataclass(frozen=True)
class RationalMap:
    """Homogeneous components of common degree in t1, t2, t3 with gcd 1."""

    comps: tuple
    certificate: HypothesisCertificate | None = field(default=None, compare=False)

    arity = 0

    def __post_init__(self):
        comps = tuple(as_poly(c) for c in self.comps)
        object.__setattr__(self, "comps", comps)
        if self.arity and len(comps) != self.arity:
            raise HypothesisError(f"expected {self.arity} components, got {len(comps)}")
        nonzero = [c for c in comps if c.terms]
        if not nonzero:
            raise HypothesisError("all components are zero")
        for c in comps:
            if not set(c.gens) <= set(T_VARS):
                raise HypothesisError(f"component {format_poly(c)} uses variables outside t1,t2,t3")
            if not is_homogeneous_in_block(c, T_VARS):
                raise HypothesisError(f"component {format_poly(c)} is not homogeneous")
        degs = {degree_in_block(c, T_VARS) for c in nonzero}
        if len(degs) != 1:
            raise HypothesisError("components have different degrees")

    @property
    def degree(self) -> int:
        return next(degree_in_block(c, T_VARS) for c in self.comps if c.terms)

    def gcd(self) -> MPoly:
        return gcd_list(self.comps)

    def with_comps(self, comps) -> "RationalMap":
        return replace(self, comps=tuple(comps), certificate=None)

    def at(self, point: Sequence) -> tuple:
        sub = dict(zip(T_VARS, point))
        return tuple(substitute(c, sub).constant_value() if c.terms else 0 for c in self.comps)

    def strings(self) -> list[str]:
        return [format_poly(c) for c in self.comps]


def apply_left(L: ProjTransform, P: RationalMap) -> RationalMap:
    """Components ``L_i(p_1, ..., p_n)``."""
    if L.k + 1 != len(P.comps):
        raise TransformError("dimension mismatch")
    return P.with_comps(L.apply_forms(P.comps))


def apply_param(ell: ProjTransform, P: RationalMap) -> RationalMap:
    """Reparametrize: substitute ``t -> ell(t)`` in every component."""
    if ell.k != 2:
        raise TransformError("parameter transforms act on P^2")
    images = dict(zip(T_VARS, ell.forms(T_VARS)))
    return P.with_comps(substitute(c, images) for c in P.comps)


SHIFT = ProjTransform(((1, 0, 1), (0, 1, 1), (0, 0, 1)), 2, True)


@dataclass(frozen=True)
class Normalization:
    obj: RationalMap
    ell: ProjTransform
    left: ProjTransform | None
    certificate: HypothesisCertificate


def hypothesis_checks(P: RationalMap) -> list[Check]:
    vals = P.at((0, 0, 1))
    n = len(P.comps)
    checks = [Check(f"comp{i + 1}(0,0,1) != 0", v != 0, f"comp{i + 1}(0,0,1) = {v}") for i, v in enumerate(vals)]
    last = P.comps[-1]
    checks.append(Check(f"comp{n} != 0", bool(last.terms), format_poly(last)))
    return checks


def normalize_hypotheses(P: RationalMap, seed=0, bound: int = 10, max_tries: int = 50) -> Normalization:
    """Bring ``P`` into the standing hypotheses.

    Returns the normalized map, the parameter transform ``ell`` (so that the
    new map is ``P(ell(t))``, possibly after a left transform) and a
    certificate.  Candidates for ``ell`` are the identity, the unit
    translation ``(t1+t3, t2+t3, t3)`` and then seeded random star transforms.
    """
    g = P.gcd()
    if g.gens:
        raise HypothesisError(f"components share the factor {format_poly(g)}; divide it out first")
    n = len(P.comps)
    notes: list[Check] = []
    left = None
    comps = list(P.comps)
    if n == 4:
        if not comps[3].terms:
            j = max(i for i, c in enumerate(comps) if c.terms)
            rows = [[int(i == c) for c in range(4)] for i in range(4)]
            rows[j], rows[3] = rows[3], rows[j]
            left = ProjTransform.from_rows(rows)
            comps = left.apply_forms(comps)
            notes.append(Check("permute nonzero component into slot 4", True, f"swap 4 <-> {j + 1}"))
        if any(not c.terms for c in comps[:3]):
            rows = [[int(i == c) for c in range(4)] for i in range(4)]
            for i in range(3):
                if not comps[i].terms:
                    rows[i][3] = 1
                    notes.append(Check(f"comp{i + 1} := comp{i + 1} + comp4", True, "component was zero"))
            add = ProjTransform.from_rows(rows)
            comps = add.apply_forms(comps)
            left = add if left is None else add.compose(left)
    elif any(not c.terms for c in comps):
        raise HypothesisError("a zero component: the map is not dominant")
    base = P.with_comps(comps)

    candidates = [ProjTransform.identity(2), SHIFT]
    candidates += [sample_star_transform(2, f"{seed}:{i}", bound) for i in range(max_tries)]
    for ell in candidates[: max_tries + 2]:
        vals = [_eval_at(c, ell.apply_point((0, 0, 1))) for c in comps]
        if all(v != 0 for v in vals):
            out = base if ell.is_identity else apply_param(ell, base)
            checks = tuple(notes + hypothesis_checks(out))
            cert = HypothesisCertificate(checks)
            if not cert.passed:  # pragma: no cover - guarded by the evaluation above
                continue
            return Normalization(replace(out, certificate=cert), ell, left, cert)
    raise HypothesisError(f"no normalizing transform found in {max_tries} tries")


def _eval_at(c: MPoly, point) -> Fraction:
    return substitute(c, dict(zip(T_VARS, point))).constant_value()


def satisfies_hypotheses(P: RationalMap) -> bool:
    return all(c.passed for c in hypothesis_checks(P))
