"""Sparse multivariate polynomials with exact rational coefficients.

Every polynomial lives on a fixed, closed universe of variables split into
blocks: parameters ``t1..t3``, generic coefficients ``x1..x4`` and ``y1..y4``,
transformation entries ``z11..z33``, auxiliary ``h1, h2`` and ambient
coordinates ``u1..u4``.  Terms are stored in a dict keyed by exponent tuples
over the variables that actually occur, so two equal polynomials are
structurally equal.  Coefficients are ``int`` whenever integral and
``fractions.Fraction`` otherwise; there is no floating point anywhere.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from math import gcd as igcd
from operator import add, sub
from typing import Iterable, Iterator, Mapping, Sequence, Union

UNIVERSE: tuple[str, ...] = (
    "t1", "t2", "t3",
    "x1", "x2", "x3", "x4",
    "y1", "y2", "y3", "y4",
    *(f"z{i}{j}" for i in range(1, 4) for j in range(1, 4)),
    "h1", "h2",
    "u1", "u2", "u3", "u4",
)
_POS = {name: i for i, name in enumerate(UNIVERSE)}

BLOCKS: dict[str, tuple[str, ...]] = {
    "t": ("t1", "t2", "t3"),
    "x": ("x1", "x2", "x3", "x4"),
    "y": ("y1", "y2", "y3", "y4"),
    "z": tuple(f"z{i}{j}" for i in range(1, 4) for j in range(1, 4)),
    "h": ("h1", "h2"),
    "u": ("u1", "u2", "u3", "u4"),
}

Coeff = Union[int, Fraction]


class PolyError(ValueError):
    pass


class PolySyntaxError(PolyError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class UnknownVariableError(PolyError):
    pass


class NotDivisibleError(ArithmeticError):
    pass


class _NegInfDegree:
    """Degree of the zero polynomial.

    Compares below every integer but refuses arithmetic, so a zero degree
    can never leak into a sum or product unnoticed.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INF_DEGREE")

    def _refuse(self, *args):
        raise TypeError("arithmetic on the degree of the zero polynomial")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse
    __neg__ = __int__ = __index__ = _refuse


NEG_INF = _NegInfDegree()


def block(*names: str) -> frozenset[str]:
    """Resolve block letters and/or variable names to a set of variables.

    ``block("x", "y")`` is the union of the x and y blocks; ``block("t1", "t2")``
    is just those two variables.  Comma separated strings are accepted.
    """
    out: set[str] = set()
    for item in names:
        for name in str(item).replace(",", " ").split():
            if name in BLOCKS:
                out.update(BLOCKS[name])
            elif name in _POS:
                out.add(name)
            else:
                raise UnknownVariableError(f"unknown variable or block {name!r}")
    return frozenset(out)


def _as_block(B) -> frozenset[str]:
    if isinstance(B, frozenset):
        return B
    if isinstance(B, str):
        return block(B)
    return block(*B)


def _norm_coeff(c) -> Coeff:
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):  # bool and int subclasses
        return int(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _sorted_gens(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_POS.__getitem__))


def _embed(gens: tuple[str, ...], terms: dict, target: tuple[str, ...]) -> dict:
    if gens == target:
        return terms
    n = len(target)
    idx = [target.index(g) for g in gens]
    out = {}
    for e, c in terms.items():
        v = [0] * n
        for i, k in zip(idx, e):
            v[i] = k
        out[tuple(v)] = c
    return out


def _make(gens: tuple[str, ...], terms: dict) -> "MPoly":
    """Build a polynomial, dropping variables that no longer occur."""
    if not terms:
        return MPoly((), {})
    if gens:
        used = [any(col) for col in zip(*terms)]
        if not all(used):
            keep = [i for i, u in enumerate(used) if u]
            gens = tuple(gens[i] for i in keep)
            merged: dict = {}
            for e, c in terms.items():
                merged[tuple(e[i] for i in keep)] = c
            terms = merged
    return MPoly(gens, terms)


class MPoly:
    """Immutable sparse polynomial over Q.

    Use :meth:`constant`, :meth:`var`, :func:`parse_poly` or arithmetic to
    build instances; the raw constructor trusts its input.
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: tuple[str, ...], terms: dict):
        self.gens = gens
        self.terms = terms
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def constant(cls, c) -> "MPoly":
        c = _norm_coeff(c)
        return cls((), {(): c}) if c else cls((), {})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        if name not in _POS:
            raise UnknownVariableError(f"unknown variable {name!r}")
        return cls((name,), {(1,): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "MPoly":
        return cls.from_terms({tuple(sorted(exps.items())): coeff})

    @classmethod
    def from_terms(cls, items: Mapping) -> "MPoly":
        """Build from ``{((var, exp), ...): coeff}``."""
        names = _sorted_gens(v for key in items for v, _ in key)
        for v in names:
            if v not in _POS:
                raise UnknownVariableError(f"unknown variable {v!r}")
        pos = {g: i for i, g in enumerate(names)}
        terms: dict = {}
        for key, c in items.items():
            e = [0] * len(names)
            for v, k in key:
                if k < 0:
                    raise PolyError("negative exponent")
                e[pos[v]] += k
            e = tuple(e)
            c = terms.get(e, 0) + _norm_coeff(c)
            if c:
                terms[e] = _norm_coeff(c)
            else:
                terms.pop(e, None)
        return _make(names, terms)

    # basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.gens

    def constant_value(self) -> Coeff:
        if self.gens:
            raise PolyError("polynomial is not constant")
        return self.terms.get((), 0)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(self.gens)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[tuple[dict, Coeff]]:
        """Terms in canonical (graded lex, descending) order as ``({var: exp}, coeff)``."""
        for e in self._ordered_exps():
            yield {g: k for g, k in zip(self.gens, e) if k}, self.terms[e]

    def _ordered_exps(self) -> list:
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    def leading_term(self) -> tuple[tuple, Coeff]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def leading_coefficient(self) -> Coeff:
        return self.leading_term()[1]

    def degree(self, var: str):
        if not self.terms:
            return NEG_INF
        if var not in self.gens:
            return 0
        i = self.gens.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    # equality / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _lift(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(other)
        return NotImplemented

    def _unify(self, other: "MPoly"):
        if self.gens == other.gens:
            return self.gens, self.terms, other.terms
        gens = _sorted_gens(self.gens + other.gens)
        return gens, _embed(self.gens, self.terms, gens), _embed(other.gens, other.terms, gens)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        gens, ta, tb = self._unify(other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return _make(gens, _normalize_all(out))

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        if not other.gens:
            return self.scale(other.terms[()])
        if not self.gens:
            return other.scale(self.terms[()])
        gens, ta, tb = self._unify(other)
        if len(ta) < len(tb):
            ta, tb = tb, ta
        return MPoly(gens, _normalize_all(_mul_terms(ta, tb)))

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = _norm_coeff(c)
        if not c or not self.terms:
            return ZERO
        if c == 1:
            return self
        return MPoly(self.gens, {e: _norm_coeff(v * c) for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        if isinstance(other, MPoly):
            return divexact(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus / structure -----------------------------------------------

    def diff(self, var: str) -> "MPoly":
        if var not in self.gens:
            return ZERO
        i = self.gens.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return _make(self.gens, out)

    def coefficients_in(self, B) -> dict:
        """Split by monomials of block ``B``.

        Returns ``{block exponents: coefficient}`` where the key is a tuple of
        ``(var, exp)`` pairs (sorted) and the coefficient is an MPoly free of
        ``B``.
        """
        B = _as_block(B)
        inside = [i for i, g in enumerate(self.gens) if g in B]
        outside = [i for i, g in enumerate(self.gens) if g not in B]
        in_names = [self.gens[i] for i in inside]
        out_gens = tuple(self.gens[i] for i in outside)
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple((n, e[i]) for n, i in zip(in_names, inside) if e[i])
            groups.setdefault(key, {})[tuple(e[i] for i in outside)] = c
        return {k: _make(out_gens, v) for k, v in groups.items()}

    def to_univariate(self, var: str) -> list:
        """Dense coefficient list ``[c0, c1, ...]`` in ``var``; coefficients are MPolys."""
        if not self.terms:
            return []
        if var not in self.gens:
            return [self]
        i = self.gens.index(var)
        rest = self.gens[:i] + self.gens[i + 1:]
        buckets: dict = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        out = [ZERO] * (max(buckets) + 1)
        for k, t in buckets.items():
            out[k] = _make(rest, t)
        return out

    def substitute(self, mapping: Mapping[str, object]) -> "MPoly":
        return substitute(self, mapping)

    def __call__(self, **values) -> "MPoly":
        return substitute(self, values)

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _normalize_all(terms: dict) -> dict:
    for e, c in terms.items():
        if type(c) is not int:
            terms[e] = _norm_coeff(c)
    return terms


def _mul_terms(ta: dict, tb: dict) -> dict:
    # exponent vectors are packed into single integers so that the inner
    # loop adds machine-friendly ints instead of tuples
    nvars = len(next(iter(ta)))
    top = [0] * nvars
    for t in (ta, tb):
        for e in t:
            for i, k in enumerate(e):
                if k > top[i]:
                    top[i] = k
    shifts = []
    width = 0
    for i in range(nvars):
        shifts.append(width)
        width += (2 * top[i] + 1).bit_length()

    def pack(e):
        v = 0
        for k, sh in zip(e, shifts):
            v |= k << sh
        return v

    pb = [(pack(e), c) for e, c in tb.items()]
    out: dict = {}
    get = out.get
    for ea, ca in ta.items():
        ka = pack(ea)
        for kb, cb in pb:
            k = ka + kb
            s = get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    masks = [((1 << ((2 * top[i] + 1).bit_length())) - 1) for i in range(nvars)]
    return {
        tuple((k >> sh) & m for sh, m in zip(shifts, masks)): c for k, c in out.items()
    }


ZERO = MPoly((), {})
ONE = MPoly((), {(): 1})


def var(name: str) -> MPoly:
    return MPoly.var(name)


def const(c) -> MPoly:
    return MPoly.constant(c)


def as_poly(value) -> MPoly:
    if isinstance(value, MPoly):
        return value
    if isinstance(value, str):
        return parse_poly(value)
    return MPoly.constant(value)


# --------------------------------------------------------------------------
# block queries


def degree_in_block(f: MPoly, B):
    """Maximum total exponent over the variables of ``B``; ``NEG_INF`` for zero."""
    if not f.terms:
        return NEG_INF
    B = _as_block(B)
    idx = [i for i, g in enumerate(f.gens) if g in B]
    if not idx:
        return 0
    return max(sum(e[i] for i in idx) for e in f.terms)


def min_degree_in_block(f: MPoly, B):
    if not f.terms:
        return NEG_INF
    B = _as_block(B)
    idx = [i for i, g in enumerate(f.gens) if g in B]
    if not idx:
        return 0
    return min(sum(e[i] for i in idx) for e in f.terms)


def is_homogeneous_in_block(f: MPoly, B) -> bool:
    if not f.terms:
        return True
    B = _as_block(B)
    idx = [i for i, g in enumerate(f.gens) if g in B]
    degs = {sum(e[i] for i in idx) for e in f.terms}
    return len(degs) == 1


def homogeneous_part(f: MPoly, B, d: int) -> MPoly:
    B = _as_block(B)
    idx = [i for i, g in enumerate(f.gens) if g in B]
    return _make(f.gens, {e: c for e, c in f.terms.items() if sum(e[i] for i in idx) == d})


def homogenize(f: MPoly, B, h: str, d: int | None = None) -> MPoly:
    """Homogenize ``f`` in block ``B`` with the new variable ``h`` to degree ``d``."""
    B = _as_block(B)
    if h in B:
        raise PolyError("homogenizing variable must lie outside the block")
    if not f.terms:
        return ZERO
    top = degree_in_block(f, B)
    d = top if d is None else d
    if d < top:
        raise PolyError("target degree below the block degree")
    gens = _sorted_gens(f.gens + (h,))
    src = _embed(f.gens, f.terms, gens)
    idx = [i for i, g in enumerate(gens) if g in B]
    hi = gens.index(h)
    out = {}
    for e, c in src.items():
        v = list(e)
        v[hi] += d - sum(e[i] for i in idx)
        out[tuple(v)] = c
    return _make(gens, out)


# --------------------------------------------------------------------------
# substitution


def substitute(f: MPoly, mapping: Mapping[str, object]) -> MPoly:
    """Simultaneous substitution of variables by polynomials (or numbers).

    Variables of ``f`` missing from ``mapping`` are left alone.
    """
    images = {}
    for name, img in mapping.items():
        if name not in _POS:
            raise UnknownVariableError(f"unknown variable {name!r}")
        if name in f.gens:
            images[name] = as_poly(img)
    if not images or not f.terms:
        return f
    fixed = [g for g in f.gens if g not in images]
    moved = [g for g in f.gens if g in images]
    fi = [f.gens.index(g) for g in fixed]
    mi = [f.gens.index(g) for g in moved]
    fixed_gens = tuple(fixed)
    # group by the exponents of the substituted variables
    groups: dict = {}
    for e, c in f.terms.items():
        groups.setdefault(tuple(e[i] for i in mi), {})[tuple(e[i] for i in fi)] = c
    powers: dict = {g: [ONE] for g in moved}

    def power(g: str, k: int) -> MPoly:
        cache = powers[g]
        while len(cache) <= k:
            cache.append(cache[-1] * images[g])
        return cache[k]

    total = ZERO
    for key, rest in groups.items():
        term = _make(fixed_gens, rest)
        for g, k in zip(moved, key):
            if k:
                term = term * power(g, k)
        total = total + term
    return total


def evaluate(f: MPoly, point: Mapping[str, object]) -> MPoly:
    return substitute(f, point)


# --------------------------------------------------------------------------
# division


def divexact(f: MPoly, g: MPoly) -> MPoly:
    """Exact quotient ``f / g``; raises :class:`NotDivisibleError` otherwise."""
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f.terms:
        return ZERO
    if not g.gens:
        return f.scale(Fraction(1) / g.terms[()])
    if not set(g.gens) <= set(f.gens):
        raise NotDivisibleError("divisor has variables absent from the dividend")
    gens = f.gens
    rem = dict(f.terms)
    dv = _embed(g.gens, g.terms, gens)
    lead_e, lead_c = max(dv.items(), key=lambda it: (sum(it[0]), it[0]))
    rest = [(e, c) for e, c in dv.items() if e != lead_e]
    lead_is_int = type(lead_c) is int
    heap = [_neg_key(e) for e in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        key = heapq.heappop(heap)
        e = key[1]
        c = rem.get(e)
        if c is None:
            continue
        while heap and heap[0][1] == e:
            heapq.heappop(heap)
        m = tuple(map(sub, e, lead_e))
        if min(m) < 0:
            raise NotDivisibleError("polynomial division is not exact")
        if lead_is_int and type(c) is int and c % lead_c == 0:
            q = c // lead_c
        else:
            q = _norm_coeff(Fraction(c) / lead_c)
        quot[m] = q
        del rem[e]
        for de, dc in rest:
            ne = tuple(map(add, m, de))
            s = rem.get(ne, 0) - q * dc
            if s:
                if ne not in rem:
                    heapq.heappush(heap, _neg_key(ne))
                rem[ne] = _norm_coeff(s)
            else:
                rem.pop(ne, None)
    return _make(gens, quot)


def _neg_key(e: tuple):
    return ((-sum(e), tuple(-k for k in e)), e)


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        divexact(f, g)
    except NotDivisibleError:
        return False
    return True


# --------------------------------------------------------------------------
# normalization and gcd


def integer_content(f: MPoly) -> Fraction:
    """Positive rational ``c`` with ``f / c`` integral and integer-primitive."""
    if not f.terms:
        return Fraction(0)
    num = 0
    den = 1
    for c in f.terms.values():
        if type(c) is int:
            num = igcd(num, c)
        else:
            num = igcd(num, c.numerator)
            den = den * c.denominator // igcd(den, c.denominator)
    return Fraction(num, den)


def normalize(f: MPoly) -> MPoly:
    """Integer-primitive representative with positive leading coefficient."""
    if not f.terms:
        return f
    c = integer_content(f)
    if f.leading_coefficient() < 0:
        c = -c
    return f.scale(1 / c) if c != 1 else f


def pseudo_remainder(a: list, b: list) -> list:
    """Pseudo-remainder of dense univariate coefficient lists (MPoly entries)."""
    a = list(a)
    db = len(b) - 1
    lcb = b[-1]
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        lca = a[-1]
        shift = len(a) - 1 - db
        new = [x * lcb for x in a[:-1]]
        for i in range(db):
            if b[i].terms:
                new[shift + i] = new[shift + i] - lca * b[i]
        a = _strip(new)
        e -= 1
    if e > 0 and a:
        f = lcb ** e
        a = [x * f for x in a]
    return a


def _strip(coeffs: list) -> list:
    while coeffs and not coeffs[-1].terms:
        coeffs.pop()
    return coeffs


def _content_list(coeffs: Sequence[MPoly]) -> MPoly:
    g = ZERO
    for c in sorted((c for c in coeffs if c.terms), key=len):
        g = _gcd(g, c)
        if not g.gens:
            return ONE
    return g


def _gcd(f: MPoly, g: MPoly) -> MPoly:
    if not f.terms:
        return normalize(g)
    if not g.terms:
        return normalize(f)
    if not f.gens or not g.gens:
        return ONE
    if len(f.terms) == 1 or len(g.terms) == 1:
        return _gcd_with_monomial(f, g)
    shared = set(f.gens) & set(g.gens)
    if not shared:
        return ONE
    v = min(f.gens + g.gens, key=_POS.__getitem__)
    if v in shared:
        bounds = {u: _degree_bound(f, g, u) for u in sorted(shared, key=_POS.__getitem__)}
        if not any(bounds.values()):
            return ONE
        free = [u for u, b in bounds.items() if b == 0]
        if free:
            # the gcd does not involve u, so it divides every u-coefficient
            u = free[0]
            return _gcd(_content_list(f.to_univariate(u)), _content_list(g.to_univariate(u)))
        v = min(shared, key=lambda u: (bounds[u], _POS[u]))
    if v not in shared:
        # v occurs in one argument only: the gcd divides all its v-coefficients
        h = f if v in f.gens else g
        other = g if h is f else f
        for c in sorted((c for c in h.to_univariate(v) if c.terms), key=len):
            other = _gcd(other, c)
            if not other.gens:
                return ONE
        return other
    fa = f.to_univariate(v)
    gb = g.to_univariate(v)
    cf = _content_list(fa)
    cg = _content_list(gb)
    c = _gcd(cf, cg)
    a = [divexact(x, cf) for x in fa] if cf.gens else fa
    b = [divexact(x, cg) for x in gb] if cg.gens else gb
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = pseudo_remainder(a, b)
        if not r:
            break
        cr = _content_list(r)
        if cr.gens:
            r = [divexact(x, cr) for x in r]
        else:
            r = _scalar_primitive(r)
        a, b = b, r
    if len(b) <= 1:
        return c
    cb = _content_list(b)
    if cb.gens:
        b = [divexact(x, cb) for x in b]
    prim = _from_univariate(b, v)
    return normalize(c * prim)


def _degree_bound(f: MPoly, g: MPoly, v: str, tries: int = 3) -> int:
    """Upper bound for ``deg_v gcd(f, g)`` from a random specialization.

    With the other variables set to integers where the leading coefficient
    of ``f`` in ``v`` survives, the image of the gcd keeps its degree and
    divides the gcd of the images.
    """
    others = sorted((set(f.gens) | set(g.gens)) - {v})
    top = min(f.degree(v), g.degree(v))
    if not others:
        return top
    lc = f.to_univariate(v)[-1]
    rng = random.Random(f"deg-bound:{v}")
    for _ in range(tries):
        point = {u: rng.randint(-97, 97) for u in others}
        if not substitute(lc, point).terms:
            continue
        fi, gi = substitute(f, point), substitute(g, point)
        if not gi.terms:
            continue
        return min(top, _gcd(fi, gi).degree(v))
    return top


def _scalar_primitive(coeffs: list) -> list:
    c = Fraction(0)
    for x in coeffs:
        ic = integer_content(x)
        c = Fraction(igcd(c.numerator, ic.numerator), 1) if c else ic
    if c in (0, 1):
        return coeffs
    return [x.scale(1 / c) for x in coeffs]


def _gcd_with_monomial(f: MPoly, g: MPoly) -> MPoly:
    if len(g.terms) != 1:
        f, g = g, f
    (ge,) = g.terms
    mins = dict(zip(g.gens, ge))
    for e in f.terms:
        for name, k in zip(f.gens, e):
            if name in mins and k < mins[name]:
                mins[name] = k
        for name in list(mins):
            if name not in f.gens:
                mins[name] = 0
    return MPoly.monomial({n: k for n, k in mins.items() if k})


def _from_univariate(coeffs: Sequence[MPoly], v: str) -> MPoly:
    x = MPoly.var(v)
    total = ZERO
    xp = ONE
    for c in coeffs:
        if c.terms:
            total = total + c * xp
        xp = xp * x
    return total


def from_univariate(coeffs: Sequence, v: str) -> MPoly:
    return _from_univariate([as_poly(c) for c in coeffs], v)


def gcd_multi(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor by recursive primitive PRS, normalized."""
    return _gcd(f, g)


def gcd_list(polys: Iterable[MPoly]) -> MPoly:
    g = ZERO
    for p in sorted(polys, key=len):
        g = _gcd(g, p)
        if g.terms and not g.gens:
            return ONE
    return g


def primitive_part(f: MPoly) -> MPoly:
    return normalize(f)


# --------------------------------------------------------------------------
# text grammar


def parse_poly(text: str, variables=None) -> MPoly:
    """Parse ``+ - * / ^ ( )`` expressions with rational constants.

    ``variables`` optionally restricts the allowed variables (block letters or
    names, as for :func:`block`).  Division is only allowed by constants.
    """
    allowed = None if variables is None else _as_block(variables)
    return _Parser(text, allowed).parse()


class _Parser:
    def __init__(self, text: str, allowed):
        self.text = text
        self.allowed = allowed
        self.toks = list(self._tokenize(text))
        self.i = 0

    def _tokenize(self, text: str):
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                yield ("num", int(text[i:j]), i)
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                yield ("name", text[i:j], i)
                i = j
            elif ch in "+-*/^()":
                if ch == "*" and i + 1 < n and text[i + 1] == "*":
                    yield ("op", "^", i)
                    i += 2
                else:
                    yield ("op", ch, i)
                    i += 1
            else:
                raise PolySyntaxError(f"unexpected character {ch!r}", text, i)
        yield ("end", None, n)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolySyntaxError(f"expected {op!r}", self.text, pos)

    def parse(self) -> MPoly:
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", self.text, 0)
        value = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError("unexpected trailing input", self.text, pos)
        return value

    def expr(self) -> MPoly:
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> MPoly:
        value = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if rhs.gens:
                        raise PolySyntaxError("division by a non-constant", self.text, pos)
                    if not rhs.terms:
                        raise PolySyntaxError("division by zero", self.text, pos)
                    value = value.scale(Fraction(1) / rhs.constant_value())
            else:
                return value

    def unary(self) -> MPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e, pos = self.take()
            if k != "num":
                raise PolySyntaxError("exponent must be a non-negative integer", self.text, pos)
            return base ** e
        return base

    def atom(self) -> MPoly:
        kind, val, pos = self.take()
        if kind == "num":
            return MPoly.constant(val)
        if kind == "name":
            if val not in _POS:
                raise UnknownVariableError(f"unknown variable {val!r} at position {pos}")
            if self.allowed is not None and val not in self.allowed:
                raise UnknownVariableError(f"variable {val!r} not allowed here (position {pos})")
            return MPoly.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolySyntaxError("expected a number, variable or '('", self.text, pos)


def format_poly(f: MPoly) -> str:
    """Canonical text form, terms in descending graded lex order."""
    if not f.terms:
        return "0"
    parts = []
    for e in f._ordered_exps():
        c = f.terms[e]
        mono = "*".join(
            name if k == 1 else f"{name}^{k}" for name, k in zip(f.gens, e) if k
        )
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
