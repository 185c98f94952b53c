"""Truncated formal q-series with exact Q(zeta_240) coefficients.

Exponents are exact rationals.  Every series carries an order bound: all
coefficients at exponents strictly below the bound are exactly correct,
and nothing is claimed at or above it.  Arithmetic propagates bounds, so
precision loss is tracked rather than silently ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclofield import ZERO, CycloNum, QQ, rational, rational_str, zeta
from .errors import (
    DivergentProductError,
    InsufficientPrecisionError,
    NonInvertibleError,
    UnsupportedTwistError,
)

INF = math.inf
DEFAULT_BOUND = QQ(60)


def as_exponent(x):
    """Coerce an exponent or bound to an exact rational (INF passes through)."""
    if x == INF:
        return INF
    return rational(x)


def _badd(x, y):
    if x == INF or y == INF:
        return INF
    return x + y


class QSeries:
    """A q-series sum_r c_r q^r, exact for all r below ``bound``."""

    __slots__ = ("terms", "bound")

    def __init__(self, terms=None, bound=INF):
        bound = as_exponent(bound)
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = as_exponent(e)
                if bound != INF and e >= bound:
                    continue
                c = c if isinstance(c, CycloNum) else CycloNum(c)
                if e in acc:
                    c = acc[e] + c
                if c:
                    acc[e] = c
                else:
                    acc.pop(e, None)
        self.terms = acc
        self.bound = bound

    @classmethod
    def _raw(cls, terms: dict, bound) -> "QSeries":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.bound = bound
        return obj

    @classmethod
    def zero(cls, bound=INF) -> "QSeries":
        return cls._raw({}, as_exponent(bound))

    @classmethod
    def one(cls, bound=INF) -> "QSeries":
        return cls.monomial(0, 1, bound)

    @classmethod
    def monomial(cls, exp, coeff=1, bound=INF) -> "QSeries":
        return cls({exp: coeff}, bound)

    # -- structure ---------------------------------------------------------

    def ldeg(self):
        """Exponent of the lowest tracked term; the bound if none exist."""
        return min(self.terms) if self.terms else self.bound

    def leading_coefficient(self) -> CycloNum:
        if not self.terms:
            raise NonInvertibleError("series has no terms below its bound")
        return self.terms[min(self.terms)]

    def coefficient(self, r) -> CycloNum:
        r = as_exponent(r)
        if self.bound != INF and r >= self.bound:
            raise InsufficientPrecisionError(
                f"coefficient at {r} requested, series only exact below {self.bound}"
            )
        return self.terms.get(r, ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.bound == other.bound and self.terms == other.terms

    def __repr__(self):
        bits = [f"({c!r})q^{e}" for e, c in self.sorted_terms()[:6]]
        if len(self.terms) > 6:
            bits.append("...")
        return f"QSeries({' + '.join(bits) or '0'}; bound={self.bound})"

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return QSeries._raw({e: -c for e, c in self.terms.items()}, self.bound)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        b = min(self.bound, other.bound)
        acc = {e: c for e, c in self.terms.items() if b == INF or e < b}
        for e, c in other.terms.items():
            if b != INF and e >= b:
                continue
            v = acc.get(e)
            v = c if v is None else v + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return QSeries._raw(acc, b)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, s) -> "QSeries":
        s = s if isinstance(s, CycloNum) else CycloNum(s)
        if not s:
            return QSeries._raw({}, self.bound)
        return QSeries._raw({e: c * s for e, c in self.terms.items()}, self.bound)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scalar_mul(other)
        b = min(_badd(self.ldeg(), other.bound), _badd(other.ldeg(), self.bound))
        acc = {}
        items2 = other.sorted_terms()
        for e1, c1 in self.sorted_terms():
            for e2, c2 in items2:
                e = e1 + e2
                if b != INF and e >= b:
                    break
                p = c1 * c2
                v = acc.get(e)
                v = p if v is None else v + p
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return QSeries._raw(acc, b)

    def __rmul__(self, other):
        return self.scalar_mul(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        out = QSeries.one(INF)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def invert(self, bound=None) -> "QSeries":
        """Multiplicative inverse by Newton iteration.

        The result is exact below self.bound - 2*ldeg.  A series with
        infinite bound and more than one term needs an explicit ``bound``.
        """
        if not self.terms:
            raise NonInvertibleError("cannot invert a series with no terms")
        e0 = self.ldeg()
        c0 = self.terms[e0]
        if len(self.terms) == 1:
            b = self.bound if bound is None else min(self.bound, as_exponent(bound))
            b = INF if b == INF else b - 2 * e0
            return QSeries._raw({-e0: c0.inverse()}, b)
        if self.bound == INF and bound is None:
            raise InsufficientPrecisionError(
                "inverting an exact multi-term series needs an explicit bound"
            )
        b_in = self.bound if bound is None else min(self.bound, as_exponent(bound) + 2 * e0)
        rel_bound = b_in - e0
        c0i = c0.inverse()
        u = QSeries._raw(
            {e - e0: c * c0i for e, c in self.terms.items() if e != e0}, INF
        )

        # v approximates (1 + u)^(-1); each pass doubles the valid precision.
        # The loop runs in plain polynomial arithmetic (infinite bounds) with
        # explicit exponent cuts; the honest bound is assigned at the end.
        def cut(f, limit):
            return QSeries._raw({e: c for e, c in f.terms.items() if e < limit}, INF)

        if u.is_zero():
            v = QSeries.one(INF)
        else:
            p = u.ldeg()
            v = QSeries.one(INF)
            one_u = QSeries.one(INF) + u
            two = QSeries.monomial(0, 2, INF)
            while p < rel_bound:
                p = min(2 * p, rel_bound)
                v = cut((two - cut(one_u * v, p)) * v, p)
        out = {}
        for e, c in v.terms.items():
            out[e - e0] = c * c0i
        return QSeries._raw(out, rel_bound - e0)

    # -- reparametrizations --------------------------------------------------

    def scale_z(self, s) -> "QSeries":
        """Substitute z -> s z (q^r -> q^(r s)); s must be positive."""
        s = as_exponent(s)
        if s == INF or s <= 0:
            raise ValueError("scale factor must be a positive rational")
        b = INF if self.bound == INF else self.bound * s
        return QSeries._raw({e * s: c for e, c in self.terms.items()}, b)

    def shift_z(self, c) -> "QSeries":
        """Substitute z -> z + c: each term picks up e^(2 pi i r c)."""
        c = as_exponent(c)
        if c == INF:
            raise ValueError("shift must be a rational number")
        out = {}
        for e, v in self.terms.items():
            rc = e * c
            den = rc.denominator
            if 240 % den:
                raise UnsupportedTwistError(
                    f"shift by {c} at exponent {e} needs a {den}-th root of unity"
                )
            out[e] = v * zeta(den, rc.numerator % den)
        return QSeries._raw(out, self.bound)

    def truncate(self, new_bound) -> "QSeries":
        nb = as_exponent(new_bound)
        if nb >= self.bound:
            return self
        return QSeries._raw({e: c for e, c in self.terms.items() if e < nb}, nb)

    def map_coefficients(self, fn) -> "QSeries":
        """Apply fn to every coefficient (e.g. a field automorphism)."""
        return QSeries({e: fn(c) for e, c in self.terms.items()}, self.bound)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "bound": "inf" if self.bound == INF else rational_str(self.bound),
            "terms": [
                {"exp": rational_str(e), "coef": c.to_json()} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "QSeries":
        bound = INF if data["bound"] == "inf" else QQ(data["bound"])
        terms = {QQ(t["exp"]): CycloNum.from_json(t["coef"]) for t in data["terms"]}
        return cls._raw(terms, bound)


@dataclass(frozen=True)
class CompareResult:
    """Outcome of comparing two series through min(bounds, up_to)."""

    equal: bool
    checked_to: object
    exponent: object = None
    lhs: CycloNum = None
    rhs: CycloNum = None


def compare(f: QSeries, g: QSeries, up_to=None) -> CompareResult:
    limit = min(f.bound, g.bound)
    if up_to is not None:
        up_to = as_exponent(up_to)
        if limit < up_to:
            raise InsufficientPrecisionError(
                f"comparison through {up_to} requested but bounds only reach {limit}"
            )
        limit = up_to
    for e in sorted(set(f.terms) | set(g.terms)):
        if limit != INF and e >= limit:
            break
        cf = f.terms.get(e, ZERO)
        cg = g.terms.get(e, ZERO)
        if cf != cg:
            return CompareResult(False, limit, e, cf, cg)
    return CompareResult(True, limit)


def pochhammer(base_exp, base_root=(1, 0), step=1, count=None, bound=DEFAULT_BOUND):
    """The q-Pochhammer product prod_{m<count} (1 - zeta q^(base_exp + m step))
    with zeta = zeta_n^k given by base_root = (n, k), truncated at ``bound``.

    count=None means the infinite product, which requires step > 0; it is
    cut off once a factor is 1 + O(q^bound).
    """
    base_exp = as_exponent(base_exp)
    step = as_exponent(step)
    bound = as_exponent(bound)
    if base_exp < 0:
        raise ValueError("base exponent must be nonnegative")
    n, k = base_root
    root = zeta(n, k)
    if base_exp == 0 and root == CycloNum(1):
        raise ValueError("factor 1 - q^0 vanishes; the product is not a unit")
    infinite = count is None or count == INF
    if infinite and step <= 0:
        raise DivergentProductError("infinite product needs a positive step")
    acc = QSeries.one(bound if infinite else INF)
    e = base_exp
    m = 0
    while (infinite and e < bound) or (not infinite and m < count):
        acc = acc * QSeries({0: 1, e: -root}, INF)
        e += step
        m += 1
    if not infinite and bound != INF:
        acc = acc.truncate(bound)
    return acc


def geometric_inverse(root: CycloNum, exp, bound) -> QSeries:
    """1/(1 - root q^exp) = sum_k root^k q^(k exp), truncated at ``bound``."""
    exp = as_exponent(exp)
    bound = as_exponent(bound)
    if exp <= 0:
        raise ValueError("geometric inverse needs a positive exponent")
    terms = {}
    e = as_exponent(0)
    c = CycloNum(1)
    while e < bound:
        terms[e] = c
        e = e + exp
        c = c * root
    return QSeries._raw(terms, bound)
