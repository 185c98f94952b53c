"""Exact arithmetic in the degree-64 cyclotomic field Q(zeta_240).

Every algebraic constant used by the verification engine (roots of unity
zeta_n for n | 240, the quartic irrationalities alpha = 2 sin(pi/5) and
beta = 2 sin(2 pi/5), square roots of 2, 3, 5, 30, 120, and the
branch-pinned scalar 1/sqrt(-120 i)) lives in this one field, so equality
of derived quantities is decided by comparing coefficient vectors.

Elements are stored sparsely on the canonical power basis
{zeta^i : 0 <= i < 64} with zeta = e^(2 pi i / 240).
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from math import gcd

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is optional
    from fractions import Fraction as QQ

from .errors import (
    InvalidAutomorphismError,
    NonInvertibleError,
    UnsupportedRootError,
)

ORDER = 240
DEGREE = 64  # euler phi(240)

_RAT = type(QQ(1))


def rational(x) -> "QQ":
    """Coerce ints, Fractions and 'num/den' strings to the rational type."""
    return x if isinstance(x, _RAT) else QQ(x)


def rational_str(x) -> str:
    x = rational(x)
    d = x.denominator
    return f"{x.numerator}/{d}" if d != 1 else str(x.numerator)


def _poly_exact_div(num, den):
    # den must be monic with integer coefficients; remainder must vanish
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, low degree first, computed by exact
    division of x^n - 1 by the Phi_d for proper divisors d."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _build_reduction():
    phi = cyclotomic_polynomial(ORDER)
    rows = []
    for e in range(DEGREE):
        row = [0] * DEGREE
        row[e] = 1
        rows.append(row)
    for e in range(DEGREE, ORDER):
        prev = rows[e - 1]
        row = [0] * DEGREE
        for i in range(DEGREE - 1):
            row[i + 1] = prev[i]
        top = prev[DEGREE - 1]
        if top:
            # x^64 = -(phi[0] + phi[1] x + ... + phi[63] x^63)
            for i in range(DEGREE):
                row[i] -= top * phi[i]
        rows.append(row)
    return tuple(tuple((i, c) for i, c in enumerate(row) if c) for row in rows)


#: _RED[e] lists (basis index, integer coefficient) pairs of zeta^e reduced
#: to the canonical basis, for 0 <= e < 240.
_RED = _build_reduction()

_EMB = tuple(cmath.exp(2j * math.pi * i / ORDER) for i in range(DEGREE))


class CycloNum:
    """An element of Q(zeta_240) with exact rational coordinates."""

    __slots__ = ("_c",)

    def __init__(self, value=None):
        if value is None:
            self._c = {}
        elif isinstance(value, CycloNum):
            self._c = value._c
        elif isinstance(value, dict):
            # keys are zeta exponents (any integers), values rationals
            acc = {}
            for e, r in value.items():
                r = rational(r)
                if not r:
                    continue
                for i, m in _RED[e % ORDER]:
                    v = acc.get(i, 0) + r * m
                    if v:
                        acc[i] = v
                    else:
                        acc.pop(i, None)
            self._c = acc
        elif isinstance(value, (list, tuple)):
            if len(value) != DEGREE:
                raise ValueError(f"coefficient vector must have length {DEGREE}")
            self._c = {i: rational(v) for i, v in enumerate(value) if v}
        else:
            r = rational(value)
            self._c = {0: r} if r else {}

    @classmethod
    def _raw(cls, c: dict) -> "CycloNum":
        obj = cls.__new__(cls)
        obj._c = c
        return obj

    @property
    def coeffs(self) -> tuple:
        """Dense canonical coordinate vector of length 64."""
        return tuple(self._c.get(i, QQ(0)) for i in range(DEGREE))

    def __bool__(self):
        return bool(self._c)

    def is_rational(self) -> bool:
        return not self._c or set(self._c) == {0}

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self._c.get(0, QQ(0))

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __neg__(self):
        return CycloNum._raw({i: -v for i, v in self._c.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for i, v in other._c.items():
            w = c.get(i, 0) + v
            if w:
                c[i] = w
            else:
                c.pop(i, None)
        return CycloNum._raw(c)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        oc = other._c
        if len(oc) == 1 and 0 in oc:
            r = oc[0]
            return CycloNum._raw({i: v * r for i, v in self._c.items()})
        if len(self._c) == 1 and 0 in self._c:
            r = self._c[0]
            return CycloNum._raw({i: v * r for i, v in oc.items()})
        acc = {}
        red = _RED
        for i, a in self._c.items():
            for j, b in oc.items():
                ab = a * b
                for k, m in red[i + j]:
                    v = acc.get(k, 0) + (ab if m == 1 else (-ab if m == -1 else ab * m))
                    if v:
                        acc[k] = v
                    else:
                        acc.pop(k, None)
        return CycloNum._raw(acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if not self._c:
            raise NonInvertibleError("zero is not invertible")
        if len(self._c) == 1:
            ((i, c),) = self._c.items()
            if i == 0:
                return CycloNum._raw({0: QQ(1) / c})
            return CycloNum._raw({j: QQ(m) / c for j, m in _RED[ORDER - i]})
        return self._xgcd_inverse()

    def _xgcd_inverse(self):
        # extended Euclid against Phi_240 over Q; gcd is a nonzero constant
        phi = [QQ(c) for c in cyclotomic_polynomial(ORDER)]
        f = [QQ(0)] * DEGREE
        for i, c in self._c.items():
            f[i] = c
        r0, r1 = _ptrim(phi), _ptrim(f)
        t0, t1 = [], [QQ(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _psub(t0, _pmul(q, t1))
        if not r1:
            raise NonInvertibleError("element shares a factor with Phi_240")
        c = r1[0]
        return CycloNum._raw({i: v / c for i, v in enumerate(t1) if v})

    def __truediv__(self, other):
        if isinstance(other, (int, _RAT)):
            r = QQ(1) / rational(other)
            return CycloNum._raw({i: v * r for i, v in self._c.items()})
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def conjugate(self) -> "CycloNum":
        """Complex conjugation, i.e. the automorphism zeta -> zeta^{-1}."""
        return FieldAutomorphism(ORDER - 1)(self)

    def embed(self) -> complex:
        """Numerical image under zeta -> e^(2 pi i/240)."""
        return sum((float(v) * _EMB[i] for i, v in self._c.items()), 0j)

    def to_json(self) -> list:
        return [rational_str(v) for v in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "CycloNum":
        return cls([QQ(s) for s in data])

    def __repr__(self):
        if not self._c:
            return "CycloNum(0)"
        bits = []
        for i in sorted(self._c):
            v = self._c[i]
            bits.append(str(v) if i == 0 else f"({v})*z^{i}")
        return "CycloNum(" + " + ".join(bits) + ")"


def _coerce(x):
    if isinstance(x, CycloNum):
        return x
    if isinstance(x, (int, _RAT)):
        return CycloNum(x)
    try:
        from fractions import Fraction

        if isinstance(x, Fraction):
            return CycloNum(QQ(x.numerator) / QQ(x.denominator))
    except ImportError:  # pragma: no cover
        pass
    return None


def _ptrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else QQ(0)) - (b[i] if i < len(b) else QQ(0)) for i in range(n)]
    return _ptrim(out)


def _pmul(a, b):
    if not a or not b:
        return []
    out = [QQ(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _ptrim(out)


def _pdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    inv = QQ(1) / b[-1]
    q = [QQ(0)] * max(len(a) - db, 0)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db] * inv
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _ptrim(q), _ptrim(a[:db])


ZERO = CycloNum._raw({})
ONE = CycloNum._raw({0: QQ(1)})


def zeta(n: int, k: int = 1) -> CycloNum:
    """The root of unity zeta_n^k = e^(2 pi i k/n); n must divide 240."""
    if n <= 0 or ORDER % n:
        raise UnsupportedRootError(f"zeta_{n} does not lie in Q(zeta_240)")
    return CycloNum({(ORDER // n) * k: 1})


class FieldAutomorphism:
    """The Galois automorphism zeta -> zeta^k for k coprime to 240."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: int):
        exponent %= ORDER
        if gcd(exponent, ORDER) != 1:
            raise InvalidAutomorphismError(f"exponent {exponent} not coprime to {ORDER}")
        self.exponent = exponent

    def __call__(self, x: CycloNum) -> CycloNum:
        acc = {}
        k = self.exponent
        for i, v in x._c.items():
            for j, m in _RED[(i * k) % ORDER]:
                w = acc.get(j, 0) + (v if m == 1 else (-v if m == -1 else v * m))
                if w:
                    acc[j] = w
                else:
                    acc.pop(j, None)
        return CycloNum._raw(acc)

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        return FieldAutomorphism(self.exponent * other.exponent)

    def __eq__(self, other):
        return isinstance(other, FieldAutomorphism) and self.exponent == other.exponent

    def __hash__(self):
        return hash(("FieldAutomorphism", self.exponent))

    def __repr__(self):
        return f"FieldAutomorphism({self.exponent})"


def apply_automorphism(phi: FieldAutomorphism, x: CycloNum) -> CycloNum:
    return phi(x)


def identity_automorphism() -> FieldAutomorphism:
    return FieldAutomorphism(1)


@lru_cache(maxsize=None)
def alpha() -> CycloNum:
    """2 sin(pi/5), a root of x^4 - 5 x^2 + 5."""
    return -zeta(4) * (zeta(10) - zeta(10, -1))


@lru_cache(maxsize=None)
def beta() -> CycloNum:
    """2 sin(2 pi/5), the other positive root of x^4 - 5 x^2 + 5."""
    return -zeta(4) * (zeta(5) - zeta(5, -1))


@lru_cache(maxsize=None)
def sqrt2() -> CycloNum:
    return zeta(8) + zeta(8, -1)


@lru_cache(maxsize=None)
def sqrt3() -> CycloNum:
    return zeta(12) + zeta(12, -1)


@lru_cache(maxsize=None)
def sqrt5() -> CycloNum:
    return zeta(5) - zeta(5, 2) - zeta(5, 3) + zeta(5, 4)


@lru_cache(maxsize=None)
def sqrt30() -> CycloNum:
    return sqrt2() * sqrt3() * sqrt5()


@lru_cache(maxsize=None)
def sqrt120() -> CycloNum:
    return sqrt30() * 2


@lru_cache(maxsize=None)
def inv_sqrt_minus_120i() -> CycloNum:
    """The principal branch of 1/sqrt(-120 i): argument pi/4, square i/120."""
    return zeta(8) * sqrt30() / 60


@lru_cache(maxsize=None)
def csc_pi_5() -> CycloNum:
    return alpha().inverse() * 2


@lru_cache(maxsize=None)
def csc_2pi_5() -> CycloNum:
    return beta().inverse() * 2


@lru_cache(maxsize=None)
def tau() -> FieldAutomorphism:
    """The automorphism used to map the a=1 golden-ratio identities to their
    a=2 partners: it fixes zeta_16, sends alpha -> beta and beta -> -alpha.
    The smallest exponent with these properties is chosen."""
    a, b = alpha(), beta()
    for k in range(1, ORDER, 2):
        if k % 16 == 1 and gcd(k, ORDER) == 1:
            phi = FieldAutomorphism(k)
            if phi(a) == b and phi(b) == -a:
                return phi
    raise InvalidAutomorphismError("no automorphism with the tau action exists")


@lru_cache(maxsize=None)
def sigma() -> FieldAutomorphism:
    """The smallest automorphism fixing zeta_48 with sqrt5 -> -sqrt5.
    Its restriction to Q(sqrt5) agrees with tau's."""
    r5 = sqrt5()
    for k in range(1, ORDER):
        if gcd(k, ORDER) == 1 and k % 48 == 1:
            phi = FieldAutomorphism(k)
            if phi(r5) == -r5:
                return phi
    raise InvalidAutomorphismError("no automorphism with the sigma action exists")


def reduction_table() -> tuple:
    """Reduction data: entry e lists (basis index, int coeff) of zeta^e."""
    return _RED
