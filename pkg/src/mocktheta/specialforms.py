"""Constructors for the named series of the mock theta circle and the
identities between them.

Covers eta products, the Rogers-Ramanujan quotients g and h, the ten
fifth-order Eulerian series, the Appell-type M and N series, the completed
functions built from them (holomorphic prefactor plus a formal list of
period-integral correction terms), the six-component vectors F and G, and a
registry of named identities with an exact verifier.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import isqrt

from .cyclofield import (
    QQ,
    CycloNum,
    alpha,
    beta,
    csc_2pi_5,
    csc_pi_5,
    rational_str,
    zeta,
)
from .errors import InsufficientPrecisionError, PrecisionRefusalError
from .modgroup import GroupContext, sturm_bound
from .qseries import DEFAULT_BOUND, INF, QSeries, as_exponent, compare, pochhammer

HALF = QQ(1, 2)


# -- eta products --------------------------------------------------------------


def eta(scale=1, bound=DEFAULT_BOUND) -> QSeries:
    """Dedekind eta at scale*z: q^(scale/24) prod_m (1 - q^(scale*m))."""
    s = as_exponent(scale)
    if s == INF or s <= 0:
        raise ValueError("eta needs a positive rational scale")
    return pochhammer(s, step=s, bound=as_exponent(bound)) * QSeries.monomial(s / 24)


def eta_quotient(spec, bound=DEFAULT_BOUND) -> QSeries:
    """Product of eta(scale*z)**power factors, spec = {scale: power}.

    Each inversion costs precision proportional to the eta leading exponent,
    so the factors are built with enough padding that the result stays exact
    below ``bound``.
    """
    items = sorted((as_exponent(k), int(p)) for k, p in dict(spec).items())
    b = as_exponent(bound)
    pad = sum(-p * s / 12 for s, p in items if p < 0)
    out = QSeries.one(INF)
    for s, p in items:
        if p:
            out = out * eta(s, b + pad) ** p
    return out


def generalized_eta(delta: int, g: int, bound=DEFAULT_BOUND) -> QSeries:
    """The eta-like product over exponents congruent to +-g mod delta, with
    the Bernoulli prefactor q^((delta/2) P2(g/delta)), P2(t) = t^2 - t + 1/6."""
    if not 0 < 2 * g < delta:
        raise ValueError("need 0 < g < delta/2")
    t = QQ(g, delta)
    lead = QQ(delta, 2) * (t * t - t + QQ(1, 6))
    b = as_exponent(bound) - lead
    prod = pochhammer(g, step=delta, bound=b) * pochhammer(delta - g, step=delta, bound=b)
    return prod * QSeries.monomial(lead)


# -- classical theta series ------------------------------------------------------


def theta4(bound=DEFAULT_BOUND) -> QSeries:
    """theta_4(0, q) = 1 + 2 sum (-1)^n q^(n^2); cross-checked against the
    quotient eta(z)^2/eta(2z)."""
    b = as_exponent(bound)
    terms = {QQ(0): 1}
    for n in range(1, isqrt(int(b)) + 2):
        if n * n >= b:
            break
        terms[QQ(n * n)] = -2 if n % 2 else 2
    raw = QSeries(terms, b)
    check = compare(raw, eta_quotient({1: 2, 2: -1}, b))
    if not check.equal:
        raise ArithmeticError(f"theta4 routes disagree at q^{check.exponent}")
    return raw


def psi_theta(bound=DEFAULT_BOUND) -> QSeries:
    """psi(q) = sum q^(n(n+1)/2); cross-checked against
    q^(-1/8) eta(2z)^2/eta(z)."""
    b = as_exponent(bound)
    terms = {}
    n = 0
    while QQ(n * (n + 1), 2) < b:
        terms[QQ(n * (n + 1), 2)] = 1
        n += 1
    raw = QSeries(terms, b)
    quot = eta_quotient({2: 2, 1: -1}, b + 1) * QSeries.monomial(QQ(-1, 8))
    check = compare(raw, quot)
    if not check.equal:
        raise ArithmeticError(f"psi routes disagree at q^{check.exponent}")
    return raw


# -- Eulerian (mock theta) series -------------------------------------------------


def _inv_poch(base_exp, base_root, step, count, bound):
    return pochhammer(base_exp, base_root, step, count, INF).invert(bound)


def _eulerian(bound, lead, term):
    """Sum term(n, bound) for n = 0, 1, ... while lead(n) < bound."""
    b = as_exponent(bound)
    if b <= 0:
        raise ValueError("bound must be positive")
    acc = QSeries.zero(b)
    n = 0
    while lead(n) < b:
        acc = acc + term(n, b)
        n += 1
    return acc


_MOCK_THETA = {
    "f0": lambda b: _eulerian(
        b, lambda n: n * n,
        lambda n, bb: QSeries.monomial(n * n) * _inv_poch(1, (2, 1), 1, n, bb)),
    "f1": lambda b: _eulerian(
        b, lambda n: n * (n + 1),
        lambda n, bb: QSeries.monomial(n * (n + 1)) * _inv_poch(1, (2, 1), 1, n, bb)),
    "F0": lambda b: _eulerian(
        b, lambda n: 2 * n * n,
        lambda n, bb: QSeries.monomial(2 * n * n) * _inv_poch(1, (1, 0), 2, n, bb)),
    "F1": lambda b: _eulerian(
        b, lambda n: 2 * n * (n + 1),
        lambda n, bb: QSeries.monomial(2 * n * (n + 1)) * _inv_poch(1, (1, 0), 2, n + 1, bb)),
    "psi0": lambda b: _eulerian(
        b, lambda n: QQ((n + 1) * (n + 2), 2),
        lambda n, bb: QSeries.monomial(QQ((n + 1) * (n + 2), 2)) * pochhammer(1, (2, 1), 1, n, INF)),
    "psi1": lambda b: _eulerian(
        b, lambda n: QQ(n * (n + 1), 2),
        lambda n, bb: QSeries.monomial(QQ(n * (n + 1), 2)) * pochhammer(1, (2, 1), 1, n, INF)),
    "phi0": lambda b: _eulerian(
        b, lambda n: n * n,
        lambda n, bb: QSeries.monomial(n * n) * pochhammer(1, (2, 1), 2, n, INF)),
    "phi1": lambda b: _eulerian(
        b, lambda n: (n + 1) * (n + 1),
        lambda n, bb: QSeries.monomial((n + 1) * (n + 1)) * pochhammer(1, (2, 1), 2, n, INF)),
    "chi0": lambda b: _eulerian(
        b, lambda n: n,
        lambda n, bb: QSeries.monomial(n) * _inv_poch(n + 1, (1, 0), 1, n, bb)),
    "chi1": lambda b: _eulerian(
        b, lambda n: n,
        lambda n, bb: QSeries.monomial(n) * _inv_poch(n + 1, (1, 0), 1, n + 1, bb)),
}


def mock_theta(name: str, bound=DEFAULT_BOUND) -> QSeries:
    """One of the ten fifth-order Eulerian series, by name."""
    try:
        builder = _MOCK_THETA[name]
    except KeyError:
        raise ValueError(f"unknown mock theta series {name!r}") from None
    return builder(bound)


def M_series(a: int, bound=DEFAULT_BOUND) -> QSeries:
    """sum_{n>=1} q^(n(n-1)) / ((q^(a/5); q)_n (q^(1-a/5); q)_n).

    Exponents lie in (1/5)Z; the series is symmetric under a -> 5 - a.
    """
    if a % 5 == 0:
        raise ValueError("index must not be divisible by 5")
    lo, hi = QQ(a % 5, 5), 1 - QQ(a % 5, 5)
    b = as_exponent(bound)
    acc = QSeries.zero(b)
    n = 1
    while n * (n - 1) < b:
        term = QSeries.monomial(n * (n - 1)) * _inv_poch(lo, (1, 0), 1, n, b)
        acc = acc + term * _inv_poch(hi, (1, 0), 1, n, b)
        n += 1
    return acc


def N_series(a: int, bound=DEFAULT_BOUND) -> QSeries:
    """1 + sum_{n>=1} q^(n^2) / ((z5^a q; q)_n (z5^-a q; q)_n), z5 = zeta_5^a.

    Coefficients lie in Q(zeta_5); the square-root-of-5 automorphism maps the
    a = 1 series to the a = 2 series termwise.
    """
    if a % 5 == 0:
        raise ValueError("index must not be divisible by 5")
    b = as_exponent(bound)
    acc = QSeries.one(b)
    n = 1
    while n * n < b:
        term = QSeries.monomial(n * n) * _inv_poch(1, (5, a), 1, n, b)
        acc = acc + term * _inv_poch(1, (5, -a % 5), 1, n, b)
        n += 1
    return acc


def rogers_ramanujan(which: str, scale=1, bound=DEFAULT_BOUND) -> QSeries:
    """The Rogers-Ramanujan products at scale*z.

    "G" and "H" are the plain products; "g" and "h" carry the q^(-1/60) and
    q^(11/60) prefactors.
    """
    if which not in ("G", "H", "g", "h"):
        raise ValueError("which must be one of G, H, g, h")
    s = as_exponent(scale)
    if s == INF or s <= 0:
        raise ValueError("scale must be a positive rational")
    b_in = as_exponent(bound) / s + 1
    residues = (1, 4) if which in ("G", "g") else (2, 3)
    prod = pochhammer(residues[0], step=5, bound=b_in) * pochhammer(residues[1], step=5, bound=b_in)
    out = prod.invert()
    if which == "g":
        out = out * QSeries.monomial(QQ(-1, 60))
    elif which == "h":
        out = out * QSeries.monomial(QQ(11, 60))
    return out.scale_z(s) if s != 1 else out


# -- completed functions -----------------------------------------------------------


@dataclass(frozen=True)
class CompletionTerm:
    """prefactor * R_{a,b}(arg_scale*z + arg_offset), where R is the period
    integral correcting a mock theta series to a modular object."""

    prefactor: CycloNum
    a: QQ
    b: QQ
    arg_scale: QQ
    arg_offset: QQ = QQ(0)

    def __post_init__(self):
        if not 0 < self.a < 1:
            raise ValueError("first characteristic must lie in (0, 1)")
        if self.arg_scale <= 0:
            raise ValueError("argument scale must be positive")

    def signature(self):
        return (self.a, self.arg_scale, self.arg_offset, self.b)

    def scale_z(self, s) -> "CompletionTerm":
        return replace(self, arg_scale=self.arg_scale * s)

    def shift_z(self, c) -> "CompletionTerm":
        return replace(self, arg_offset=self.arg_offset + self.arg_scale * c)

    def scaled(self, factor) -> "CompletionTerm":
        factor = factor if isinstance(factor, CycloNum) else CycloNum(factor)
        return replace(self, prefactor=self.prefactor * factor)

    def to_json(self) -> dict:
        return {
            "prefactor": self.prefactor.to_json(),
            "a": rational_str(self.a),
            "b": rational_str(self.b),
            "arg_scale": rational_str(self.arg_scale),
            "arg_offset": rational_str(self.arg_offset),
        }


def canonical_completion(terms) -> tuple:
    """Merge terms with equal signature, drop zeros, sort canonically."""
    merged = {}
    for t in terms:
        key = t.signature()
        if key in merged:
            merged[key] = replace(merged[key], prefactor=merged[key].prefactor + t.prefactor)
        else:
            merged[key] = t
    return tuple(merged[k] for k in sorted(merged) if merged[k].prefactor)


@dataclass(frozen=True)
class CompletedFunction:
    """A holomorphic q-series plus a formal list of completion terms.

    ``completion_unspecified`` marks functions whose correction terms exist
    but have no transcribed closed form; those take part in holomorphic
    comparisons only.
    """

    holo: QSeries
    completion: tuple = ()
    completion_unspecified: bool = False

    @classmethod
    def holomorphic(cls, series: QSeries) -> "CompletedFunction":
        return cls(series, (), False)

    def _completion_canonical(self) -> "CompletedFunction":
        return replace(self, completion=canonical_completion(self.completion))

    def __neg__(self):
        return CompletedFunction(
            -self.holo,
            tuple(t.scaled(-1) for t in self.completion),
            self.completion_unspecified,
        )

    def __add__(self, other):
        if isinstance(other, QSeries):
            other = CompletedFunction.holomorphic(other)
        if not isinstance(other, CompletedFunction):
            return NotImplemented
        return CompletedFunction(
            self.holo + other.holo,
            canonical_completion(self.completion + other.completion),
            self.completion_unspecified or other.completion_unspecified,
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, QSeries):
            other = CompletedFunction.holomorphic(other)
        if not isinstance(other, CompletedFunction):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, factor) -> "CompletedFunction":
        return CompletedFunction(
            self.holo.scalar_mul(factor),
            canonical_completion(t.scaled(factor) for t in self.completion),
            self.completion_unspecified,
        )

    def scale_z(self, s) -> "CompletedFunction":
        s = as_exponent(s)
        return CompletedFunction(
            self.holo.scale_z(s),
            tuple(t.scale_z(s) for t in self.completion),
            self.completion_unspecified,
        )

    def shift_z(self, c) -> "CompletedFunction":
        c = as_exponent(c)
        return CompletedFunction(
            self.holo.shift_z(c),
            tuple(t.shift_z(c) for t in self.completion),
            self.completion_unspecified,
        )

    def to_json(self) -> dict:
        return {
            "holo": self.holo.to_json(),
            "completion": [t.to_json() for t in self.completion],
            "completion_unspecified": self.completion_unspecified,
        }


def _completion_pair(front: CycloNum, a_minus, a_plus, arg_scale) -> tuple:
    """The recurring combination front * (z12^-1 R_{a-,1/2} + z12 R_{a+,1/2})
    at argument arg_scale * z."""
    s = as_exponent(arg_scale)
    return (
        CompletionTerm(front * zeta(12, 11), QQ(*a_minus), HALF, s),
        CompletionTerm(front * zeta(12), QQ(*a_plus), HALF, s),
    )


def _m_lead(a: int) -> QQ:
    return QQ(3 * a, 10) * (1 - QQ(a, 5)) - QQ(1, 24)


def completed(name: str, bound=DEFAULT_BOUND) -> CompletedFunction:
    """Completed version of a named series: exact holomorphic prefactor plus
    the formal completion-term list."""
    b = as_exponent(bound)
    if name == "f0":
        return CompletedFunction(
            mock_theta("f0", b + QQ(1, 60)) * QSeries.monomial(QQ(-1, 60)),
            _completion_pair(-zeta(10), (1, 30), (11, 30), 30),
        )
    if name == "f1":
        return CompletedFunction(
            mock_theta("f1", b - QQ(11, 60)) * QSeries.monomial(QQ(11, 60)),
            _completion_pair(-zeta(5), (7, 30), (17, 30), 30),
        )
    if name == "F0":
        series = mock_theta("F0", b + QQ(1, 120)) - QSeries.one(INF)
        return CompletedFunction(
            series * QSeries.monomial(QQ(-1, 120)),
            _completion_pair(zeta(10) / 2, (1, 30), (11, 30), 15),
        )
    if name == "F1":
        return CompletedFunction(
            mock_theta("F1", b - QQ(71, 120)) * QSeries.monomial(QQ(71, 120)),
            _completion_pair(zeta(5) / 2, (7, 30), (17, 30), 15),
        )
    if name in ("M1", "M2"):
        a = 1 if name == "M1" else 2
        lead = _m_lead(a)
        return CompletedFunction(
            M_series(a, b - lead).scalar_mul(2) * QSeries.monomial(lead),
            _completion_pair(zeta(10, a), (6 * a - 5, 30), (6 * a + 5, 30), 3),
        )
    if name in ("N1", "N2"):
        a = 1 if name == "N1" else 2
        csc = csc_pi_5() if a == 1 else csc_2pi_5()
        return CompletedFunction(
            N_series(a, b + QQ(1, 24)).scalar_mul(csc) * QSeries.monomial(QQ(-1, 24)),
            (),
            completion_unspecified=True,
        )
    if name in ("psi0", "psi1", "phi0", "phi1"):
        lead = {
            "psi0": QQ(-1, 60),
            "psi1": QQ(11, 60),
            "phi0": QQ(-1, 120),
            "phi1": QQ(-49, 120),
        }[name]
        series = mock_theta(name, b - lead)
        if name.startswith("phi"):
            # the completed phi functions package phi(-q), matching the
            # sign convention of the Watson relations
            series = series.shift_z(HALF)
        return CompletedFunction(
            series * QSeries.monomial(lead),
            (),
            completion_unspecified=True,
        )
    raise ValueError(f"unknown completed function {name!r}")


# -- the six-component vectors -------------------------------------------------------


def build_F(bound=DEFAULT_BOUND) -> tuple:
    """The vector (f~0, f~1, F~0(z/2), F~1(z/2), z240 F~0((z+1)/2),
    z240^-71 F~1((z+1)/2))."""
    b = as_exponent(bound)
    half0 = completed("F0", 2 * b).scale_z(HALF)
    half1 = completed("F1", 2 * b).scale_z(HALF)
    return (
        completed("f0", b),
        completed("f1", b),
        half0,
        half1,
        half0.shift_z(1).scalar_mul(zeta(240)),
        half1.shift_z(1).scalar_mul(zeta(240, 169)),
    )


def build_G(bound=DEFAULT_BOUND) -> tuple:
    """The companion vector of M-series and eta-quotient terms."""
    b = as_exponent(bound)
    bp = b + 1
    g1 = rogers_ramanujan("g", 1, bp)
    h1 = rogers_ramanujan("h", 1, bp)
    quot_10 = eta_quotient({5: 2, 10: -1}, bp)
    quot_52 = eta_quotient({5: 2, QQ(5, 2): -1}, bp)
    # eta(5z)^2 / eta((5z+1)/2): the shifted eta needs a padded inversion
    eta_half = eta(QQ(5, 2), bp + QQ(5, 24)).shift_z(QQ(1, 5))
    quot_shift = eta(5, bp) ** 2 * eta_half.invert()
    m1_10 = completed("M1", b / 10).scale_z(10)
    m2_10 = completed("M2", b / 10).scale_z(10)
    m1_52 = completed("M1", 2 * b / 5).scale_z(QQ(5, 2))
    m2_52 = completed("M2", 2 * b / 5).scale_z(QQ(5, 2))
    return (
        -m1_10 + quot_10 * g1,
        -m2_10 + quot_10 * h1,
        m1_52.scalar_mul(HALF) - quot_52 * h1,
        m2_52.scalar_mul(HALF) + quot_52 * g1,
        m1_52.shift_z(1).scalar_mul(zeta(240) / 2) - (quot_shift * h1).scalar_mul(zeta(48, 25)),
        m2_52.shift_z(1).scalar_mul(zeta(240, 169) / 2) + (quot_shift * g1).scalar_mul(zeta(48)),
    )


# -- identity registry ----------------------------------------------------------------


@dataclass(frozen=True)
class IdentityInstance:
    lhs: CompletedFunction
    rhs: CompletedFunction
    multiply_eta: bool = False


def _as_completed(x) -> CompletedFunction:
    return x if isinstance(x, CompletedFunction) else CompletedFunction.holomorphic(x)


def _mtc_first_pair(b, which):
    """f~0 = -M~(1/5, 10z) + (eta(5z)^2/eta(10z)) g and the f~1 twin."""
    name, mname, rr = ("f0", "M1", "g") if which == 0 else ("f1", "M2", "h")
    quot = eta_quotient({5: 2, 10: -1}, b + 1)
    rhs = -completed(mname, b / 10).scale_z(10) + quot * rogers_ramanujan(rr, 1, b + 1)
    return IdentityInstance(completed(name, b), rhs)


def _mtc_second_pair(b, which):
    """F~0 = (1/2) M~(1/5, 5z) - (eta(10z)^2/eta(5z)) h(2z) and the F~1 twin."""
    name, mname, rr, sgn = ("F0", "M1", "h", -1) if which == 0 else ("F1", "M2", "g", 1)
    quot = eta_quotient({10: 2, 5: -1}, b + 1)
    term = quot * rogers_ramanujan(rr, 2, b + 1)
    rhs = completed(mname, b / 5).scale_z(5).scalar_mul(HALF)
    rhs = rhs - term if sgn < 0 else rhs + term
    return IdentityInstance(completed(name, b), rhs)


def _psi_identity(b, which):
    """2 psi~0 = M~(1/5, 10z) + 2 eta_{10,1}(z) eta(10z) h(z) and the twin."""
    name, mname, g_idx, rr = ("psi0", "M1", 1, "h") if which == 0 else ("psi1", "M2", 3, "g")
    term = generalized_eta(10, g_idx, b + 1) * eta(10, b + 1) * rogers_ramanujan(rr, 1, b + 1)
    rhs = completed(mname, b / 10).scale_z(10) + term.scalar_mul(2)
    return IdentityInstance(completed(name, b).scalar_mul(2), rhs)


def _phi_identity(b, which):
    """phi~0 = -(1/2) M~(1/5, 5z) + (eta(5z)eta(2z)/eta(10z)) g(2z)^2 h(z),
    and the phi~1 twin with an overall sign."""
    name, mname, rr2, rr1 = ("phi0", "M1", "g", "h") if which == 0 else ("phi1", "M2", "h", "g")
    quot = eta_quotient({5: 1, 2: 1, 10: -1}, b + 1)
    term = quot * rogers_ramanujan(rr2, 2, b + 1) ** 2 * rogers_ramanujan(rr1, 1, b + 1)
    rhs = -completed(mname, b / 5).scale_z(5).scalar_mul(HALF) + term
    lhs = completed(name, b)
    if which == 1:
        lhs = -lhs
    return IdentityInstance(lhs, rhs)


def _chi_identity(b, which):
    """2 F~0 - phi~0 = (3/2) M~(1/5, 5z) - eta(5z) g(z)^2/h(z) and the twin."""
    fname, pname, mname, top, bot, sgn = (
        ("F0", "phi0", "M1", "g", "h", -1) if which == 0 else ("F1", "phi1", "M2", "h", "g", 1)
    )
    lhs = completed(fname, b).scalar_mul(2)
    lhs = lhs - completed(pname, b) if which == 0 else lhs + completed(pname, b)
    term = (
        eta(5, b + 1)
        * rogers_ramanujan(top, 1, b + 1) ** 2
        * rogers_ramanujan(bot, 1, b + 2).invert()
    )
    rhs = completed(mname, b / 5).scale_z(5).scalar_mul(QQ(3, 2))
    rhs = rhs - term if sgn < 0 else rhs + term
    return IdentityInstance(lhs, rhs)


def _lemma_identity(b, which):
    """N~(1/5, z) + alpha M~(1/5, 25z) + beta M~(2/5, 25z) =
    2 (eta(2z)^2/eta(z)) (alpha^-1 g + beta^-1 h)(10z)
    - 2 (eta(50z)^2/eta(25z)) (beta g - alpha h)(10z); the twin is its image
    under the order-4 automorphism alpha -> beta -> -alpha."""
    al, be = alpha(), beta()
    ai, bi = al.inverse(), be.inverse()
    g10 = rogers_ramanujan("g", 10, b + 1)
    h10 = rogers_ramanujan("h", 10, b + 1)
    quot_a = eta_quotient({2: 2, 1: -1}, b + 1)
    quot_b = eta_quotient({50: 2, 25: -1}, b + 1)
    if which == 0:
        lhs = (
            completed("N1", b)
            + completed("M1", b / 25).scale_z(25).scalar_mul(al)
            + completed("M2", b / 25).scale_z(25).scalar_mul(be)
        )
        rhs = (quot_a * (g10.scalar_mul(ai) + h10.scalar_mul(bi))).scalar_mul(2) - (
            quot_b * (g10.scalar_mul(be) - h10.scalar_mul(al))
        ).scalar_mul(2)
    else:
        lhs = (
            completed("N2", b)
            + completed("M1", b / 25).scale_z(25).scalar_mul(be)
            - completed("M2", b / 25).scale_z(25).scalar_mul(al)
        )
        rhs = (quot_a * (g10.scalar_mul(bi) - h10.scalar_mul(ai))).scalar_mul(2) + (
            quot_b * (g10.scalar_mul(al) + h10.scalar_mul(be))
        ).scalar_mul(2)
    return IdentityInstance(lhs, _as_completed(rhs), multiply_eta=True)


def _n1_id_2(b):
    """N~(1/5, 2z) + alpha M~(1/5, 50z) + beta M~(2/5, 50z) =
    2 (eta(2z)eta(5z)/eta(z)) (alpha^-1 g + beta^-1 h)(5z)^2 (alpha g - beta h)(10z)
    - 2 eta(50z) (alpha eta_{10,1}(5z) h(5z) + beta eta_{10,3}(5z) g(5z))."""
    al, be = alpha(), beta()
    g5 = rogers_ramanujan("g", 5, b + 1)
    h5 = rogers_ramanujan("h", 5, b + 1)
    g10 = rogers_ramanujan("g", 10, b + 1)
    h10 = rogers_ramanujan("h", 10, b + 1)
    ge1 = generalized_eta(10, 1, (b + 1) / 5).scale_z(5)
    ge3 = generalized_eta(10, 3, (b + 1) / 5).scale_z(5)
    lhs = (
        completed("N1", b / 2).scale_z(2)
        + completed("M1", b / 50).scale_z(50).scalar_mul(al)
        + completed("M2", b / 50).scale_z(50).scalar_mul(be)
    )
    first = (
        eta_quotient({2: 1, 5: 1, 1: -1}, b + 1)
        * (g5.scalar_mul(al.inverse()) + h5.scalar_mul(be.inverse())) ** 2
        * (g10.scalar_mul(al) - h10.scalar_mul(be))
    )
    second = eta(50, b + 1) * (ge1 * h5.scalar_mul(al) + ge3 * g5.scalar_mul(be))
    rhs = first.scalar_mul(2) - second.scalar_mul(2)
    return IdentityInstance(lhs, _as_completed(rhs))


def _robins(b, which):
    """g(z)^2 h(2z) -+ h(z)^2 g(2z) = 2 (h or g)-side eta-quotient products."""
    g1 = rogers_ramanujan("g", 1, b + 1)
    h1 = rogers_ramanujan("h", 1, b + 1)
    g2 = rogers_ramanujan("g", 2, b + 1)
    h2 = rogers_ramanujan("h", 2, b + 1)
    quot = eta_quotient({10: 2, 5: -2}, b + 1)
    if which == 0:
        lhs = g1 ** 2 * h2 - h1 ** 2 * g2
        rhs = (h1 * h2 ** 2 * quot).scalar_mul(2)
    else:
        lhs = g1 ** 2 * h2 + h1 ** 2 * g2
        rhs = (g1 * g2 ** 2 * quot).scalar_mul(2)
    return IdentityInstance(_as_completed(lhs), _as_completed(rhs))


def _watson(b, which):
    """chi0(q) = 2 F0(q) - phi0(-q); chi1(q) = 2 F1(q) + q^-1 phi1(-q)."""
    if which == 0:
        lhs = mock_theta("chi0", b)
        rhs = mock_theta("F0", b).scalar_mul(2) - mock_theta("phi0", b).shift_z(HALF)
    else:
        lhs = mock_theta("chi1", b)
        flipped = mock_theta("phi1", b + 1).shift_z(HALF) * QSeries.monomial(-1)
        rhs = mock_theta("F1", b).scalar_mul(2) + flipped
    return IdentityInstance(_as_completed(lhs), _as_completed(rhs))


IDENTITY_BUILDERS = {
    "mtc1": lambda b: _mtc_first_pair(b, 0),
    "mtc2": lambda b: _mtc_first_pair(b, 1),
    "mtc3": lambda b: _mtc_second_pair(b, 0),
    "mtc4": lambda b: _mtc_second_pair(b, 1),
    "mtc2-1": lambda b: _psi_identity(b, 0),
    "mtc2-2": lambda b: _psi_identity(b, 1),
    "mtc2-3": lambda b: _phi_identity(b, 0),
    "mtc2-4": lambda b: _phi_identity(b, 1),
    "chi0": lambda b: _chi_identity(b, 0),
    "chi1": lambda b: _chi_identity(b, 1),
    "lemma3": lambda b: _lemma_identity(b, 0),
    "lemma4": lambda b: _lemma_identity(b, 1),
    "n1-id-2": _n1_id_2,
    "robins1": lambda b: _robins(b, 0),
    "robins2": lambda b: _robins(b, 1),
    "watson0": lambda b: _watson(b, 0),
    "watson1": lambda b: _watson(b, 1),
}

IDENTITY_NAMES = tuple(IDENTITY_BUILDERS)

MTC_IDENTITIES = ("mtc1", "mtc2", "mtc3", "mtc4")
LEMMA_IDENTITIES = ("lemma3", "lemma4")
REMAINING_IDENTITIES = (
    "mtc2-1", "mtc2-2", "mtc2-3", "mtc2-4",
    "chi0", "chi1", "n1-id-2", "robins1", "robins2", "watson0", "watson1",
)


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    equal: bool
    bound: QQ
    checked_to: QQ
    completions: str  # "equal" | "mismatch" | "not-compared"
    mismatch_exponent: QQ = None
    lhs_coefficient: CycloNum = None
    rhs_coefficient: CycloNum = None

    def to_json(self) -> dict:
        out = {
            "id": self.identity,
            "bound": rational_str(self.bound),
            "status": "equal" if self.equal else "mismatch",
            "checked_to": rational_str(self.checked_to),
            "completions": self.completions,
        }
        if self.mismatch_exponent is not None:
            out["first_mismatch_exp"] = rational_str(self.mismatch_exponent)
            out["lhs_coef"] = self.lhs_coefficient.to_json()
            out["rhs_coef"] = self.rhs_coefficient.to_json()
        return out


def required_bound() -> int:
    """Sturm-type requirement shared by all registered identities: every one
    lives (after clearing eta factors) in weight 1 on the (50, 5) group."""
    return sturm_bound(1, GroupContext(50, 5))


def verify_identity(identity: str, bound=DEFAULT_BOUND, force=False) -> IdentityReport:
    """Compare both sides of a named identity exactly through ``bound``.

    Holomorphic parts are compared coefficientwise; completion-term lists are
    compared as canonical multisets when both sides specify them.  Bounds
    below the Sturm requirement prove nothing and are refused unless forced.
    """
    if identity not in IDENTITY_BUILDERS:
        raise ValueError(f"unknown identity {identity!r}")
    b = as_exponent(bound)
    need = required_bound()
    if b < need and not force:
        raise PrecisionRefusalError(
            f"bound {b} is below the Sturm requirement {need}; "
            "pass force=True to compare anyway"
        )
    inst = IDENTITY_BUILDERS[identity](b)
    lhs, rhs = inst.lhs.holo, inst.rhs.holo
    if inst.multiply_eta:
        unit = eta(1, b + 1)
        lhs, rhs = unit * lhs, unit * rhs
    if min(lhs.bound, rhs.bound) < b:
        raise InsufficientPrecisionError(
            f"builder for {identity} reached bound {min(lhs.bound, rhs.bound)} < {b}"
        )
    res = compare(lhs, rhs, up_to=b)
    if inst.lhs.completion_unspecified or inst.rhs.completion_unspecified:
        comp = "not-compared"
    else:
        same = canonical_completion(inst.lhs.completion) == canonical_completion(
            inst.rhs.completion
        )
        comp = "equal" if same else "mismatch"
    return IdentityReport(
        identity,
        res.equal and comp != "mismatch",
        b,
        res.checked_to,
        comp,
        res.exponent,
        res.lhs,
        res.rhs,
    )
