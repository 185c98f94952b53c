"""Floating-point evaluation of q-series, unary theta functions, and the
period integrals R_{a,b}, used to spot-check the half-integral-weight
transformation laws at points of the upper half-plane."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.integrate import quad

from .cyclofield import QQ
from .errors import ConvergenceError, UnsupportedEvaluationError
from .qseries import INF, QSeries
from .specialforms import CompletedFunction, build_F, build_G, eta
from .weilrep import intertwining_scalar, m_S, m_T

TWO_PI = 2.0 * math.pi

ZETA8_INV = cmath.exp(-0.25j * math.pi)

NUMERIC_BOUND = QQ(40)


@dataclass(frozen=True)
class SamplePoint:
    """A point of the upper half-plane."""

    z: complex

    def __post_init__(self):
        if not complex(self.z).imag > 0:
            raise ValueError("sample point must satisfy Im z > 0")

    def __complex__(self) -> complex:
        return complex(self.z)


SAMPLE_POINTS = (
    SamplePoint(1j),
    SamplePoint(2j),
    SamplePoint(0.25 + 1j),
    SamplePoint(-1.0 / 3.0 + 1.5j),
)


@dataclass(frozen=True)
class EvalOptions:
    """Numeric evaluation controls.

    ``theta_count`` truncates theta sums to nu in a + [-K, K]; ``tolerance``
    is the absolute error target for period integrals; ``tail_height`` is
    the upper quadrature limit, beyond which analytic bounds take over.
    """

    theta_count: int = 60
    tolerance: float = 1e-10
    tail_height: float = 40.0

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.theta_count < 1:
            raise ValueError("theta truncation count must be at least 1")
        if self.tail_height <= 0:
            raise ValueError("tail cutoff height must be positive")


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True)
class NumericValue:
    """A computed value together with an absolute error estimate."""

    value: complex
    error: float

    def __complex__(self) -> complex:
        return self.value


def _upper(z) -> complex:
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("evaluation requires Im z > 0")
    return z


def eval_qseries(f: QSeries, z, opts: EvalOptions = DEFAULT_OPTIONS) -> NumericValue:
    """Sum embed(c_e) q^e over the stored terms, q = exp(2 pi i z).

    The error field estimates the dropped tail: coefficients beyond the
    tracked bound are unknown, so the estimate scales the largest stored
    coefficient by the geometric weight |q|^bound / (1 - |q|).
    """
    z = _upper(z)
    total = 0j
    largest = 1.0
    for e, c in f.sorted_terms():
        w = c.embed()
        total += w * cmath.exp(2j * math.pi * float(e) * z)
        largest = max(largest, abs(w))
    if f.bound == INF:
        return NumericValue(total, 0.0)
    q_abs = math.exp(-TWO_PI * z.imag)
    tail = largest * q_abs ** float(f.bound) / (1.0 - q_abs)
    return NumericValue(total, tail)


def unary_theta(a, b, z, opts: EvalOptions = DEFAULT_OPTIONS) -> NumericValue:
    """g_{a,b}(z) = sum over nu in a + Z of nu exp(pi i nu^2 z + 2 pi i nu b),
    truncated symmetrically to nu in a + [-K, K]."""
    z = _upper(z)
    y = z.imag
    af = float(a)
    bf = float(b)
    k = opts.theta_count
    total = 0j
    for n in range(-k, k + 1):
        nu = af + n
        if nu == 0.0:
            continue
        total += nu * cmath.exp(1j * math.pi * nu * nu * z + 2j * math.pi * nu * bf)
    lo = abs(af - k)
    hi = abs(af + k)
    # The summand magnitude nu exp(-pi nu^2 y) must already be decreasing at
    # both truncation ends for the integral tail bound below to apply.
    if min(lo, hi) <= 1.0 / math.sqrt(TWO_PI * y):
        raise ConvergenceError(
            "theta truncation count %d too small for Im z = %g" % (k, y)
        )
    tail = (math.exp(-math.pi * lo * lo * y) + math.exp(-math.pi * hi * hi * y)) / (
        TWO_PI * y
    )
    return NumericValue(total, tail)


def R_integral(a, b, z, opts: EvalOptions = DEFAULT_OPTIONS) -> NumericValue:
    """The period integral R_{a,b}(z) = -i int_{-conj(z)}^{i inf}
    g_{a,-b}(tau) / sqrt(-i (tau + z)) dtau.

    On the vertical ray tau = -conj(z) + it the integrand is a sum of
    Gaussian kernels; each theta term nu contributes

        nu exp(-2 pi i nu b - pi i nu^2 x - pi nu^2 y)
           * int_0^inf exp(-pi nu^2 t) / sqrt(t + 2y) dt,

    integrated by adaptive quadrature on (0, tail_height] with an analytic
    bound for the remainder.  Terms are summed until their a-priori bound
    exp(-pi nu^2 y) drops below tolerance / 10.
    """
    z = _upper(z)
    x = z.real
    y = z.imag
    af = float(a)
    bf = float(b)
    cutoff = opts.tolerance / 10.0
    total = 0j
    err = 0.0

    def add_term(nu):
        nonlocal total, err
        # |nu| * int_0^inf exp(-pi nu^2 t) / sqrt(t + 2y) dt <= 1, so the
        # whole term is bounded by the Gaussian damping factor alone.
        damp = math.exp(-math.pi * nu * nu * y)
        if damp < cutoff:
            return damp
        s = math.pi * nu * nu
        # Small nu decays slowly along the ray; stretch the quadrature
        # cutoff until the analytic remainder bound clears the term budget.
        height = opts.tail_height
        while (
            math.exp(-s * height) / (s * math.sqrt(height + 2.0 * y)) > cutoff / 10.0
            and height < 1e7
        ):
            height *= 2.0
        val, quad_err = quad(
            lambda t: math.exp(-s * t) / math.sqrt(t + 2.0 * y),
            0.0,
            height,
            epsabs=cutoff / 10.0,
            epsrel=1e-12,
            limit=200,
        )
        ray_tail = math.exp(-s * height) / (s * math.sqrt(height + 2.0 * y))
        phase = cmath.exp(-2j * math.pi * nu * bf - 1j * s * x)
        total += nu * phase * damp * val
        err += abs(nu) * damp * (quad_err + ray_tail)
        return None

    for direction in (1, -1):
        start = 0 if direction == 1 else -1
        n = start
        while True:
            if abs(n - start) > opts.theta_count:
                raise ConvergenceError(
                    "theta terms did not decay within %d steps" % opts.theta_count,
                    achieved=err,
                )
            nu = af + n
            if nu != 0.0:
                skipped = add_term(nu)
                if skipped is not None and nu * direction > 0:
                    ratio = math.exp(-math.pi * (2.0 * abs(nu) + 1.0) * y)
                    err += skipped / (1.0 - ratio)
                    break
            n += direction

    if err > opts.tolerance:
        raise ConvergenceError(
            "error estimate %.3e exceeds tolerance %.3e" % (err, opts.tolerance),
            achieved=err,
        )
    return NumericValue(total, err)


def eval_completed(
    f: CompletedFunction, z, opts: EvalOptions = DEFAULT_OPTIONS
) -> NumericValue:
    """Holomorphic part plus the attached period-integral corrections."""
    if f.completion_unspecified:
        raise UnsupportedEvaluationError(
            "completion terms are not specified for this function"
        )
    z = _upper(z)
    acc = eval_qseries(f.holo, z, opts)
    total = acc.value
    err = acc.error
    for term in f.completion:
        arg = float(term.arg_scale) * z + float(term.arg_offset)
        part = R_integral(term.a, term.b, arg, opts)
        pre = term.prefactor.embed()
        total += pre * part.value
        err += abs(pre) * part.error
    return NumericValue(total, err)


@lru_cache(maxsize=None)
def _vector(name: str, bound):
    return build_F(bound) if name == "F" else build_G(bound)


def transformation_vector(name: str, bound=NUMERIC_BOUND) -> tuple:
    """The six completed components of the vector F or G."""
    if name not in ("F", "G"):
        raise ValueError("vector name must be 'F' or 'G'")
    return _vector(name, QQ(bound))


def half_weight_factor(z) -> complex:
    """(-iz)^(-1/2) on the principal branch, arg in (-pi, pi]."""
    return (-1j * complex(z)) ** -0.5


@dataclass(frozen=True)
class ResidualRow:
    """One component of a transformation check."""

    component: int
    z: complex
    lhs: complex
    rhs: complex
    abs_residual: float
    error_budget: float

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "z": [self.z.real, self.z.imag],
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_residual": self.abs_residual,
            "error_budget": self.error_budget,
        }


@dataclass(frozen=True)
class TransformationReport:
    """Residuals of one vector under one generator at one point."""

    generator: str
    vector: str
    rows: tuple

    @property
    def max_residual(self) -> float:
        return max(r.abs_residual for r in self.rows)

    @property
    def max_error_budget(self) -> float:
        return max(r.error_budget for r in self.rows)

    def passed(self, tolerance: float) -> bool:
        return self.max_residual < tolerance

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "vector": self.vector,
            "max_residual": self.max_residual,
            "max_error_budget": self.max_error_budget,
            "rows": [r.to_json() for r in self.rows],
        }


def check_T_transformation(
    vector: str, z, opts: EvalOptions = DEFAULT_OPTIONS, bound=NUMERIC_BOUND
) -> TransformationReport:
    """Residuals of F(z+1) - M_T F(z), componentwise."""
    comps = transformation_vector(vector, bound)
    z = _upper(z)
    here = [eval_completed(c, z, opts) for c in comps]
    there = [eval_completed(c, z + 1, opts) for c in comps]
    mt = m_T()
    rows = []
    for j in range(6):
        rhs = sum(mt[j][k].embed() * here[k].value for k in range(6))
        budget = there[j].error + sum(
            abs(mt[j][k].embed()) * here[k].error for k in range(6)
        )
        rows.append(
            ResidualRow(j, z, there[j].value, rhs, abs(there[j].value - rhs), budget)
        )
    return TransformationReport("T", vector, tuple(rows))


def check_S_transformation(
    vector: str, z, opts: EvalOptions = DEFAULT_OPTIONS, bound=NUMERIC_BOUND
) -> TransformationReport:
    """Residuals of z^(-1/2) F(-1/z) - zeta_8^(-1) sqrt(2/5) M_S F(z).

    The weight-1/2 factor z^(-1/2) is computed as zeta_8^(-1) times the
    principal branch of (-iz)^(-1/2), which is cut-free on the upper
    half-plane.
    """
    comps = transformation_vector(vector, bound)
    z = _upper(z)
    here = [eval_completed(c, z, opts) for c in comps]
    there = [eval_completed(c, -1.0 / z, opts) for c in comps]
    factor = ZETA8_INV * half_weight_factor(z)
    scalar = intertwining_scalar().embed()
    ms = m_S()
    rows = []
    for j in range(6):
        lhs = factor * there[j].value
        rhs = scalar * sum(ms[j][k].embed() * here[k].value for k in range(6))
        budget = abs(factor) * there[j].error + abs(scalar) * sum(
            abs(ms[j][k].embed()) * here[k].error for k in range(6)
        )
        rows.append(ResidualRow(j, z, lhs, rhs, abs(lhs - rhs), budget))
    return TransformationReport("S", vector, tuple(rows))


@lru_cache(maxsize=None)
def _eta_series(bound) -> QSeries:
    return eta(1, bound)


def eta_value(z, opts: EvalOptions = DEFAULT_OPTIONS, bound=QQ(60)) -> NumericValue:
    """Numeric value of the eta function from its q-expansion."""
    return eval_qseries(_eta_series(QQ(bound)), z, opts)


def eta_functional_residual(z, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """|eta(-1/z) - sqrt(-iz) eta(z)| with the principal square root."""
    z = _upper(z)
    lhs = eta_value(-1.0 / z, opts).value
    rhs = (-1j * z) ** 0.5 * eta_value(z, opts).value
    return abs(lhs - rhs)
