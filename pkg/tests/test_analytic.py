"""Numeric evaluation: q-series, theta sums, period integrals, transformations."""

import cmath
import math

import pytest
from scipy.special import erfcx, gamma

from mocktheta.analytic import (
    SAMPLE_POINTS,
    EvalOptions,
    SamplePoint,
    R_integral,
    check_S_transformation,
    check_T_transformation,
    eta_functional_residual,
    eta_value,
    eval_completed,
    eval_qseries,
    half_weight_factor,
    transformation_vector,
    unary_theta,
)
from mocktheta.cyclofield import QQ, zeta
from mocktheta.errors import ConvergenceError, UnsupportedEvaluationError
from mocktheta.qseries import QSeries
from mocktheta.specialforms import completed, eta_quotient, rogers_ramanujan


def _r_closed_form(a, b, z, count=80):
    """Independent route: R_{a,b} as a sum of scaled complementary error
    functions, sum over nu of sgn(nu) e^{-2 pi i nu b - pi i nu^2 Re z}
    e^{-pi nu^2 Im z} erfcx(|nu| sqrt(2 pi Im z))."""
    x, y = z.real, z.imag
    total = 0j
    for n in range(-count, count + 1):
        nu = float(a) + n
        if nu == 0.0:
            continue
        total += (
            math.copysign(1.0, nu)
            * cmath.exp(-2j * math.pi * nu * float(b) - 1j * math.pi * nu * nu * x)
            * math.exp(-math.pi * nu * nu * y)
            * erfcx(abs(nu) * math.sqrt(2.0 * math.pi * y))
        )
    return total


def test_sample_points_validate():
    assert complex(SamplePoint(2j)) == 2j
    with pytest.raises(ValueError):
        SamplePoint(1 - 1j)
    assert all(complex(p).imag > 0 for p in SAMPLE_POINTS)


def test_eval_options_validate():
    with pytest.raises(ValueError):
        EvalOptions(tolerance=0.0)
    with pytest.raises(ValueError):
        EvalOptions(theta_count=0)
    with pytest.raises(ValueError):
        EvalOptions(tail_height=-1.0)


def test_eval_qseries_constant_and_domain():
    out = eval_qseries(QSeries.one(), 0.3 + 0.9j)
    assert out.value == 1.0 + 0j
    assert out.error == 0.0
    with pytest.raises(ValueError):
        eval_qseries(QSeries.one(), 1.0 - 0.5j)


def test_eval_qseries_tail_estimate_covers_truncation():
    z = 0.1 + 1.0j
    full = eval_qseries(eta_quotient({1: 1}, bound=QQ(60)), z)
    short = eval_qseries(eta_quotient({1: 1}, bound=QQ(20)), z)
    assert abs(full.value - short.value) <= short.error
    assert short.error < 1e-8


def test_eta_special_value_at_i():
    # eta(i) = Gamma(1/4) / (2 pi^(3/4))
    target = gamma(0.25) / (2.0 * math.pi**0.75)
    out = eta_value(1j)
    assert abs(out.value - target) < 1e-12


def test_eta_functional_equation():
    for z in (1j, 2j, 0.25 + 1j, -1.0 / 3.0 + 1.5j, 0.3 + 0.7j):
        assert eta_functional_residual(z) < 1e-9, z


def test_rogers_ramanujan_product_matches_eta_quotient():
    # g(z) h(z) = eta(5z) / eta(z)
    z = 0.1 + 0.5j
    g = eval_qseries(rogers_ramanujan("g", bound=QQ(40)), z)
    h = eval_qseries(rogers_ramanujan("h", bound=QQ(40)), z)
    quotient = eval_qseries(eta_quotient({5: 1, 1: -1}, bound=QQ(40)), z)
    assert abs(g.value * h.value - quotient.value) < 1e-8


def test_unary_theta_zero_characteristic_vanishes():
    out = unary_theta(0, 0, 0.2 + 0.8j)
    assert abs(out.value) < 1e-15


def test_unary_theta_symmetries():
    z = 0.15 + 0.9j
    a, b = QQ(1, 30), QQ(1, 2)
    base = unary_theta(a, b, z)
    odd = unary_theta(-a, -b, z)
    assert abs(odd.value + base.value) < 1e-14
    shifted = unary_theta(a, b + 1, z)
    twist = cmath.exp(2j * math.pi / 30.0)
    assert abs(shifted.value - twist * base.value) < 1e-14
    # a is only defined mod 1
    assert abs(unary_theta(a + 1, b, z).value - base.value) < 1e-14


def test_unary_theta_truncation_is_self_consistent():
    z = -0.3 + 1.1j
    coarse = unary_theta(QQ(1, 30), QQ(1, 2), z, EvalOptions(theta_count=25))
    fine = unary_theta(QQ(1, 30), QQ(1, 2), z, EvalOptions(theta_count=120))
    assert abs(coarse.value - fine.value) <= coarse.error + fine.error
    assert fine.error < 1e-30


def test_unary_theta_refuses_hopeless_truncation():
    with pytest.raises(ConvergenceError):
        unary_theta(0, 0, 0.1j, EvalOptions(theta_count=1))


def test_r_integral_matches_error_function_route():
    for a, b, z in (
        (QQ(1, 30), QQ(1, 2), 1j),
        (QQ(11, 30), QQ(1, 2), 0.25 + 1j),
        (QQ(7, 30), QQ(1, 2), -0.4 + 0.7j),
        (QQ(1, 30), QQ(1, 2), 30j),
    ):
        out = R_integral(a, b, z)
        target = _r_closed_form(a, b, complex(z))
        assert abs(out.value - target) <= out.error + 1e-10, (a, b, z)
        assert out.error < 1e-10


def test_r_integral_decays_up_the_imaginary_axis():
    a, b = QQ(1, 30), QQ(1, 2)
    sizes = [abs(R_integral(a, b, t * 1j).value) for t in (1.0, 2.0, 4.0, 8.0)]
    assert sizes == sorted(sizes, reverse=True)
    assert sizes[0] > 0.5


def test_r_integral_quadrature_cutoff_is_stretched_not_trusted():
    # a fixed low ceiling must not change the answer beyond the estimates
    a, b, z = QQ(1, 30), QQ(1, 2), 1j
    low = R_integral(a, b, z, EvalOptions(tail_height=1.0))
    high = R_integral(a, b, z, EvalOptions(tail_height=200.0))
    assert abs(low.value - high.value) <= low.error + high.error


def test_r_integral_refuses_unreachable_tolerance():
    with pytest.raises(ConvergenceError) as info:
        R_integral(QQ(1, 30), QQ(1, 2), 0.5j, EvalOptions(theta_count=1))
    assert info.value.achieved is None or info.value.achieved >= 0.0


def test_eval_completed_requires_specified_completion():
    with pytest.raises(UnsupportedEvaluationError):
        eval_completed(completed("N1", bound=QQ(10)), 1j)


def test_eval_completed_t_periodicity():
    # component f0-tilde picks up zeta_60^(-1) under z -> z + 1
    f = completed("f0", bound=QQ(40))
    z = 0.1 + 0.9j
    here = eval_completed(f, z)
    there = eval_completed(f, z + 1)
    twist = zeta(60, 59).embed()
    assert abs(there.value - twist * here.value) <= there.error + here.error + 1e-12


def test_half_weight_factor_branch():
    assert abs(half_weight_factor(1j) - 1.0) < 1e-15
    for z in (1j, -0.9 + 0.1j, 0.9 + 0.1j, -2.0 + 0.05j):
        w = half_weight_factor(z)
        assert abs(w * w * (-1j * z) - 1.0) < 1e-12
        assert w.real > 0


def test_transformation_vector_names_and_cache():
    with pytest.raises(ValueError):
        transformation_vector("X")
    assert transformation_vector("F") is transformation_vector("F")
    assert len(transformation_vector("G")) == 6


def test_t_transformation_residuals():
    report = check_T_transformation("F", 1j)
    assert report.generator == "T"
    assert report.max_residual < 1e-10
    assert report.passed(1e-10)
    data = report.to_json()
    assert len(data["rows"]) == 6
    assert data["rows"][0]["component"] == 0


def test_s_transformation_residuals():
    for vector, z in (("F", 1j), ("G", 0.25 + 1j)):
        report = check_S_transformation(vector, z)
        assert report.max_residual < 1e-6, (vector, z)
        assert report.max_error_budget < 1e-8, (vector, z)
