"""Group indices, cusp classes, ST-words, multipliers, invariant orders."""

import random
from math import gcd

import pytest

from mocktheta.analytic import eta_value
from mocktheta.cyclofield import QQ, CycloNum, zeta
from mocktheta.errors import FormulaDomainError
from mocktheta.modgroup import (
    IDENTITY,
    REFERENCE_CUSPS_50_5,
    S,
    T,
    CuspPoint,
    GroupContext,
    GroupElement,
    cusp_class,
    cusp_equivalent,
    cusp_representatives,
    cusps_cover_all_classes,
    decompose_ST,
    eta_multiplier_pow,
    eta_multiplier_sq,
    gamma_n,
    index,
    min_ord_over_table,
    ord_gh_at_cusp,
    ord_m25_at,
    ord_scale,
    ord_table_infty,
    R_lower_bound,
    scaling_matrix,
    sturm_bound,
)


def _psi(n):
    out = n
    for p in {f for f in range(2, n + 1) if n % f == 0 and all(f % d for d in range(2, f))}:
        out += out // p
    return out


def _phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _index_oracle(N, M):
    """psi(N) phi(M), halved projectively when -I leaves the group."""
    raw = _psi(N) * _phi(M)
    return raw if M <= 2 else raw // 2


def _random_gamma(rng, ctx, size=40):
    """A random element of the group, built as a product of generators."""
    n = ctx.N
    gens = [
        GroupElement(1, 1, 0, 1),
        GroupElement(1, 0, n, 1),
        GroupElement(1 + ctx.M * n, ctx.M, n, 1),
    ]
    g = IDENTITY
    for _ in range(rng.randint(1, size)):
        pick = rng.choice(gens)
        g = g * (pick if rng.random() < 0.5 else pick.inverse())
    return g


def test_group_element_basics():
    assert T * S == GroupElement(1, -1, 1, 0)
    assert S * S == -IDENTITY
    assert (T**5).b == 5
    assert T.inverse() * T == IDENTITY
    with pytest.raises(ValueError):
        GroupElement(1, 1, 1, 1)


def test_group_context_requires_divisibility():
    with pytest.raises(ValueError):
        GroupContext(50, 3)
    ctx = GroupContext(50, 5)
    assert ctx.contains(GroupElement(1, 0, 50, 1))
    assert not ctx.contains(GroupElement(1, 0, 5, 1))
    # a = d = 1 mod 5 required
    assert not ctx.contains(GroupElement(3, 1, 50, 17))


def test_index_against_closed_formula():
    for nm in ((50, 5), (10, 5), (25, 5), (50, 1), (10, 1), (2, 2), (1, 1)):
        ctx = GroupContext(*nm)
        assert index(ctx) == _index_oracle(*nm), nm
    assert index(GroupContext(50, 5)) == 180


def test_sturm_bounds():
    assert sturm_bound(1, GroupContext(50, 5)) == 16
    assert sturm_bound(1, GroupContext(10, 5)) == 4
    assert sturm_bound(1, GroupContext(50, 1)) == 8
    assert sturm_bound(2, GroupContext(1, 1)) == 1


def test_cusp_point_forms():
    assert str(CuspPoint.infinity()) == "oo"
    assert CuspPoint.parse("13/50") == CuspPoint(13, 50)
    assert CuspPoint.of(-2, -4) == CuspPoint(1, 2)
    assert CuspPoint.parse("0") == CuspPoint(0, 1)
    with pytest.raises(ValueError):
        CuspPoint(2, 4)


def test_scaling_matrix_sends_infinity_to_cusp():
    for cusp in REFERENCE_CUSPS_50_5:
        g = scaling_matrix(cusp)
        assert g.apply(CuspPoint.infinity()) == cusp


def test_cusp_count_and_reference_list():
    ctx = GroupContext(50, 5)
    reps = cusp_representatives(ctx)
    assert len(reps) == 24
    assert len(REFERENCE_CUSPS_50_5) == 24
    assert cusps_cover_all_classes(ctx, REFERENCE_CUSPS_50_5)
    assert cusps_cover_all_classes(ctx, reps)


def test_reference_cusps_pairwise_inequivalent_by_double_coset():
    # the double-coset route is independent of the orbit enumeration
    ctx = GroupContext(50, 5)
    for i, c1 in enumerate(REFERENCE_CUSPS_50_5):
        for c2 in REFERENCE_CUSPS_50_5[i + 1 :]:
            assert not cusp_equivalent(ctx, c1, c2), (str(c1), str(c2))


def test_orbit_and_double_coset_routes_agree():
    ctx = GroupContext(50, 5)
    rng = random.Random(8)
    points = [CuspPoint.infinity(), CuspPoint(0, 1)]
    points += [CuspPoint.of(rng.randint(-30, 30), rng.randint(1, 60)) for _ in range(16)]
    for i, c1 in enumerate(points):
        for c2 in points[i + 1 :]:
            same_orbit = cusp_class(ctx, c1) == cusp_class(ctx, c2)
            assert same_orbit == cusp_equivalent(ctx, c1, c2), (str(c1), str(c2))


def test_group_action_preserves_cusp_class():
    ctx = GroupContext(50, 5)
    rng = random.Random(9)
    for _ in range(25):
        g = _random_gamma(rng, ctx)
        assert ctx.contains(g)
        cusp = CuspPoint.of(rng.randint(-20, 20), rng.randint(0, 40))
        assert cusp_class(ctx, g.apply(cusp)) == cusp_class(ctx, cusp)


def test_decompose_st_known_word():
    g = GroupElement(13, 6, 2, 1)
    word = decompose_ST(g)
    assert str(word) == "- T^6 S T^-2 S"
    assert word.evaluate() == g


def test_decompose_st_round_trip_random():
    rng = random.Random(10)
    for _ in range(60):
        g = IDENTITY
        for _ in range(rng.randint(1, 12)):
            g = g * (T ** rng.randint(-4, 4)) * S
        g = g * T ** rng.randint(-4, 4)
        assert decompose_ST(g).evaluate() == g


def test_eta_multiplier_known_values():
    assert eta_multiplier_sq(T) == zeta(12)
    assert eta_multiplier_sq(T**6) == zeta(2)
    assert eta_multiplier_pow(T, 24) == CycloNum(1)
    with pytest.raises(FormulaDomainError):
        eta_multiplier_sq(S)
    with pytest.raises(ValueError):
        eta_multiplier_pow(T, 3)


def test_eta_multiplier_against_numeric_transformation():
    # eta(gz)^2 = v^2(g) (cz + d) eta(z)^2 with the series-evaluated eta;
    # the c = 50 case sits on its isometric circle so both sides converge
    cases = [
        (GroupElement(1, 0, 2, 1), 0.3 + 0.8j, QQ(60), 1e-12),
        (GroupElement(3, 1, 2, 1), 0.3 + 0.8j, QQ(60), 1e-12),
        (GroupElement(5, 2, 2, 1), 0.3 + 0.8j, QQ(60), 1e-12),
        (GroupElement(1, 1, 0, 1), 0.3 + 0.8j, QQ(60), 1e-12),
        (GroupElement(7, 3, 2, 1), 0.3 + 0.8j, QQ(60), 1e-12),
        (GroupElement(3, 1, 50, 17), -0.34 + 0.02j, QQ(400), 1e-9),
    ]
    for g, z, bound, tol in cases:
        gz = (g.a * z + g.b) / (g.c * z + g.d)
        lhs = eta_value(gz, bound=bound).value ** 2
        rhs = (
            eta_multiplier_sq(g).embed()
            * (g.c * z + g.d)
            * eta_value(z, bound=bound).value ** 2
        )
        assert abs(lhs - rhs) < tol, (g.a, g.b, g.c, g.d)


def test_gamma_n_companion():
    g = GroupElement(1, 0, 50, 1)
    h = gamma_n(g, 25)
    assert (h.a, h.b, h.c, h.d) == (1, 0, 2, 1)
    with pytest.raises(ValueError):
        gamma_n(GroupElement(1, 0, 2, 1), 25)


def test_ord_table_values():
    assert ord_table_infty(("M", 1)) == QQ(119, 600)
    assert ord_table_infty(("M", 2)) == QQ(191, 600)
    assert ord_table_infty(("N", 1)) == QQ(-1, 24)
    assert ord_table_infty(("N", 0, 1)) == QQ(59, 600)
    assert ord_table_infty(("N", 0, 2)) == QQ(71, 600)
    assert ord_table_infty(("N", 0, 3)) == QQ(371, 600)
    assert ord_table_infty(("N", 0, 4)) == QQ(359, 600)
    with pytest.raises(FormulaDomainError):
        ord_table_infty(("N", 0))
    with pytest.raises(ValueError):
        ord_table_infty(("X", 1))


def test_min_ord_over_table():
    assert min_ord_over_table() == QQ(-1, 24)


def test_ord_scale_law():
    # with base ord f at N r / s, a width factor (N, s)^2 / N applies
    base = lambda c: QQ(1)
    assert ord_scale(25, CuspPoint(13, 50), base) == 25
    assert ord_scale(25, CuspPoint(1, 1), base) == QQ(1, 25)
    assert ord_scale(25, CuspPoint.infinity(), base) == 25
    with pytest.raises(ValueError):
        ord_scale(0, CuspPoint(1, 1), base)


def test_ord_m25_values():
    assert ord_m25_at(1) == 9
    assert ord_m25_at(2) == 6
    with pytest.raises(FormulaDomainError):
        ord_m25_at(1, CuspPoint(1, 2))


def test_ord_gh_at_cusps():
    assert ord_gh_at_cusp("g", CuspPoint(2, 5)) == QQ(11, 60)
    assert ord_gh_at_cusp("g", CuspPoint(1, 5)) == QQ(-1, 60)
    assert ord_gh_at_cusp("h", CuspPoint(1, 5)) == QQ(11, 60)
    assert ord_gh_at_cusp("h", CuspPoint(0, 1)) == QQ(-1, 60)
    with pytest.raises(ValueError):
        ord_gh_at_cusp("G", CuspPoint(1, 5))


def test_r_lower_bounds_nonnegative_on_divisors_of_50():
    assert R_lower_bound(1) == QQ(1, 25)
    assert R_lower_bound(2) == QQ(1, 25)
    for s in (1, 2, 5, 10, 25, 50):
        assert R_lower_bound(s) >= 0, s
    with pytest.raises(ValueError):
        R_lower_bound(0)
