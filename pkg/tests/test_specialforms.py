"""Named series, their completions, and the registered identities."""

import random

import pytest

from mocktheta.cyclofield import QQ, CycloNum, FieldAutomorphism, sigma, tau, zeta
from mocktheta.errors import InsufficientPrecisionError, PrecisionRefusalError
from mocktheta.qseries import INF, QSeries, compare
from mocktheta.specialforms import (
    IDENTITY_BUILDERS,
    IDENTITY_NAMES,
    LEMMA_IDENTITIES,
    MTC_IDENTITIES,
    REMAINING_IDENTITIES,
    CompletedFunction,
    CompletionTerm,
    M_series,
    N_series,
    build_F,
    build_G,
    canonical_completion,
    completed,
    eta,
    eta_quotient,
    generalized_eta,
    mock_theta,
    psi_theta,
    required_bound,
    rogers_ramanujan,
    theta4,
    verify_identity,
)

# Leading coefficients of the ten mock theta series, frozen after checking
# the fifth-order ones against their classical partition interpretations.
MOCK_THETA_HEADS = {
    "f0": [1, 1, -1, 1, 0, 0, -1, 1, 0, 1, -2, 1],
    "f1": [1, 0, 1, -1, 1, -1, 2, -2, 1, -1, 2, -2],
    "F0": [1, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 3],
    "F1": [1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4],
    "psi0": [0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1],
    "psi1": [1, 1, 1, 1, 1, 1, 2, 1, 1, 2, 2, 2],
    "phi0": [1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0],
    "phi1": [0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0],
    "chi0": [1, 1, 1, 2, 1, 3, 2, 3, 3, 5, 3, 6],
    "chi1": [1, 2, 2, 3, 3, 4, 4, 6, 5, 7, 8, 9],
}


def _int_heads(f, count):
    out = []
    for n in range(count):
        c = f.coefficient(n)
        assert c.is_rational()
        out.append(int(c.rational_value()))
    return out


def test_mock_theta_expansions():
    for name, heads in MOCK_THETA_HEADS.items():
        f = mock_theta(name, QQ(13))
        assert _int_heads(f, 12) == heads, name


def test_unknown_mock_theta_rejected():
    with pytest.raises(ValueError):
        mock_theta("f2", QQ(5))


def test_rogers_ramanujan_partition_counts():
    # G counts partitions into parts 1, 4 mod 5; H into parts 2, 3 mod 5
    g = rogers_ramanujan("G", bound=QQ(13))
    h = rogers_ramanujan("H", bound=QQ(13))
    assert _int_heads(g, 12) == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7]
    assert _int_heads(h, 12) == [1, 0, 1, 1, 1, 1, 2, 2, 3, 3, 4, 4]


def test_weighted_rogers_ramanujan_product():
    # g h = eta(5z) / eta(z): the q^(-1/60) and q^(11/60) weights cancel the
    # eta prefactors exactly
    b = QQ(25)
    gh = rogers_ramanujan("g", bound=b) * rogers_ramanujan("h", bound=b)
    quot = eta_quotient({5: 1, 1: -1}, b)
    assert compare(gh, quot, up_to=min(gh.bound, quot.bound)).equal


def test_eta_leading_terms():
    f = eta(1, QQ(3))
    assert f.ldeg() == QQ(1, 24)
    assert f.coefficient(QQ(1, 24)) == CycloNum(1)
    assert f.coefficient(QQ(25, 24)) == CycloNum(-1)
    g = eta(5, QQ(3))
    assert g.ldeg() == QQ(5, 24)


def test_theta4_series():
    t4 = theta4(QQ(12))
    assert _int_heads(t4, 11) == [1, -2, 0, 0, 2, 0, 0, 0, 0, -2, 0]
    # dual route: the eta-quotient form eta(z)^2 / eta(2z)
    quot = eta_quotient({1: 2, 2: -1}, QQ(12))
    assert compare(t4, quot, up_to=12).equal


def test_psi_theta_series():
    ps = psi_theta(QQ(12))
    assert [e for e, _ in ps.sorted_terms()] == [0, 1, 3, 6, 10]
    # dual route: q^(-1/8) eta(2z)^2 / eta(z)
    quot = eta_quotient({2: 2, 1: -1}, QQ(12)) * QSeries.monomial(QQ(-1, 8), 1, INF)
    assert compare(ps, quot, up_to=min(ps.bound, quot.bound)).equal


def test_generalized_eta_leading_exponents():
    assert generalized_eta(10, 1, QQ(3)).ldeg() == QQ(23, 60)
    assert generalized_eta(10, 3, QQ(3)).ldeg() == QQ(-13, 60)
    with pytest.raises(ValueError):
        generalized_eta(10, 5, QQ(3))


def test_m_series_symmetry_and_lattice():
    # M(a/5) = M(1 - a/5)
    assert compare(M_series(1, QQ(8)), M_series(4, QQ(8)), up_to=8).equal
    assert compare(M_series(2, QQ(8)), M_series(3, QQ(8)), up_to=8).equal
    # exponents lie on a (1/5) Z lattice
    for e, _ in M_series(1, QQ(6)).sorted_terms():
        assert (e * 5) == int(e * 5)


def test_n_series_sigma_exchange():
    n1 = N_series(1, QQ(31))
    n2 = N_series(2, QQ(31))
    assert compare(n1.map_coefficients(sigma()), n2, up_to=30).equal
    assert compare(n2.map_coefficients(sigma()), n1, up_to=30).equal


def test_completed_f0_shape():
    c = completed("f0", QQ(10))
    assert c.holo.ldeg() == QQ(-1, 60)
    assert not c.completion_unspecified
    sigs = [(t.a, t.b, t.arg_scale, t.arg_offset) for t in c.completion]
    assert sigs == [
        (QQ(1, 30), QQ(1, 2), QQ(30), QQ(0)),
        (QQ(11, 30), QQ(1, 2), QQ(30), QQ(0)),
    ]
    # prefactors are -zeta_10 zeta_12^-1 and -zeta_10 zeta_12
    assert c.completion[0].prefactor == -zeta(10) * zeta(12).inverse()
    assert c.completion[1].prefactor == -zeta(10) * zeta(12)


def test_completed_m_lattice_and_prefactors():
    m1 = completed("M1", QQ(4))
    lead = QQ(119, 600)
    assert m1.holo.ldeg() == lead
    for e, _ in m1.holo.sorted_terms():
        step = (e - lead) * 5
        assert step == int(step)
    assert [t.arg_scale for t in m1.completion] == [QQ(3), QQ(3)]
    assert m1.completion[0].prefactor == zeta(10) * zeta(12).inverse()


def test_completed_n_marks_completion_unspecified():
    c = completed("N1", QQ(6))
    assert c.completion_unspecified
    assert c.completion == ()


def test_completed_phi_packages_minus_q():
    # the completed phi functions carry phi(-q): odd exponents flip sign
    raw = mock_theta("phi0", QQ(10))
    packed = completed("phi0", QQ(9))
    lead = QQ(-1, 120)
    for n in range(9):
        want = raw.coefficient(n) * (1 if n % 2 == 0 else -1)
        assert packed.holo.coefficient(n + lead) == want


def test_completion_term_validation():
    with pytest.raises(ValueError):
        CompletionTerm(CycloNum(1), QQ(3, 2), QQ(1, 2), QQ(1))
    with pytest.raises(ValueError):
        CompletionTerm(CycloNum(1), QQ(1, 2), QQ(1, 2), QQ(-1))


def test_canonical_completion_merges_and_drops():
    t1 = CompletionTerm(CycloNum(1), QQ(1, 30), QQ(1, 2), QQ(3))
    t2 = CompletionTerm(CycloNum(2), QQ(1, 30), QQ(1, 2), QQ(3))
    t3 = CompletionTerm(CycloNum(-3), QQ(1, 30), QQ(1, 2), QQ(3))
    assert canonical_completion([t1, t2])[0].prefactor == CycloNum(3)
    assert canonical_completion([t1, t2, t3]) == ()


def test_completed_function_algebra():
    a = completed("f0", QQ(8))
    b = completed("f1", QQ(8))
    total = a + b
    assert len(total.completion) == 4
    diff = a - a
    assert diff.holo.is_zero()
    assert canonical_completion(diff.completion) == ()
    scaled = a.scalar_mul(CycloNum(2))
    assert scaled.holo.coefficient(QQ(-1, 60)) == CycloNum(2)
    assert scaled.completion[0].prefactor == a.completion[0].prefactor * 2


def test_build_f_principal_parts():
    comps = build_F(QQ(6))
    for k, comp in enumerate(comps):
        principal = [e for e, _ in comp.holo.sorted_terms() if e < 0]
        assert principal == ([QQ(-1, 60)] if k == 0 else [])


def test_f_and_g_components_agree():
    bound = QQ(16)
    fs = build_F(bound)
    gs = build_G(bound)
    for f, g in zip(fs, gs):
        limit = min(f.holo.bound, g.holo.bound)
        assert limit >= bound
        assert compare(f.holo, g.holo, up_to=bound).equal
        assert canonical_completion(f.completion) == canonical_completion(g.completion)


def test_registered_identity_names():
    assert set(MTC_IDENTITIES) <= set(IDENTITY_NAMES)
    assert set(LEMMA_IDENTITIES) <= set(IDENTITY_NAMES)
    assert set(REMAINING_IDENTITIES) <= set(IDENTITY_NAMES)
    assert len(IDENTITY_NAMES) == 17


def test_required_bound_is_sturm():
    assert required_bound() == 16


def test_all_identities_hold_at_sturm_bound():
    for name in IDENTITY_NAMES:
        rep = verify_identity(name, bound=16)
        assert rep.equal, name
        assert rep.checked_to == QQ(16)


def test_mtc_identities_match_completions():
    for name in MTC_IDENTITIES:
        rep = verify_identity(name, bound=16)
        assert rep.completions == "equal"


def test_lemma_identities_skip_completion_comparison():
    rep = verify_identity("lemma3", bound=16)
    assert rep.completions == "not-compared"


def test_identity_report_carries_mismatch_details():
    name = "mtc1"
    real = IDENTITY_BUILDERS[name]

    def corrupted(bound):
        inst = real(bound)
        from dataclasses import replace

        bumped = replace(
            inst.lhs, holo=inst.lhs.holo + QSeries.monomial(5, 1, bound)
        )
        return replace(inst, lhs=bumped)

    IDENTITY_BUILDERS[name] = corrupted
    try:
        rep = verify_identity(name, bound=16)
    finally:
        IDENTITY_BUILDERS[name] = real
    assert not rep.equal
    assert rep.mismatch_exponent == 5
    assert rep.lhs_coefficient - rep.rhs_coefficient == CycloNum(1)
    data = rep.to_json()
    assert data["status"] == "mismatch"
    assert data["first_mismatch_exp"] == "5"


def test_sturm_guard_refuses_low_bounds():
    with pytest.raises(PrecisionRefusalError):
        verify_identity("mtc1", bound=2)
    rep = verify_identity("mtc1", bound=2, force=True)
    assert rep.equal
    assert rep.checked_to == QQ(2)


def test_unknown_identity_rejected():
    with pytest.raises(ValueError):
        verify_identity("mtc99")


def test_lemma_pair_exchanged_by_tau():
    bound = QQ(16)
    weight = eta(1, bound + 1)
    sides = {}
    for name in ("lemma3", "lemma4"):
        inst = IDENTITY_BUILDERS[name](bound)
        assert inst.multiply_eta
        sides[name] = (weight * inst.lhs.holo, weight * inst.rhs.holo)
    for k in range(2):
        mapped = sides["lemma3"][k].map_coefficients(tau())
        assert compare(mapped, sides["lemma4"][k], up_to=bound).equal


def test_golden_lemma_coefficients_live_in_the_real_quartic_field():
    # automorphisms fixing alpha and beta must fix every coefficient of the
    # eta-weighted comparison
    bound = QQ(10)
    inst = IDENTITY_BUILDERS["lemma3"](bound)
    series = eta(1, bound + 1) * inst.lhs.holo
    from math import gcd

    from mocktheta.cyclofield import alpha, beta

    fixing = []
    for k in range(1, 240):
        if gcd(k, 240) != 1:
            continue
        phi = FieldAutomorphism(k)
        if phi(alpha()) == alpha() and phi(beta()) == beta():
            fixing.append(phi)
    assert len(fixing) > 1
    for phi in fixing:
        assert compare(series.map_coefficients(phi), series, up_to=bound).equal


def test_identity_builders_balance_leading_exponents():
    rng = random.Random(7)
    names = list(IDENTITY_NAMES)
    for name in rng.sample(names, 8):
        inst = IDENTITY_BUILDERS[name](QQ(8))
        assert inst.lhs.holo.ldeg() == inst.rhs.holo.ldeg(), name
