import math

import pytest

from windcournot.stochastic import (
    DuopolyCorrelation,
    JointAvailability,
    check_fosd,
    check_sosd,
    conditional_given_high,
    duopoly_conditional,
    duopoly_family,
    duopoly_joint,
    mixture_family,
    zeta,
)


@pytest.mark.parametrize("beta", [0.0, 1.0, -0.2, 1.3])
def test_correlation_rejects_bad_beta(beta):
    with pytest.raises(ValueError):
        DuopolyCorrelation(beta=beta, d=0.5)


@pytest.mark.parametrize("d", [-0.1, 1.1])
def test_correlation_rejects_bad_dispersion(d):
    with pytest.raises(ValueError):
        DuopolyCorrelation(beta=0.5, d=d)


def test_correlation_allows_endpoint_dispersion():
    DuopolyCorrelation(beta=0.5, d=0.0)
    DuopolyCorrelation(beta=0.5, d=1.0)


def test_conditional_values():
    corr = DuopolyCorrelation(beta=0.6, d=0.5)
    # beta + d(1 - beta) = 0.8
    assert duopoly_conditional(corr, "H", "H") == pytest.approx(0.75)
    assert duopoly_conditional(corr, "H", "L") == pytest.approx(0.25)
    assert duopoly_conditional(corr, "L", "H") == pytest.approx(0.375)
    assert duopoly_conditional(corr, "L", "L") == pytest.approx(0.625)


def test_conditional_endpoints():
    perfect = DuopolyCorrelation(beta=0.3, d=0.0)
    assert duopoly_conditional(perfect, "H", "H") == 1.0
    assert duopoly_conditional(perfect, "L", "H") == 0.0
    indep = DuopolyCorrelation(beta=0.3, d=1.0)
    assert duopoly_conditional(indep, "H", "H") == pytest.approx(0.3)
    assert duopoly_conditional(indep, "L", "H") == pytest.approx(0.3)


def test_conditional_rejects_unknown_state():
    corr = DuopolyCorrelation(beta=0.5, d=0.5)
    with pytest.raises(ValueError):
        duopoly_conditional(corr, "M", "H")
    with pytest.raises(ValueError):
        duopoly_conditional(corr, "H", "hi")


def test_joint_law_consistency():
    corr = DuopolyCorrelation(beta=0.4, d=0.7)
    jp = duopoly_joint(corr)
    assert math.fsum(jp.values()) == pytest.approx(1.0, abs=1e-15)
    assert jp[("H", "H")] + jp[("H", "L")] == pytest.approx(corr.beta)
    assert jp[("L", "H")] + jp[("L", "L")] == pytest.approx(1.0 - corr.beta)
    assert jp[("H", "L")] == pytest.approx(jp[("L", "H")], abs=1e-15)
    denom = corr.beta + corr.d * (1.0 - corr.beta)
    assert jp[("H", "H")] == pytest.approx(corr.beta ** 2 / denom)
    assert jp[("L", "H")] == pytest.approx((1.0 - corr.beta) * corr.d * corr.beta / denom)


def test_zeta_matches_mixed_state_derivative():
    beta = 0.45
    d = 0.6
    h = 1e-6
    up = duopoly_joint(DuopolyCorrelation(beta, d + h))[("L", "H")]
    dn = duopoly_joint(DuopolyCorrelation(beta, d - h))[("L", "H")]
    assert zeta(DuopolyCorrelation(beta, d)) == pytest.approx((up - dn) / (2 * h), rel=1e-6)


def test_zeta_positive_across_grid():
    for beta in (0.1, 0.5, 0.9):
        for d in (0.0, 0.3, 1.0):
            assert zeta(DuopolyCorrelation(beta, d)) > 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_plus_1": 1, "count_probs": (0.5, 0.5)},
        {"n_plus_1": 2, "count_probs": (0.5, 0.5)},
        {"n_plus_1": 2, "count_probs": (0.6, 0.5, -0.1)},
        {"n_plus_1": 2, "count_probs": (0.5, 0.4, 0.2)},
    ],
)
def test_joint_availability_rejects(kwargs):
    with pytest.raises(ValueError):
        JointAvailability(**kwargs)


def test_joint_availability_round_trip():
    dist = mixture_family(3, 0.4, 0.6)
    again = JointAvailability.from_dict(dist.to_dict())
    assert again == dist


def test_mixture_endpoints():
    two_point = mixture_family(3, 0.4, 0.0)
    assert two_point.count_probs == pytest.approx((0.6, 0.0, 0.0, 0.4))
    binom = mixture_family(3, 0.4, 1.0)
    expected = tuple(math.comb(3, k) * 0.4 ** k * 0.6 ** (3 - k) for k in range(4))
    assert binom.count_probs == pytest.approx(expected)


def test_mixture_marginal_invariant_in_d():
    for d in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert mixture_family(4, 0.3, d).marginal_beta == pytest.approx(0.3, abs=1e-15)


@pytest.mark.parametrize("beta,d", [(0.0, 0.5), (1.0, 0.5), (0.5, -0.1), (0.5, 1.5)])
def test_mixture_rejects_bad_parameters(beta, d):
    with pytest.raises(ValueError):
        mixture_family(3, beta, d)


def test_duopoly_family_matches_joint_law():
    corr = DuopolyCorrelation(beta=0.6, d=0.5)
    dist = duopoly_family(corr)
    jp = duopoly_joint(corr)
    assert dist.count_probs[0] == pytest.approx(jp[("L", "L")])
    assert dist.count_probs[1] == pytest.approx(jp[("L", "H")] + jp[("H", "L")])
    assert dist.count_probs[2] == pytest.approx(jp[("H", "H")])


def test_duopoly_family_agrees_with_mixture_only_at_endpoints():
    beta = 0.6
    for d in (0.0, 1.0):
        a = duopoly_family(DuopolyCorrelation(beta, d)).count_probs
        b = mixture_family(2, beta, d).count_probs
        assert a == pytest.approx(b, abs=1e-15)
    interior = duopoly_family(DuopolyCorrelation(beta, 0.5)).count_probs
    other = mixture_family(2, beta, 0.5).count_probs
    assert abs(interior[1] - other[1]) > 1e-3


def test_conditional_given_high_duopoly_consistency():
    corr = DuopolyCorrelation(beta=0.6, d=0.5)
    cond = conditional_given_high(duopoly_family(corr))
    assert math.fsum(cond) == pytest.approx(1.0, abs=1e-13)
    assert cond[1] == pytest.approx(duopoly_conditional(corr, "H", "H"))
    assert cond[0] == pytest.approx(duopoly_conditional(corr, "H", "L"))


def test_conditional_given_high_degenerate_raises():
    dist = JointAvailability(n_plus_1=2, count_probs=(1.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        conditional_given_high(dist)


def test_fosd_holds_along_mixture_dispersion():
    lo = conditional_given_high(mixture_family(4, 0.3, 0.2))
    hi = conditional_given_high(mixture_family(4, 0.3, 0.8))
    assert check_fosd(lo, hi)


def test_fosd_detects_violation():
    assert not check_fosd((1.0, 0.0), (0.0, 1.0))


def test_sosd_holds_along_mixture_dispersion():
    lo = mixture_family(4, 0.3, 0.2).count_probs
    hi = mixture_family(4, 0.3, 0.8).count_probs
    assert check_sosd(lo, hi)


def test_sosd_detects_violation():
    # spread the higher-d law instead of contracting it
    assert not check_sosd((0.0, 1.0, 0.0), (0.5, 0.0, 0.5))


@pytest.mark.parametrize("checker", [check_fosd, check_sosd])
def test_dominance_checks_reject_shape_mismatch(checker):
    with pytest.raises(ValueError):
        checker((0.5, 0.5), (0.3, 0.3, 0.4))
