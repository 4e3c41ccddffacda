"""Cartel sustainability and voluntary information sharing, linear demand.

Colluding producers pool monopoly profit whenever at least one of them is
in the high state, with a side payment to a low-state partner: the high
producer keeps a share 1 - t and transfers t.  Whether some t satisfies
incentive compatibility and both participation constraints is a pure
bound comparison, so everything here is closed-form algebra on top of the
competitive equilibrium output phi.

The information-sharing results live on the s = 1 normalization.  Each
closed form is evaluated next to an independent four-state enumeration of
the same expectation and the two must agree to 1e-12; the enumeration is
the value actually returned.
"""

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .demand import linear_demand, price, utility
from .equilibrium import phi_closed_form_linear
from .errors import AssumptionViolation, OracleDisagreement
from .stochastic import DuopolyCorrelation, duopoly_conditional, duopoly_joint

__all__ = [
    "CollusionParams",
    "TransferBounds",
    "CollusionOutcome",
    "monopoly_profit",
    "low_profit",
    "transfer_bounds",
    "gamma_hat",
    "collusion_outcomes",
    "collusion_value",
    "collusion_welfare_cost",
    "info_sharing_welfare_gain",
    "info_sharing_profit_gain",
    "l_star",
]


@dataclass(frozen=True)
class CollusionParams:
    """Primitives of the collusion game.

    gamma is the expected penalty a colluding producer faces (detection
    probability times fine), entering both participation constraints.
    The high capacity H never appears: the cartel's high-state producer
    needs at most s/2 - L <= H, guaranteed by the interior regime.
    """

    s: float
    beta: float
    d: float
    L: float
    gamma: float = 0.0

    def __post_init__(self) -> None:
        if self.s <= 0.0:
            raise ValueError("demand intercept s must be positive")
        if not 0.0 < self.L < self.s / 3.0:
            raise ValueError(
                f"need 0 < L < s/3 for the competitive benchmark, got L={self.L!r}"
            )
        if self.gamma < 0.0:
            raise ValueError("expected penalty gamma must be nonnegative")
        self.correlation()

    def correlation(self) -> DuopolyCorrelation:
        return DuopolyCorrelation(beta=self.beta, d=self.d)

    def phi(self) -> float:
        return phi_closed_form_linear(self.s, self.beta, self.d, self.L)


def monopoly_profit(s: float) -> float:
    """Joint profit at the monopoly quantity s/2: s^2/4."""
    return s * s / 4.0


def low_profit(s: float, L: float) -> float:
    """Per-producer profit when both are low and sell L: (s - 2L) L."""
    return (s - 2.0 * L) * L


@dataclass(frozen=True)
class TransferBounds:
    """Constraints on the transfer share t.

    ub_ic caps t so a high producer prefers honest collusion to cheating;
    ub_irh caps it so the high producer joins at all; lb_irl is the floor
    below which a low producer walks away.  ub_irh is +inf at d = 0,
    where a low producer never meets a high partner and the high-side
    participation constraint cannot bind through t.
    """

    lb_irl: float
    ub_ic: float
    ub_irh: float
    feasible: bool
    interval: tuple[float, float] | None


def _gamma_over(gamma: float, prob: float, pi_m: float) -> float:
    """gamma / (prob * pi_m) with the 0/0 convention gamma = 0 -> 0."""
    if gamma == 0.0:
        return 0.0
    if prob == 0.0:
        return math.inf
    return gamma / (prob * pi_m)


def transfer_bounds(params: CollusionParams) -> TransferBounds:
    """Evaluate the three transfer constraints at the competitive phi."""
    s, L, gamma = params.s, params.L, params.gamma
    corr = params.correlation()
    phi = params.phi()
    pi_m = monopoly_profit(s)
    pi_l = low_profit(s, L)
    p_hh = duopoly_conditional(corr, "H", "H")
    p_lh = duopoly_conditional(corr, "H", "L")
    p_hl = duopoly_conditional(corr, "L", "H")

    ub_ic = 0.5 * p_hh + p_lh * (1.0 - pi_l / pi_m)
    if params.d == 0.0:
        ub_irh = math.inf
    else:
        ratio = params.beta / (params.d * (1.0 - params.beta))
        ub_irh = (
            1.0
            + 0.5 * ratio
            - ratio * phi * (s - 2.0 * phi) / pi_m
            - phi * (s - phi - L) / pi_m
            - _gamma_over(gamma, p_lh, pi_m)
        )
    lb_irl = L * (s - phi - L) / pi_m + _gamma_over(gamma, p_hl, pi_m)

    ub = min(ub_ic, ub_irh)
    feasible = lb_irl <= ub + 1e-12
    return TransferBounds(
        lb_irl=lb_irl,
        ub_ic=ub_ic,
        ub_irh=ub_irh,
        feasible=feasible,
        interval=(lb_irl, ub) if feasible else None,
    )


def gamma_hat(params: CollusionParams) -> float:
    """Smallest expected penalty that empties the transfer interval.

    params.gamma is ignored; the computation starts from the gamma = 0
    bounds.  gamma raises lb_irl at rate a = 1/(Pr{H|L} pi_M) and lowers
    ub_irh at rate b = 1/(Pr{L|H} pi_M) while ub_ic stays put, so the
    closing point against each cap is linear algebra; the smaller of the
    two candidates wins.  The analytic value is cross-checked by
    bisecting the feasibility predicate itself and must agree to 1e-10.

    Raises:
        ValueError: d = 0, where a low producer never meets a high one
            and any positive penalty already violates its participation
            constraint; no meaningful threshold exists.
        OracleDisagreement: analytic and bisected values differ.
    """
    if params.d == 0.0:
        raise ValueError("deterrence threshold is undefined at d = 0")
    base = replace(params, gamma=0.0)
    bounds0 = transfer_bounds(base)
    corr = base.correlation()
    pi_m = monopoly_profit(base.s)
    a = 1.0 / (duopoly_conditional(corr, "L", "H") * pi_m)
    b = 1.0 / (duopoly_conditional(corr, "H", "L") * pi_m)
    against_ic = (bounds0.ub_ic - bounds0.lb_irl) / a
    against_irh = (bounds0.ub_irh - bounds0.lb_irl) / (a + b)
    analytic = min(against_ic, against_irh)
    if analytic <= 0.0:
        raise OracleDisagreement(
            f"expected a positive deterrence threshold, got {analytic!r}"
        )

    def feasible_at(g: float) -> bool:
        return transfer_bounds(replace(base, gamma=g)).feasible

    lo, hi = 0.0, max(2.0 * analytic, 1e-6)
    doublings = 0
    while feasible_at(hi):
        hi *= 2.0
        doublings += 1
        if doublings > 60:
            raise OracleDisagreement("feasibility never fails as gamma grows")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if feasible_at(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12:
            break
    bisected = 0.5 * (lo + hi)
    if abs(bisected - analytic) > 1e-10:
        raise OracleDisagreement(
            f"deterrence threshold mismatch: analytic {analytic!r} vs "
            f"bisected {bisected!r}"
        )
    return analytic


class CollusionOutcome(NamedTuple):
    outputs: tuple
    total_output: float
    price: float
    profits: tuple


def collusion_outcomes(params: CollusionParams, t: float) -> dict:
    """Per-state outputs and profit split under the cartel agreement.

    In mixed states the low producer sells its capacity L, the high
    producer tops the market up to the monopoly quantity, and the pooled
    profit pi_M is split (1 - t) to the high producer and t to the low
    one.  Both-low is indistinguishable from competition.  Expected
    penalties are not netted out here; they belong to the participation
    accounting, not the market outcome.
    """
    s, L = params.s, params.L
    dem = linear_demand(s)
    q_m = s / 2.0
    pi_m = monopoly_profit(s)
    pi_l = low_profit(s, L)

    def state(q1: float, q2: float, profits: tuple) -> CollusionOutcome:
        total = q1 + q2
        return CollusionOutcome((q1, q2), total, price(dem, total), profits)

    return {
        ("L", "L"): state(L, L, (pi_l, pi_l)),
        ("L", "H"): state(L, q_m - L, (t * pi_m, (1.0 - t) * pi_m)),
        ("H", "L"): state(q_m - L, L, ((1.0 - t) * pi_m, t * pi_m)),
        ("H", "H"): state(q_m / 2.0, q_m / 2.0, (pi_m / 2.0, pi_m / 2.0)),
    }


def _competitive_totals(params: CollusionParams) -> dict:
    phi = params.phi()
    L = params.L
    return {
        ("L", "L"): 2.0 * L,
        ("L", "H"): L + phi,
        ("H", "L"): L + phi,
        ("H", "H"): 2.0 * phi,
    }


def collusion_value(params: CollusionParams, include_penalty: bool = False) -> float:
    """Expected joint profit gain from colluding, by state enumeration.

    All wind revenue is profit, so joint competitive profit per state is
    Q P(Q).  include_penalty subtracts the two producers' expected
    penalties 2 gamma from the gain.
    """
    dem = linear_demand(params.s)
    jp = duopoly_joint(params.correlation())
    comp = _competitive_totals(params)
    coll = collusion_outcomes(params, t=0.0)
    value = 0.0
    for key, prob in jp.items():
        q_comp = comp[key]
        joint_comp = q_comp * price(dem, q_comp)
        joint_coll = math.fsum(coll[key].profits)
        value += prob * (joint_coll - joint_comp)
    if include_penalty:
        value -= 2.0 * params.gamma
    return value


def collusion_welfare_cost(params: CollusionParams) -> float:
    """Expected welfare under competition minus under collusion.

    Positive when the cartel's high-state output contraction outweighs
    the mixed-state expansion toward the monopoly quantity.
    """
    dem = linear_demand(params.s)
    jp = duopoly_joint(params.correlation())
    comp = _competitive_totals(params)
    coll = collusion_outcomes(params, t=0.0)
    cost = 0.0
    for key, prob in jp.items():
        cost += prob * (utility(dem, comp[key]) - utility(dem, coll[key].total_output))
    return cost


def _check_info_sharing_domain(beta: float, d: float, L: float) -> None:
    DuopolyCorrelation(beta=beta, d=d)
    if not 0.0 < L < 1.0 / 3.0:
        raise AssumptionViolation(
            f"information-sharing results need 0 < L < 1/3, got L = {L!r}"
        )


def _shared_totals(L: float) -> dict:
    """Total output per state once both producers see both draws.

    Full-information Cournot with one binding constraint: both-high
    plays 1/3 each, a lone high producer best-responds to L with
    (1 - L)/2, both-low sell capacity.
    """
    return {
        ("L", "L"): 2.0 * L,
        ("L", "H"): L + (1.0 - L) / 2.0,
        ("H", "L"): L + (1.0 - L) / 2.0,
        ("H", "H"): 2.0 / 3.0,
    }


def _gamma_factor(beta: float, d: float, L: float) -> float:
    """Common positive prefactor of both closed-form sharing gains."""
    norm = beta + d * (1.0 - beta)
    denom = 3.0 * beta + 2.0 * d * (1.0 - beta)
    return beta ** 2 * d * (1.0 - 3.0 * L) * (1.0 - beta) / (36.0 * norm * denom ** 2)


def info_sharing_welfare_gain(beta: float, d: float, L: float) -> float:
    """Expected welfare with public draws minus without, at s = 1.

    Closed form: the common factor times
    39 beta + 28 d (1-beta) - 60 L d (1-beta) - 81 beta L.
    Strictly positive whenever d > 0 and L < 1/3, and exactly 0 at d = 0
    (both regimes already see both draws).  Computed both ways; the
    enumeration is returned.
    """
    _check_info_sharing_domain(beta, d, L)
    bracket = (
        39.0 * beta
        + 28.0 * d * (1.0 - beta)
        - 60.0 * L * d * (1.0 - beta)
        - 81.0 * beta * L
    )
    closed = _gamma_factor(beta, d, L) * bracket

    dem = linear_demand(1.0)
    jp = duopoly_joint(DuopolyCorrelation(beta=beta, d=d))
    phi = phi_closed_form_linear(1.0, beta, d, L)
    unshared = {
        ("L", "L"): 2.0 * L,
        ("L", "H"): L + phi,
        ("H", "L"): L + phi,
        ("H", "H"): 2.0 * phi,
    }
    shared = _shared_totals(L)
    enum = math.fsum(
        prob * (utility(dem, shared[key]) - utility(dem, unshared[key]))
        for key, prob in jp.items()
    )
    if abs(closed - enum) > 1e-12:
        raise OracleDisagreement(
            f"welfare-gain closed form {closed!r} disagrees with enumeration {enum!r}"
        )
    return enum


def info_sharing_profit_gain(beta: float, d: float, L: float) -> float:
    """Expected per-producer profit change from sharing draws, at s = 1.

    Closed form: the common factor times
    21 beta + 16 d (1-beta) - L (81 beta + 60 d (1-beta)), which crosses
    zero exactly at L = l_star(beta, d).  Cross-checked against the
    four-state enumeration, which is the returned value.
    """
    _check_info_sharing_domain(beta, d, L)
    bracket = 21.0 * beta + 16.0 * d * (1.0 - beta) - L * (
        81.0 * beta + 60.0 * d * (1.0 - beta)
    )
    closed = _gamma_factor(beta, d, L) * bracket

    dem = linear_demand(1.0)
    jp = duopoly_joint(DuopolyCorrelation(beta=beta, d=d))
    phi = phi_closed_form_linear(1.0, beta, d, L)
    lone_high = (1.0 - L) / 2.0
    unshared_own = {
        ("L", "L"): (L, 2.0 * L),
        ("L", "H"): (L, L + phi),
        ("H", "L"): (phi, L + phi),
        ("H", "H"): (phi, 2.0 * phi),
    }
    shared_own = {
        ("L", "L"): (L, 2.0 * L),
        ("L", "H"): (L, L + lone_high),
        ("H", "L"): (lone_high, L + lone_high),
        ("H", "H"): (1.0 / 3.0, 2.0 / 3.0),
    }
    enum = 0.0
    for key, prob in jp.items():
        q_u, tot_u = unshared_own[key]
        q_s, tot_s = shared_own[key]
        enum += prob * (q_s * price(dem, tot_s) - q_u * price(dem, tot_u))
    if abs(closed - enum) > 1e-12:
        raise OracleDisagreement(
            f"profit-gain closed form {closed!r} disagrees with enumeration {enum!r}"
        )
    return enum


def l_star(beta: float, d: float) -> float:
    """Capacity threshold where the profit gain from sharing flips sign.

    (21 beta + 16 d (1-beta)) / (81 beta + 60 d (1-beta)); sharing pays
    exactly when L is below it.  Always below 1/3.
    """
    DuopolyCorrelation(beta=beta, d=d)
    return (21.0 * beta + 16.0 * d * (1.0 - beta)) / (
        81.0 * beta + 60.0 * d * (1.0 - beta)
    )
