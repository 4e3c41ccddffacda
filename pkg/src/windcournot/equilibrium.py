"""Symmetric Bayesian Nash equilibria for capacity-constrained Cournot markets.

Producers privately observe their own availability (low L or high H) before
choosing output.  In the low state the capacity constraint binds and the
producer sells L.  In the high state the equilibrium output phi solves a
first-order condition that averages over the opponent's state using the
conditional law given one's own high draw.  Both the two-producer and the
many-producer versions reduce to bisection of a strictly decreasing function
on [L, H].
"""

from dataclasses import dataclass, field

from .demand import DemandSpec, price, price_deriv
from .errors import AssumptionViolation
from .rootfind import bisect_decreasing
from .stochastic import DuopolyCorrelation, JointAvailability, conditional_given_high, duopoly_conditional

__all__ = [
    "DuopolyParams",
    "RegimeReport",
    "EquilibriumResult",
    "check_duopoly_regime",
    "solve_phi_duopoly",
    "phi_closed_form_linear",
    "dphi_dd_duopoly_linear",
    "solve_phi_multi",
    "strategy_output",
]


@dataclass(frozen=True)
class DuopolyParams:
    """Market primitives for the two-producer game.

    Attributes:
        demand: inverse demand family.
        beta: prior probability of the high state.
        d: dispersion of the availability law.
        L: low-state capacity, strictly positive.
        H: high-state capacity, strictly above L.
    """

    demand: DemandSpec
    beta: float
    d: float
    L: float
    H: float

    def __post_init__(self) -> None:
        if not 0.0 < self.L < self.H:
            raise ValueError(f"need 0 < L < H, got L={self.L!r}, H={self.H!r}")
        # range checks for beta and d are delegated to the correlation type
        self.correlation()

    def correlation(self) -> DuopolyCorrelation:
        return DuopolyCorrelation(beta=self.beta, d=self.d)


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of the interior-equilibrium regime check.

    low_value is P(2L) + L P'(2L): positive means a producer facing a
    low-state rival still wants to expand at the no-curtailment point, so
    low-state producers sell their whole capacity.  high_value is
    P(H) + H P'(H): negative means even a monopolist would not sell H, so
    high-state producers curtail.  Both must hold strictly for the
    interior equilibrium L < phi < H.
    """

    low_ok: bool
    high_ok: bool
    low_value: float
    high_value: float

    @property
    def ok(self) -> bool:
        return self.low_ok and self.high_ok


def check_duopoly_regime(params: DuopolyParams) -> RegimeReport:
    """Evaluate both interior-regime conditions, strictly."""
    dem = params.demand
    low_value = price(dem, 2.0 * params.L) + params.L * price_deriv(dem, 2.0 * params.L)
    high_value = price(dem, params.H) + params.H * price_deriv(dem, params.H)
    return RegimeReport(
        low_ok=low_value > 0.0,
        high_ok=high_value < 0.0,
        low_value=low_value,
        high_value=high_value,
    )


@dataclass(frozen=True)
class EquilibriumResult:
    """A solved symmetric equilibrium.

    strategy maps the observed state to the produced quantity; in the
    interior regime that is {L: L, H: phi} with L < phi < H.  regime is
    "interior" for a root of the first-order condition and
    "no_curtailment" for the boundary case phi = H, which arises in the
    many-producer market when even the full capacity is a best response
    (the FOC is still nonnegative at H).
    """

    phi: float
    strategy: dict[str, float] = field(repr=False)
    foc_residual: float
    method: str
    regime: str = "interior"


def _duopoly_foc(params: DuopolyParams):
    """First-order condition of a high-state producer, as a closure in x."""
    dem = params.demand
    corr = params.correlation()
    p_low = duopoly_conditional(corr, "H", "L")
    p_high = duopoly_conditional(corr, "H", "H")
    L = params.L

    def f(x: float) -> float:
        q_vs_low = L + x
        q_vs_high = 2.0 * x
        return p_low * (price(dem, q_vs_low) + x * price_deriv(dem, q_vs_low)) + p_high * (
            price(dem, q_vs_high) + x * price_deriv(dem, q_vs_high)
        )

    return f


def solve_phi_duopoly(params: DuopolyParams) -> EquilibriumResult:
    """High-state equilibrium output of the two-producer market.

    Bisects the FOC on [L, H]; the regime check guarantees the bracket
    signs, so the root is interior and unique.

    Raises:
        AssumptionViolation: the interior-regime conditions fail; solving
            anyway would return a number whose interpretation is wrong.
        BracketError: regime check passed but the FOC does not change
            sign, which means the parameters are inconsistent.
    """
    report = check_duopoly_regime(params)
    if not report.ok:
        sides = []
        if not report.low_ok:
            sides.append(f"P(2L)+LP'(2L) = {report.low_value!r} (need > 0)")
        if not report.high_ok:
            sides.append(f"P(H)+HP'(H) = {report.high_value!r} (need < 0)")
        raise AssumptionViolation("interior-regime check failed: " + "; ".join(sides))
    f = _duopoly_foc(params)
    phi, residual = bisect_decreasing(f, params.L, params.H)
    return EquilibriumResult(
        phi=phi,
        strategy={"L": params.L, "H": phi},
        foc_residual=residual,
        method="bisection",
    )


def phi_closed_form_linear(s: float, beta: float, d: float, L: float) -> float:
    """High-state output under linear demand P(Q) = s - Q.

    phi = (s beta + (s - L)(1 - beta) d) / (3 beta + 2 (1 - beta) d).
    At d = 0 this collapses to the full-information Cournot output s/3.
    """
    return (s * beta + (s - L) * (1.0 - beta) * d) / (3.0 * beta + 2.0 * (1.0 - beta) * d)


def dphi_dd_duopoly_linear(s: float, beta: float, d: float, L: float) -> float:
    """d-derivative of the linear-demand closed form.

    Equals beta (1 - beta)(s - 3L) / (3 beta + 2 d (1 - beta))^2, strictly
    positive whenever L < s/3, which the interior regime implies.
    """
    denom = 3.0 * beta + 2.0 * d * (1.0 - beta)
    return beta * (1.0 - beta) * (s - 3.0 * L) / denom ** 2


def solve_phi_multi(
    dist: JointAvailability, demand: DemandSpec, L: float, H: float
) -> EquilibriumResult:
    """High-state equilibrium output with n_plus_1 producers.

    The FOC averages over the number of high-state opponents using the
    conditional count law given one's own high draw:

        g(phi) = sum_j Pr{S_others = j | high} [P(phi (1+j) + (N-j) L) + phi P'(.)]

    g is strictly decreasing.  g(L) reduces to P((N+1)L) + L P'((N+1)L),
    so the low-state no-curtailment condition doubles as the lower
    bracket sign.  When g(H) >= 0 there is no interior root and selling
    full capacity in both states is the equilibrium; that case is
    returned with regime "no_curtailment" rather than raised, since it is
    a perfectly good equilibrium, just not a curtailing one.

    Raises:
        AssumptionViolation: low-state producers would want to curtail
            (g(L) <= 0), which the model rules out.
    """
    if not 0.0 < L < H:
        raise ValueError(f"need 0 < L < H, got L={L!r}, H={H!r}")
    n1 = dist.n_plus_1
    n_others = n1 - 1
    q_all_low = n1 * L
    low_value = price(demand, q_all_low) + L * price_deriv(demand, q_all_low)
    if low_value <= 0.0:
        raise AssumptionViolation(
            f"low-state no-curtailment fails: P((N+1)L)+LP'((N+1)L) = {low_value!r} (need > 0)"
        )
    cond = conditional_given_high(dist)

    def g(phi: float) -> float:
        total = 0.0
        for j, pj in enumerate(cond):
            if pj == 0.0:
                continue
            q = phi * (1.0 + j) + (n_others - j) * L
            total += pj * (price(demand, q) + phi * price_deriv(demand, q))
        return total

    g_high = g(H)
    if g_high >= 0.0:
        return EquilibriumResult(
            phi=H,
            strategy={"L": L, "H": H},
            foc_residual=g_high,
            method="bisection",
            regime="no_curtailment",
        )
    phi, residual = bisect_decreasing(g, L, H)
    return EquilibriumResult(
        phi=phi,
        strategy={"L": L, "H": phi},
        foc_residual=residual,
        method="bisection",
    )


def strategy_output(phi: float, w: float) -> float:
    """Equilibrium output of a producer with availability w: min(w, phi)."""
    return min(w, phi)
