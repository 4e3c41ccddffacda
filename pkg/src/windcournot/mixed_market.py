"""Equilibrium of two wind producers plus one traditional generator.

The traditional generator has constant marginal cost c, no capacity limit,
and no private information; it commits to an output x maximizing expected
profit against the wind producers' state-contingent strategies.  Wind
producers behave as in the pure duopoly but face the extra quantity x in
every state.  The equilibrium is the joint root of two monotone first-order
conditions, solved in closed form for linear demand and by coordinate
iteration otherwise.
"""

import math
from dataclasses import dataclass

from .demand import DemandSpec, price, price_deriv
from .errors import AssumptionViolation, ConvergenceError
from .rootfind import bisect_decreasing, expand_upper
from .stochastic import DuopolyCorrelation, duopoly_conditional, duopoly_joint

__all__ = [
    "MixedMarketParams",
    "MixedRegimeReport",
    "MixedSolution",
    "check_mixed_regime",
    "solve_mixed",
    "mixed_closed_form_linear",
    "dphi_dd_mixed_linear",
]

_OUTER_TOL = 1e-11
_MAX_OUTER = 10_000


@dataclass(frozen=True)
class MixedMarketParams:
    """Primitives of the three-firm market.

    Same fields as the duopoly plus c, the traditional generator's
    constant marginal cost in price units.
    """

    demand: DemandSpec
    beta: float
    d: float
    L: float
    H: float
    c: float

    def __post_init__(self) -> None:
        if not 0.0 < self.L < self.H:
            raise ValueError(f"need 0 < L < H, got L={self.L!r}, H={self.H!r}")
        if self.c < 0.0:
            raise ValueError("marginal cost c must be nonnegative")
        self.correlation()

    def correlation(self) -> DuopolyCorrelation:
        return DuopolyCorrelation(beta=self.beta, d=self.d)


@dataclass(frozen=True)
class MixedRegimeReport:
    """Diagnostic evaluation of the three regime conditions.

    x_lower is the traditional generator's optimal output if wind never
    curtailed (outputs equal raw availabilities), found by bisection and
    clamped at 0.  cost_ok requires c < P(2H), low_ok requires
    P(3L) + L P'(3L) > 0, high_ok requires P(H+L+x_lower) +
    H P'(H+L+x_lower) < 0.  The margins are the evaluated quantities so a
    failed check can say by how much.
    """

    cost_ok: bool
    low_ok: bool
    high_ok: bool
    x_lower: float
    cost_margin: float
    low_value: float
    high_value: float

    @property
    def ok(self) -> bool:
        return self.cost_ok and self.low_ok and self.high_ok


def _uncurtailed_x(params: MixedMarketParams) -> float:
    """Optimal traditional output against raw availabilities.

    Root of E[P(w1+w2+x) + x P'(w1+w2+x)] - c over the joint availability
    law, decreasing in x; 0 when even x = 0 is unprofitable at the margin.
    """
    dem = params.demand
    jp = duopoly_joint(params.correlation())
    cap = {"L": params.L, "H": params.H}

    def h(x: float) -> float:
        total = -params.c
        for (w1, w2), p in jp.items():
            if p == 0.0:
                continue
            q = cap[w1] + cap[w2] + x
            total += p * (price(dem, q) + x * price_deriv(dem, q))
        return total

    if h(0.0) <= 0.0:
        return 0.0
    hi = expand_upper(h, 0.0, max(1.0, dem.s))
    x, _ = bisect_decreasing(h, 0.0, hi)
    return x


def check_mixed_regime(params: MixedMarketParams) -> MixedRegimeReport:
    dem = params.demand
    x_lower = _uncurtailed_x(params)
    cost_margin = price(dem, 2.0 * params.H) - params.c
    q_low = 3.0 * params.L
    low_value = price(dem, q_low) + params.L * price_deriv(dem, q_low)
    q_high = params.H + params.L + x_lower
    high_value = price(dem, q_high) + params.H * price_deriv(dem, q_high)
    return MixedRegimeReport(
        cost_ok=cost_margin > 0.0,
        low_ok=low_value > 0.0,
        high_ok=high_value < 0.0,
        x_lower=x_lower,
        cost_margin=cost_margin,
        low_value=low_value,
        high_value=high_value,
    )


@dataclass(frozen=True)
class MixedSolution:
    """Solved mixed-market equilibrium.

    residual_phi is the wind FOC at (phi, x); residual_x is the
    traditional FOC, or the (negative) marginal profit at x = 0 when the
    solution is clamped to the boundary, recorded in x_clamped.
    """

    phi: float
    x: float
    residual_phi: float
    residual_x: float
    method: str
    iterations: int = 0
    x_clamped: bool = False


def _wind_foc(params: MixedMarketParams, x: float):
    """High-state wind producer's FOC given the traditional output x."""
    dem = params.demand
    corr = params.correlation()
    p_low = duopoly_conditional(corr, "H", "L")
    p_high = duopoly_conditional(corr, "H", "H")
    L = params.L

    def f(phi: float) -> float:
        q_lo = phi + L + x
        q_hi = 2.0 * phi + x
        return p_low * (price(dem, q_lo) + phi * price_deriv(dem, q_lo)) + p_high * (
            price(dem, q_hi) + phi * price_deriv(dem, q_hi)
        )

    return f


def _trad_foc(params: MixedMarketParams, phi: float):
    """Traditional generator's FOC given the wind high-state output phi."""
    dem = params.demand
    jp = duopoly_joint(params.correlation())
    out = {"L": params.L, "H": phi}

    def h(x: float) -> float:
        total = -params.c
        for (w1, w2), p in jp.items():
            if p == 0.0:
                continue
            q = out[w1] + out[w2] + x
            total += p * (price(dem, q) + x * price_deriv(dem, q))
        return total

    return h


def _solve_phi_given_x(params: MixedMarketParams, x: float) -> tuple[float, float]:
    f = _wind_foc(params, x)
    if f(params.L) <= 0.0:
        raise AssumptionViolation(
            "wind producers would curtail below L against the traditional "
            f"generator's output x = {x!r}"
        )
    f_high = f(params.H)
    if f_high >= 0.0:
        return params.H, f_high
    return bisect_decreasing(f, params.L, params.H)


def _solve_x_given_phi(params: MixedMarketParams, phi: float) -> tuple[float, float]:
    h = _trad_foc(params, phi)
    h0 = h(0.0)
    if h0 <= 0.0:
        return 0.0, h0
    hi = expand_upper(h, 0.0, max(1.0, params.demand.s))
    return bisect_decreasing(h, 0.0, hi)


def solve_mixed(params: MixedMarketParams, method: str = "auto") -> MixedSolution:
    """Equilibrium (phi, x) of the mixed market.

    method "auto" uses the closed forms for linear demand and coordinate
    iteration otherwise; "iterative" forces the iteration (useful for
    cross-checking the closed forms); "closed_form" demands linear
    demand.

    The solver gates on the low-state no-curtailment condition and
    verifies phi < H on the way out.  The remaining regime diagnostics
    from check_mixed_regime are informative rather than binding: they
    describe a sufficient regime, and parameter sets outside it can still
    have a perfectly well-defined interior equilibrium.

    Raises:
        AssumptionViolation: low-state wind producers would curtail, or
            the computed phi reaches H.
        ConvergenceError: coordinate iteration failed to settle, or
            closed-form residuals exceed 1e-10.
    """
    dem = params.demand
    q_low = 3.0 * params.L
    low_value = price(dem, q_low) + params.L * price_deriv(dem, q_low)
    if low_value <= 0.0:
        raise AssumptionViolation(
            f"low-state no-curtailment fails: P(3L)+LP'(3L) = {low_value!r} (need > 0)"
        )
    if method == "auto":
        method = "closed_form" if dem.kind == "linear" else "iterative"
    if method == "closed_form":
        if dem.kind != "linear":
            raise ValueError("closed forms exist only for linear demand")
        solution = _solve_linear(params)
    elif method == "iterative":
        solution = _solve_gauss_seidel(params)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not params.L < solution.phi < params.H:
        raise AssumptionViolation(
            f"equilibrium phi = {solution.phi!r} is not interior to "
            f"(L, H) = ({params.L!r}, {params.H!r})"
        )
    return solution


def _solve_linear(params: MixedMarketParams) -> MixedSolution:
    phi, x = mixed_closed_form_linear(
        params.demand.s, params.c, params.beta, params.d, params.L
    )
    clamped = False
    if x < 0.0:
        # boundary regime: the traditional generator stays out and the
        # wind producers play the pure duopoly equilibrium
        clamped = True
        f = _wind_foc(params, 0.0)
        if f(params.H) >= 0.0:
            phi = params.H
        else:
            phi, _ = bisect_decreasing(f, params.L, params.H)
        x = 0.0
    residual_phi = _wind_foc(params, x)(phi)
    residual_x = _trad_foc(params, phi)(x)
    if abs(residual_phi) > 1e-10 or (not clamped and abs(residual_x) > 1e-10):
        raise ConvergenceError(
            f"closed-form solution fails its own FOCs: residuals "
            f"({residual_phi!r}, {residual_x!r})"
        )
    return MixedSolution(
        phi=phi,
        x=x,
        residual_phi=residual_phi,
        residual_x=residual_x,
        method="closed_form",
        x_clamped=clamped,
    )


def _solve_gauss_seidel(params: MixedMarketParams) -> MixedSolution:
    phi_prev = math.nan
    x = 0.0
    x_prev = math.nan
    phi = params.L
    for iteration in range(1, _MAX_OUTER + 1):
        phi, _ = _solve_phi_given_x(params, x)
        x, res_x = _solve_x_given_phi(params, phi)
        if (
            not math.isnan(phi_prev)
            and abs(phi - phi_prev) < _OUTER_TOL
            and abs(x - x_prev) < _OUTER_TOL
        ):
            residual_phi = _wind_foc(params, x)(phi)
            return MixedSolution(
                phi=phi,
                x=x,
                residual_phi=residual_phi,
                residual_x=res_x,
                method="iterative",
                iterations=iteration,
                x_clamped=(x == 0.0),
            )
        phi_prev, x_prev = phi, x
    raise ConvergenceError(
        f"coordinate iteration did not settle in {_MAX_OUTER} rounds "
        f"(last phi = {phi!r}, x = {x!r})"
    )


def mixed_closed_form_linear(
    s: float, c: float, beta: float, d: float, L: float
) -> tuple[float, float]:
    """Closed-form (phi, x) for linear demand P(Q) = s - Q.

    phi = (0.5 (s+c)(beta + d(1-beta)) + L beta (1-beta)(1-d))
          / (3 beta + 2 d (1-beta) - beta^2 - beta d (1-beta))
    x   = 0.5 (s-c) - phi beta - L (1-beta)

    x can come out negative when c is high; callers clamp to the x = 0
    boundary regime.
    """
    norm = beta + d * (1.0 - beta)
    denom = 3.0 * beta + 2.0 * d * (1.0 - beta) - beta ** 2 - beta * d * (1.0 - beta)
    phi = (0.5 * (s + c) * norm + L * beta * (1.0 - beta) * (1.0 - d)) / denom
    x = 0.5 * (s - c) - phi * beta - L * (1.0 - beta)
    return phi, x


def dphi_dd_mixed_linear(s: float, c: float, beta: float, d: float, L: float) -> float:
    """d-derivative of the linear closed-form phi.

    (s + c - 4L) beta (1 - beta) / (2 denom^2) with the same denominator
    as the closed form; positive whenever s + c > 4L.
    """
    denom = 3.0 * beta + 2.0 * d * (1.0 - beta) - beta ** 2 - beta * d * (1.0 - beta)
    return (s + c - 4.0 * L) * beta * (1.0 - beta) / (2.0 * denom ** 2)
