"""Expected outcomes and comparative statics.

Expectations are exact state enumerations, never samples: every
availability law in the package is finite, so Monte Carlo would only add
noise.  The d-derivatives of expected welfare, price, and profit are
reported decomposed into a diversification term (probability mass moving
into mixed states, at fixed outputs) and a strategic-curtailment term
(the equilibrium high-state output moving with d).
"""

from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

from .demand import price, price_deriv, utility
from .equilibrium import (
    DuopolyParams,
    EquilibriumResult,
    dphi_dd_duopoly_linear,
    solve_phi_duopoly,
    solve_phi_multi,
    strategy_output,
)
from .errors import AssumptionViolation
from .mixed_market import MixedMarketParams, MixedSolution, solve_mixed
from .stochastic import JointAvailability, duopoly_joint, mixture_family, zeta

__all__ = [
    "StateOutcome",
    "ExpectationReport",
    "MixedExpectationReport",
    "DecompositionReport",
    "SweepTable",
    "wd_functional",
    "expectations_duopoly",
    "expectations_multi",
    "expectations_mixed",
    "decompose_welfare_derivative",
    "decompose_price_derivative",
    "decompose_profit_derivative",
    "profit_derivative_linear",
    "profit_thresholds",
    "sweep_duopoly",
    "sweep_mixed",
    "sweep_multi",
]

_FD_STEP = 1e-4


class StateOutcome(NamedTuple):
    total_output: float
    price: float
    welfare: float
    profits: tuple


@dataclass(frozen=True)
class ExpectationReport:
    """Expectations over the availability law, with the per-state detail.

    per_state_table maps the state (a (w1, w2) pair for the duopoly, the
    high count for the many-producer market) to a StateOutcome; each
    expectation is the probability-weighted sum of the matching column.
    """

    e_welfare: float
    e_price: float
    e_profit_per_firm: float
    e_total_output: float
    per_state_table: dict


@dataclass(frozen=True)
class MixedExpectationReport:
    """Expectations for the wind-plus-traditional market.

    Welfare nets out the traditional generator's production cost c*x;
    wind production itself is costless.
    """

    e_welfare: float
    e_price: float
    e_profit_wind: float
    e_profit_trad: float
    e_total_output: float
    per_state_table: dict


@dataclass(frozen=True)
class DecompositionReport:
    """Split of a d-derivative into diversification and curtailment parts.

    wd_term is the effect of probability mass moving between states with
    outputs held fixed; sc_term is the effect of the equilibrium
    high-state output phi shifting with d.
    """

    wd_term: float
    sc_term: float

    @property
    def total(self) -> float:
        return self.wd_term + self.sc_term


def wd_functional(f: Callable[[float, float], float], x: float, y: float) -> float:
    """f(x,y) + f(y,x) - f(x,x) - f(y,y).

    Measures how much f gains when its two arguments sit in different
    states rather than the same one.  Zero for any affine f; positive
    when f(x, y) = g(x + y) with g strictly concave and x != y.
    """
    return f(x, y) + f(y, x) - f(x, x) - f(y, y)


def expectations_duopoly(params: DuopolyParams, eq: EquilibriumResult) -> ExpectationReport:
    """Exact enumeration of the four duopoly states."""
    dem = params.demand
    jp = duopoly_joint(params.correlation())
    cap = {"L": params.L, "H": params.H}
    table = {}
    e_w = e_p = e_pi = e_q = 0.0
    for (w1, w2), prob in jp.items():
        q1 = strategy_output(eq.phi, cap[w1])
        q2 = strategy_output(eq.phi, cap[w2])
        total = q1 + q2
        p = price(dem, total)
        welfare = utility(dem, total)
        outcome = StateOutcome(total, p, welfare, (q1 * p, q2 * p))
        table[(w1, w2)] = outcome
        e_w += prob * welfare
        e_p += prob * p
        e_pi += prob * outcome.profits[0]
        e_q += prob * total
    return ExpectationReport(
        e_welfare=e_w,
        e_price=e_p,
        e_profit_per_firm=e_pi,
        e_total_output=e_q,
        per_state_table=table,
    )


def expectations_multi(
    dist: JointAvailability, demand, eq: EquilibriumResult
) -> ExpectationReport:
    """Enumeration over the high-state count S for n_plus_1 producers.

    Total output at count k is (phi - L) k + (N+1) L.  The profit column
    is the per-firm average Q P(Q) / (N+1), which by exchangeability
    equals each firm's ex-ante expectation.
    """
    n1 = dist.n_plus_1
    low = eq.strategy["L"]
    table = {}
    e_w = e_p = e_pi = e_q = 0.0
    for k, prob in enumerate(dist.count_probs):
        total = (eq.phi - low) * k + n1 * low
        p = price(demand, total)
        welfare = utility(demand, total)
        per_firm = total * p / n1
        table[k] = StateOutcome(total, p, welfare, (per_firm,))
        e_w += prob * welfare
        e_p += prob * p
        e_pi += prob * per_firm
        e_q += prob * total
    return ExpectationReport(
        e_welfare=e_w,
        e_price=e_p,
        e_profit_per_firm=e_pi,
        e_total_output=e_q,
        per_state_table=table,
    )


def expectations_mixed(params: MixedMarketParams, sol: MixedSolution) -> MixedExpectationReport:
    """Four-state enumeration with the traditional output added in."""
    dem = params.demand
    jp = duopoly_joint(params.correlation())
    cap = {"L": params.L, "H": params.H}
    x = sol.x
    table = {}
    e_w = e_p = e_wind = e_trad = e_q = 0.0
    for (w1, w2), prob in jp.items():
        q1 = strategy_output(sol.phi, cap[w1])
        q2 = strategy_output(sol.phi, cap[w2])
        total = q1 + q2 + x
        p = price(dem, total)
        welfare = utility(dem, total) - params.c * x
        pi_trad = x * (p - params.c)
        table[(w1, w2)] = StateOutcome(total, p, welfare, (q1 * p, q2 * p, pi_trad))
        e_w += prob * welfare
        e_p += prob * p
        e_wind += prob * 0.5 * (q1 + q2) * p
        e_trad += prob * pi_trad
        e_q += prob * total
    return MixedExpectationReport(
        e_welfare=e_w,
        e_price=e_p,
        e_profit_wind=e_wind,
        e_profit_trad=e_trad,
        e_total_output=e_q,
        per_state_table=table,
    )


def _phi_of_d(params: DuopolyParams, d: float) -> float:
    return solve_phi_duopoly(replace(params, d=d)).phi


def _dphi_dd(params: DuopolyParams) -> float:
    """d-derivative of the equilibrium phi.

    Analytic for linear demand.  Otherwise a second-order finite
    difference of the solver, one-sided at the ends of [0, 1] so the
    probe points stay inside the parameter domain.
    """
    if params.demand.kind == "linear":
        return dphi_dd_duopoly_linear(params.demand.s, params.beta, params.d, params.L)
    h = _FD_STEP
    d = params.d
    if d < h:
        f0 = _phi_of_d(params, d)
        f1 = _phi_of_d(params, d + h)
        f2 = _phi_of_d(params, d + 2.0 * h)
        return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)
    if d > 1.0 - h:
        f0 = _phi_of_d(params, d)
        f1 = _phi_of_d(params, d - h)
        f2 = _phi_of_d(params, d - 2.0 * h)
        return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h)
    return (_phi_of_d(params, d + h) - _phi_of_d(params, d - h)) / (2.0 * h)


def _solved(params: DuopolyParams, eq: EquilibriumResult | None) -> EquilibriumResult:
    return eq if eq is not None else solve_phi_duopoly(params)


def decompose_welfare_derivative(
    params: DuopolyParams, eq: EquilibriumResult | None = None
) -> DecompositionReport:
    """d-derivative of expected welfare, decomposed.

    The diversification part is zeta times the concavity gap
    2U(L+phi) - U(2L) - U(2phi), positive because gross consumer utility
    is strictly concave even under linear demand.  The curtailment part
    is 2 (dphi/dd) (Pr{L,H} P(L+phi) + Pr{H,H} P(2phi)), positive
    whenever phi rises with d and prices are positive.
    """
    eq = _solved(params, eq)
    dem = params.demand
    L, phi = params.L, eq.phi
    corr = params.correlation()
    jp = duopoly_joint(corr)
    wd = zeta(corr) * wd_functional(lambda a, b: utility(dem, a + b), L, phi)
    sc = (
        2.0
        * _dphi_dd(params)
        * (jp[("L", "H")] * price(dem, L + phi) + jp[("H", "H")] * price(dem, 2.0 * phi))
    )
    return DecompositionReport(wd_term=wd, sc_term=sc)


def decompose_price_derivative(
    params: DuopolyParams, eq: EquilibriumResult | None = None
) -> DecompositionReport:
    """d-derivative of the expected price, decomposed.

    For linear demand the diversification term is identically zero (the
    price is affine in total output, and the WD functional annihilates
    affine maps), so it is returned as an exact 0.0 instead of a
    difference of equal numbers.
    """
    eq = _solved(params, eq)
    dem = params.demand
    L, phi = params.L, eq.phi
    corr = params.correlation()
    jp = duopoly_joint(corr)
    if dem.kind == "linear":
        wd = 0.0
    else:
        wd = zeta(corr) * wd_functional(lambda a, b: price(dem, a + b), L, phi)
    sc = (
        2.0
        * _dphi_dd(params)
        * (
            jp[("L", "H")] * price_deriv(dem, L + phi)
            + jp[("H", "H")] * price_deriv(dem, 2.0 * phi)
        )
    )
    return DecompositionReport(wd_term=wd, sc_term=sc)


def decompose_profit_derivative(
    params: DuopolyParams, eq: EquilibriumResult | None = None
) -> DecompositionReport:
    """d-derivative of per-firm expected profit, decomposed.

    The curtailment term uses the envelope property of the high-state
    FOC: the only surviving phi-sensitivity is through the rival's
    output, Pr{H,L} L P'(phi+L) + Pr{H,H} phi P'(2phi), so it is
    negative whenever phi rises with d.
    """
    eq = _solved(params, eq)
    dem = params.demand
    L, phi = params.L, eq.phi
    corr = params.correlation()
    jp = duopoly_joint(corr)

    def own_profit(a: float, b: float) -> float:
        return a * price(dem, a + b)

    wd = zeta(corr) * wd_functional(own_profit, L, phi)
    sc = _dphi_dd(params) * (
        jp[("H", "L")] * L * price_deriv(dem, phi + L)
        + jp[("H", "H")] * phi * price_deriv(dem, 2.0 * phi)
    )
    return DecompositionReport(wd_term=wd, sc_term=sc)


def profit_derivative_linear(s: float, beta: float, d: float, L: float) -> float:
    """Analytic d-derivative of per-firm expected profit, linear demand.

    (beta^2 (1-beta)(s-3L) / (3 beta + 2 d (1-beta))^3)
      * (beta (2s - 9L) + d (1-beta)(2s - 8L))

    Positive for every d when L < 2s/9, negative for every d when
    L > s/4; in between the sign can switch along the d axis.
    """
    denom = 3.0 * beta + 2.0 * d * (1.0 - beta)
    lead = beta ** 2 * (1.0 - beta) * (s - 3.0 * L) / denom ** 3
    return lead * (beta * (2.0 * s - 9.0 * L) + d * (1.0 - beta) * (2.0 * s - 8.0 * L))


def profit_thresholds(s: float) -> dict[str, float]:
    """Capacity thresholds separating the profit-derivative sign regimes."""
    if s <= 0.0:
        raise ValueError("demand intercept s must be positive")
    return {"L1": 2.0 * s / 9.0, "L2": s / 4.0}


@dataclass(frozen=True)
class SweepTable:
    """Grid-scan results: one row per grid value, fixed column order.

    Rows where the solver refused (regime violation) carry NaN in every
    numeric cell and the reason in the trailing status column; the sweep
    itself never aborts on such points.
    """

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    @property
    def flagged(self) -> bool:
        if "status" not in self.columns:
            return False
        return any(v != "ok" for v in self.column("status"))

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            cells = []
            for v in row:
                cells.append(v if isinstance(v, str) else f"{v:.17g}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _axis_check(template, axis: str) -> None:
    if axis == "demand" or not hasattr(template, axis):
        raise ValueError(f"cannot sweep over {axis!r}")


def sweep_duopoly(template: DuopolyParams, axis: str, grid) -> SweepTable:
    """Solve and analyze the duopoly at every value of one parameter.

    Columns: the axis, phi, expectations, and the three derivative
    decompositions evaluated at the point's own d.
    """
    _axis_check(template, axis)
    grid = list(grid)
    if not grid:
        raise ValueError("empty sweep grid")
    columns = (
        axis,
        "phi",
        "e_total_output",
        "e_price",
        "e_welfare",
        "e_profit_per_firm",
        "welfare_dd_wd",
        "welfare_dd_sc",
        "price_dd_wd",
        "price_dd_sc",
        "profit_dd_wd",
        "profit_dd_sc",
        "status",
    )
    rows = []
    nan = float("nan")
    for value in grid:
        try:
            p = replace(template, **{axis: value})
            eq = solve_phi_duopoly(p)
        except ValueError:
            rows.append((value,) + (nan,) * 11 + ("invalid_params",))
            continue
        except AssumptionViolation:
            rows.append((value,) + (nan,) * 11 + ("assumption_violation",))
            continue
        ex = expectations_duopoly(p, eq)
        dw = decompose_welfare_derivative(p, eq)
        dp = decompose_price_derivative(p, eq)
        dpi = decompose_profit_derivative(p, eq)
        rows.append(
            (
                value,
                eq.phi,
                ex.e_total_output,
                ex.e_price,
                ex.e_welfare,
                ex.e_profit_per_firm,
                dw.wd_term,
                dw.sc_term,
                dp.wd_term,
                dp.sc_term,
                dpi.wd_term,
                dpi.sc_term,
                "ok",
            )
        )
    return SweepTable(columns=columns, rows=tuple(rows))


def sweep_mixed(template: MixedMarketParams, axis: str, grid) -> SweepTable:
    """Mixed-market scan: equilibrium pair plus expectations per point."""
    _axis_check(template, axis)
    grid = list(grid)
    if not grid:
        raise ValueError("empty sweep grid")
    columns = (
        axis,
        "phi",
        "x",
        "E_price",
        "E_welfare",
        "E_profit_wind",
        "E_profit_trad",
        "status",
    )
    rows = []
    nan = float("nan")
    for value in grid:
        try:
            p = replace(template, **{axis: value})
            sol = solve_mixed(p)
        except ValueError:
            rows.append((value,) + (nan,) * 6 + ("invalid_params",))
            continue
        except AssumptionViolation:
            rows.append((value,) + (nan,) * 6 + ("assumption_violation",))
            continue
        ex = expectations_mixed(p, sol)
        rows.append(
            (
                value,
                sol.phi,
                sol.x,
                ex.e_price,
                ex.e_welfare,
                ex.e_profit_wind,
                ex.e_profit_trad,
                "ok",
            )
        )
    return SweepTable(columns=columns, rows=tuple(rows))


def sweep_multi(demand, n_plus_1: int, beta: float, L: float, H: float, grid) -> SweepTable:
    """Scan the n_plus_1-producer market over the dispersion grid.

    Uses the common-shock mixture family at each d.  Boundary equilibria
    are ordinary rows with regime no_curtailment, not failures.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("empty sweep grid")
    columns = (
        "d",
        "phi",
        "regime",
        "e_total_output",
        "e_price",
        "e_welfare",
        "e_profit_per_firm",
        "status",
    )
    rows = []
    nan = float("nan")
    for d in grid:
        try:
            dist = mixture_family(n_plus_1, beta, d)
            eq = solve_phi_multi(dist, demand, L, H)
        except ValueError:
            rows.append((d, nan, "", nan, nan, nan, nan, "invalid_params"))
            continue
        except AssumptionViolation:
            rows.append((d, nan, "", nan, nan, nan, nan, "assumption_violation"))
            continue
        ex = expectations_multi(dist, demand, eq)
        rows.append(
            (
                d,
                eq.phi,
                eq.regime,
                ex.e_total_output,
                ex.e_price,
                ex.e_welfare,
                ex.e_profit_per_firm,
                "ok",
            )
        )
    return SweepTable(columns=columns, rows=tuple(rows))
