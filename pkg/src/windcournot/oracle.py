"""Independent verification paths.

Nothing in this module evaluates a first-order condition.  Equilibria are
re-found by exhaustive profit maximization on a grid plus best-response
iteration, and the collusion bounds are re-checked by scanning the raw
incentive and participation inequalities over a dense range of transfer
shares.  Agreement with the analytic solvers is checked by callers; these
functions only report what the brute-force search found.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .demand import price
from .equilibrium import DuopolyParams
from .errors import ConvergenceError
from .stochastic import duopoly_conditional
from .strategic_conduct import CollusionParams, low_profit, monopoly_profit

__all__ = [
    "GridEquilibrium",
    "ScanResult",
    "expected_profit_high",
    "expected_profit_low",
    "best_response_grid",
    "low_state_best_response",
    "fixed_point_equilibrium",
    "central_difference",
    "scan_transfer_feasibility",
]


def expected_profit_high(params: DuopolyParams, q, opponent_phi: float):
    """Expected profit of a high-state producer selling q.

    The opponent plays min(w, opponent_phi); expectation is over the
    opponent's state conditional on one's own high draw.  Accepts scalar
    or array q.
    """
    corr = params.correlation()
    p_low = duopoly_conditional(corr, "H", "L")
    p_high = duopoly_conditional(corr, "H", "H")
    q_low = min(params.L, opponent_phi)
    q_high = min(params.H, opponent_phi)
    dem = params.demand
    return p_low * q * price(dem, q + q_low) + p_high * q * price(dem, q + q_high)


def expected_profit_low(params: DuopolyParams, q, opponent_phi: float):
    """Same for a low-state producer (capacity L caps q, not enforced here)."""
    corr = params.correlation()
    p_low = duopoly_conditional(corr, "L", "L")
    p_high = duopoly_conditional(corr, "L", "H")
    q_low = min(params.L, opponent_phi)
    q_high = min(params.H, opponent_phi)
    dem = params.demand
    return p_low * q * price(dem, q + q_low) + p_high * q * price(dem, q + q_high)


def best_response_grid(params: DuopolyParams, opponent_phi: float, grid_n: int) -> float:
    """Profit-maximizing high-state action on the grid over [L, H].

    Exhaustive: evaluates all grid_n + 1 candidates and takes the argmax,
    first occurrence winning so ties break toward the smaller action.
    """
    if grid_n < 100:
        raise ValueError("grid_n must be at least 100 for a meaningful search")
    actions = np.linspace(params.L, params.H, grid_n + 1)
    profits = expected_profit_high(params, actions, opponent_phi)
    return float(actions[int(np.argmax(profits))])


def low_state_best_response(params: DuopolyParams, opponent_phi: float, grid_n: int) -> float:
    """Profit-maximizing low-state action on the grid over [0, L].

    The interior regime predicts the capacity L itself wins.
    """
    if grid_n < 100:
        raise ValueError("grid_n must be at least 100 for a meaningful search")
    actions = np.linspace(0.0, params.L, grid_n + 1)
    profits = expected_profit_low(params, actions, opponent_phi)
    return float(actions[int(np.argmax(profits))])


@dataclass(frozen=True)
class GridEquilibrium:
    """Result of best-response iteration on the action grid.

    converged means a grid action that is its own best response was
    found; phi_hat is then within one grid step of any interior
    equilibrium.  A 2-cycle is reported via converged=False with phi_hat
    at the cycle midpoint and cycle_width the distance between the two
    alternating actions.  Cycles one grid step wide are the benign case
    where the true root sits between neighboring grid points; anything
    wider is a genuine failure of the dynamics.
    """

    phi_hat: float
    grid_step: float
    iterations: int
    converged: bool
    cycle_width: float = 0.0


def fixed_point_equilibrium(
    params: DuopolyParams, grid_n: int = 4000, max_iter: int = 200
) -> GridEquilibrium:
    """Iterate the gridded best response from phi_0 = H.

    Raises:
        ConvergenceError: neither a fixed point nor a 2-cycle appeared
            within max_iter rounds.
    """
    step = (params.H - params.L) / grid_n
    previous = None
    current = params.H
    for iteration in range(1, max_iter + 1):
        reply = best_response_grid(params, current, grid_n)
        if reply == current:
            return GridEquilibrium(
                phi_hat=reply, grid_step=step, iterations=iteration, converged=True
            )
        if previous is not None and reply == previous:
            return GridEquilibrium(
                phi_hat=0.5 * (reply + current),
                grid_step=step,
                iterations=iteration,
                converged=False,
                cycle_width=abs(reply - current),
            )
        previous, current = current, reply
    raise ConvergenceError(
        f"best-response iteration neither settled nor cycled in {max_iter} rounds"
    )


def central_difference(f, x: float, h: float) -> float:
    """(f(x+h) - f(x-h)) / (2h)."""
    if h <= 0.0:
        raise ValueError("step h must be positive")
    return (f(x + h) - f(x - h)) / (2.0 * h)


class ScanResult(NamedTuple):
    feasible: bool
    t_first: float | None
    t_last: float | None


def scan_transfer_feasibility(
    params: CollusionParams,
    t_lo: float = -1.0,
    t_hi: float = 2.0,
    step: float = 1e-5,
) -> ScanResult:
    """Brute-force search for a workable transfer share.

    Evaluates the three cartel constraints in their raw payoff form at
    every t on the grid:

      IC   (1-t) pi_M                       >= Pr{H|H} pi_M/2 + Pr{L|H} pi_L
      IRH  Pr{H|H} pi_M/2
             + Pr{L|H}(1-t) pi_M - gamma    >= Pr{H|H} phi P(2 phi)
                                                + Pr{L|H} phi P(phi+L)
      IRL  Pr{H|L} t pi_M
             + Pr{L|L} pi_L - gamma         >= Pr{H|L} L P(phi+L)
                                                + Pr{L|L} pi_L

    No rearrangement into bounds happens here, which is what makes the
    scan a usable cross-check of transfer_bounds.
    """
    corr = params.correlation()
    s, L = params.s, params.L
    phi = params.phi()
    pi_m = monopoly_profit(s)
    pi_l = low_profit(s, L)
    p_hh = duopoly_conditional(corr, "H", "H")
    p_lh = duopoly_conditional(corr, "H", "L")
    p_hl = duopoly_conditional(corr, "L", "H")
    p_ll = duopoly_conditional(corr, "L", "L")
    price_hh = s - 2.0 * phi
    price_hl = s - phi - L

    n = int(round((t_hi - t_lo) / step))
    t = t_lo + step * np.arange(n + 1)

    ic = (1.0 - t) * pi_m - (0.5 * p_hh * pi_m + p_lh * pi_l)
    irh = (
        0.5 * p_hh * pi_m
        + p_lh * (1.0 - t) * pi_m
        - params.gamma
        - (p_hh * phi * price_hh + p_lh * phi * price_hl)
    )
    irl = (
        p_hl * t * pi_m
        + p_ll * pi_l
        - params.gamma
        - (p_hl * L * price_hl + p_ll * pi_l)
    )
    ok = (ic >= -1e-12) & (irh >= -1e-12) & (irl >= -1e-12)
    if not ok.any():
        return ScanResult(feasible=False, t_first=None, t_last=None)
    hits = np.flatnonzero(ok)
    return ScanResult(
        feasible=True, t_first=float(t[hits[0]]), t_last=float(t[hits[-1]])
    )
