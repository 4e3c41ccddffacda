"""Bayesian Cournot equilibria for markets with stochastic, correlated capacity.

Producers learn their own availability (low or high) before choosing
output; dispersion of the joint availability law is the comparative-statics
parameter throughout.  The package solves the two-producer market, the
n-producer extension, and the wind-plus-traditional mix, then layers
welfare/price/profit analysis, collusion feasibility, and
information-sharing incentives on top, with brute-force oracles for
independent verification.
"""

from .analysis import (
    DecompositionReport,
    ExpectationReport,
    MixedExpectationReport,
    SweepTable,
    decompose_price_derivative,
    decompose_profit_derivative,
    decompose_welfare_derivative,
    expectations_duopoly,
    expectations_mixed,
    expectations_multi,
    profit_derivative_linear,
    profit_thresholds,
    sweep_duopoly,
    sweep_mixed,
    sweep_multi,
    wd_functional,
)
from .demand import (
    ConcavityReport,
    DemandSpec,
    linear_demand,
    price,
    price_deriv,
    price_second_deriv,
    quadratic_demand,
    utility,
    validate_concavity,
)
from .equilibrium import (
    DuopolyParams,
    EquilibriumResult,
    RegimeReport,
    check_duopoly_regime,
    dphi_dd_duopoly_linear,
    phi_closed_form_linear,
    solve_phi_duopoly,
    solve_phi_multi,
    strategy_output,
)
from .errors import (
    AssumptionViolation,
    BracketError,
    ConfigError,
    ConvergenceError,
    ModelError,
    OracleDisagreement,
)
from .mixed_market import (
    MixedMarketParams,
    MixedRegimeReport,
    MixedSolution,
    check_mixed_regime,
    dphi_dd_mixed_linear,
    mixed_closed_form_linear,
    solve_mixed,
)
from .oracle import (
    GridEquilibrium,
    ScanResult,
    best_response_grid,
    central_difference,
    expected_profit_high,
    expected_profit_low,
    fixed_point_equilibrium,
    low_state_best_response,
    scan_transfer_feasibility,
)
from .stochastic import (
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
from .strategic_conduct import (
    CollusionOutcome,
    CollusionParams,
    TransferBounds,
    collusion_outcomes,
    collusion_value,
    collusion_welfare_cost,
    gamma_hat,
    info_sharing_profit_gain,
    info_sharing_welfare_gain,
    l_star,
    low_profit,
    monopoly_profit,
    transfer_bounds,
)

__version__ = "0.1.0"
