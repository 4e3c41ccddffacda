"""Probability models for correlated production availability.

Two layers live here.  The two-producer family is parametric: a prior beta
for the high state and a dispersion d in [0, 1] that slides the pair from
perfectly correlated (d = 0) to independent (d = 1).  For markets with more
producers the package works with exchangeable distributions stored as count
probabilities, plus the stochastic-dominance checks that the comparative
statics rely on.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DuopolyCorrelation",
    "JointAvailability",
    "duopoly_conditional",
    "duopoly_joint",
    "zeta",
    "mixture_family",
    "duopoly_family",
    "conditional_given_high",
    "check_fosd",
    "check_sosd",
]

_STATES = ("L", "H")


@dataclass(frozen=True)
class DuopolyCorrelation:
    """Two-producer availability law.

    Attributes:
        beta: prior probability of the high state, in (0, 1).
        d: dispersion in [0, 1]; 0 means the producers always share a
            state, 1 means their states are independent.
    """

    beta: float
    d: float

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie strictly between 0 and 1")
        if not 0.0 <= self.d <= 1.0:
            raise ValueError("dispersion d must lie in [0, 1]")


def _check_state(w: str) -> None:
    if w not in _STATES:
        raise ValueError(f"state must be 'L' or 'H', got {w!r}")


def duopoly_conditional(corr: DuopolyCorrelation, own: str, other: str) -> float:
    """Probability of the opponent's state given one's own.

    The family is defined through

        Pr{H | H} = beta / (beta + d(1 - beta))
        Pr{H | L} = d beta / (beta + d(1 - beta))

    with the L cases as complements.  At d = 0 observing one's own state
    reveals the opponent's; at d = 1 conditioning is vacuous.
    """
    _check_state(own)
    _check_state(other)
    denom = corr.beta + corr.d * (1.0 - corr.beta)
    p_high = corr.beta / denom if own == "H" else corr.d * corr.beta / denom
    return p_high if other == "H" else 1.0 - p_high


def duopoly_joint(corr: DuopolyCorrelation) -> dict[tuple[str, str], float]:
    """Joint law over (w1, w2) as a dict keyed by state pairs.

    Built as marginal times conditional, so marginal consistency
    Pr{H,H} + Pr{H,L} = beta holds by construction.
    """
    beta = corr.beta
    h_given_l = duopoly_conditional(corr, "L", "H")
    h_given_h = duopoly_conditional(corr, "H", "H")
    return {
        ("L", "L"): (1.0 - beta) * (1.0 - h_given_l),
        ("L", "H"): (1.0 - beta) * h_given_l,
        ("H", "L"): beta * (1.0 - h_given_h),
        ("H", "H"): beta * h_given_h,
    }


def zeta(corr: DuopolyCorrelation) -> float:
    """Rate at which dispersion shifts probability into mixed states.

    Equals d Pr{L,H} / dd, and also the common magnitude of the (negative)
    d-derivatives of Pr{H,H} and Pr{L,L}.  Strictly positive for every
    valid parameter pair, which is why diversification effects never
    vanish in the interior.
    """
    denom = corr.beta + corr.d * (1.0 - corr.beta)
    return corr.beta ** 2 * (1.0 - corr.beta) / denom ** 2


@dataclass(frozen=True)
class JointAvailability:
    """Exchangeable availability law for n_plus_1 producers.

    Only the distribution of the high-state count S is stored; by
    exchangeability every configuration with k high producers has
    probability count_probs[k] / C(n_plus_1, k), so counts fully determine
    the joint law.

    Attributes:
        n_plus_1: number of producers, at least 2.
        count_probs: length n_plus_1 + 1, entry k is Pr{S = k}.
    """

    n_plus_1: int
    count_probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n_plus_1 < 2:
            raise ValueError("need at least two producers")
        object.__setattr__(self, "count_probs", tuple(float(p) for p in self.count_probs))
        if len(self.count_probs) != self.n_plus_1 + 1:
            raise ValueError(
                f"count_probs must have {self.n_plus_1 + 1} entries, got {len(self.count_probs)}"
            )
        if any(p < 0.0 for p in self.count_probs):
            raise ValueError("count probabilities must be nonnegative")
        total = math.fsum(self.count_probs)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"count probabilities sum to {total!r}, not 1")

    @property
    def marginal_beta(self) -> float:
        """Implied per-producer probability of the high state.

        May be 0 or 1 for degenerate laws; such laws are usable for
        expectations but not for conditioning on a high draw.
        """
        mean = math.fsum(k * p for k, p in enumerate(self.count_probs))
        return mean / self.n_plus_1

    def to_dict(self) -> dict:
        return {"n_plus_1": self.n_plus_1, "count_probs": list(self.count_probs)}

    @classmethod
    def from_dict(cls, payload: dict) -> "JointAvailability":
        return cls(n_plus_1=int(payload["n_plus_1"]), count_probs=tuple(payload["count_probs"]))


def mixture_family(n_plus_1: int, beta: float, d: float) -> JointAvailability:
    """Common-shock mixture law over the high count.

    With weight 1 - d all producers share a single Bernoulli(beta) draw,
    putting mass only on S = 0 and S = n_plus_1.  With weight d the
    producers draw independently, giving S ~ Binomial(n_plus_1, beta).
    The mixture keeps the marginal at beta for every d, degenerates to
    comonotonicity at d = 0 and independence at d = 1, and satisfies both
    dominance orderings used by the equilibrium comparative statics (the
    conditional-given-high law works out to a mixture of a point mass at
    "everyone else high" and Binomial(n_plus_1 - 1, beta)).
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie strictly between 0 and 1")
    if not 0.0 <= d <= 1.0:
        raise ValueError("dispersion d must lie in [0, 1]")
    n1 = int(n_plus_1)
    probs = []
    for k in range(n1 + 1):
        shared = (1.0 - beta) if k == 0 else beta if k == n1 else 0.0
        binom = math.comb(n1, k) * beta ** k * (1.0 - beta) ** (n1 - k)
        probs.append((1.0 - d) * shared + d * binom)
    return JointAvailability(n_plus_1=n1, count_probs=tuple(probs))


def duopoly_family(corr: DuopolyCorrelation) -> JointAvailability:
    """Embed the two-producer parametric family as a count distribution.

    Useful for cross-checking the many-producer code path against the
    duopoly solver.  Note this is a different family from
    mixture_family(2, beta, d) for interior d; the two only agree at the
    endpoints d = 0 and d = 1.
    """
    jp = duopoly_joint(corr)
    return JointAvailability(
        n_plus_1=2,
        count_probs=(jp[("L", "L")], jp[("L", "H")] + jp[("H", "L")], jp[("H", "H")]),
    )


def conditional_given_high(dist: JointAvailability) -> tuple[float, ...]:
    """Distribution of the number of high-state opponents, given one's own
    draw is high.

    By exchangeability Pr{S_others = j | own high} is
    Pr{S = j + 1} (j + 1) / (n_plus_1 * beta), a length-n_plus_1 vector
    over j = 0 .. n_plus_1 - 1.

    Raises:
        ValueError: the implied marginal is 0, so the conditioning event
            has probability zero.
    """
    beta = dist.marginal_beta
    if beta == 0.0:
        raise ValueError("cannot condition on a high draw: marginal beta is 0")
    n1 = dist.n_plus_1
    return tuple(
        dist.count_probs[j + 1] * (j + 1) / (n1 * beta) for j in range(n1)
    )


def _tail_probs(probs) -> np.ndarray:
    """tail[j] = Pr{X > j} for j = 0 .. len(probs) - 2."""
    arr = np.asarray(probs, dtype=float)
    # cumulative sum from the top, shifted so entry j excludes mass at j
    return np.cumsum(arr[::-1])[::-1][1:]


def check_fosd(cond_low_d, cond_high_d) -> bool:
    """First-order dominance of the low-dispersion conditional law.

    True when every tail probability Pr{X > j} under the lower-d
    distribution is at least the corresponding tail under the higher-d
    one, within 1e-12.  Lower dispersion concentrates opponents in the
    same (high) state, so its conditional count should dominate.
    """
    lo = np.asarray(cond_low_d, dtype=float)
    hi = np.asarray(cond_high_d, dtype=float)
    if lo.shape != hi.shape:
        raise ValueError("distributions must have the same support length")
    return bool(np.all(_tail_probs(lo) >= _tail_probs(hi) - 1e-12))


def check_sosd(count_low_d, count_high_d) -> bool:
    """Second-order dominance of the higher-dispersion count law.

    Compares running sums of tail differences: true when, for every m,
    the partial sum over j <= m of (Pr{S > j; high d} - Pr{S > j; low d})
    is at least -1e-12.  For equal-mean laws this is the standard
    mean-preserving-spread test, with the higher-d law the contraction.
    """
    lo = np.asarray(count_low_d, dtype=float)
    hi = np.asarray(count_high_d, dtype=float)
    if lo.shape != hi.shape:
        raise ValueError("distributions must have the same support length")
    gap = np.cumsum(_tail_probs(hi) - _tail_probs(lo))
    return bool(np.all(gap >= -1e-12))
