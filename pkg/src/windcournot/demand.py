"""Inverse demand families and consumer utility.

Two families are supported: linear P(Q) = s - Q and concave quadratic
P(Q) = s - a*Q - b*Q**2 with a, b >= 0.  Both admit exact antiderivatives,
so the welfare computations elsewhere in the package never need numerical
integration.  All functions accept numpy arrays in place of scalars.
"""

from dataclasses import dataclass

__all__ = [
    "DemandSpec",
    "linear_demand",
    "quadratic_demand",
    "price",
    "price_deriv",
    "price_second_deriv",
    "utility",
    "validate_concavity",
    "ConcavityReport",
]


@dataclass(frozen=True)
class DemandSpec:
    """Concave, downward-sloping inverse demand.

    Attributes:
        kind: "linear" or "quadratic".
        s: price intercept, P(0).
        a: linear slope coefficient (quadratic family only; the linear
            family has unit slope by definition).
        b: curvature coefficient, b >= 0 (quadratic family only).
    """

    kind: str
    s: float
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "quadratic"):
            raise ValueError(f"unknown demand kind {self.kind!r}")
        if not self.s > 0.0:
            raise ValueError("price intercept s must be positive")
        if self.kind == "linear" and (self.a != 1.0 or self.b != 0.0):
            raise ValueError("linear demand has fixed unit slope; do not set a or b")
        if self.a < 0.0:
            raise ValueError("slope coefficient a must be >= 0")
        if self.b < 0.0:
            raise ValueError("curvature coefficient b must be >= 0")


def linear_demand(s: float) -> DemandSpec:
    """P(Q) = s - Q."""
    return DemandSpec(kind="linear", s=s)


def quadratic_demand(s: float, a: float, b: float) -> DemandSpec:
    """P(Q) = s - a*Q - b*Q**2."""
    return DemandSpec(kind="quadratic", s=s, a=a, b=b)


def price(spec: DemandSpec, q):
    """Market price at total quantity q.

    May be negative for large q; callers that care (the regime checks do)
    must reject such parameter sets themselves.  Clamping here would
    silently move the roots of every first order condition.
    """
    if spec.kind == "linear":
        return spec.s - q
    return spec.s - spec.a * q - spec.b * q * q


def price_deriv(spec: DemandSpec, q):
    """dP/dQ at q.  Constant -1 for the linear family."""
    if spec.kind == "linear":
        return -1.0
    return -spec.a - 2.0 * spec.b * q


def price_second_deriv(spec: DemandSpec, q):
    """d2P/dQ2 at q."""
    if spec.kind == "linear":
        return 0.0
    return -2.0 * spec.b


def utility(spec: DemandSpec, q):
    """Consumer utility U(q), the integral of price from 0 to q.

    U is strictly concave for both families (its second derivative is the
    demand slope), which is what drives every diversification benefit in
    the welfare analysis.
    """
    if spec.kind == "linear":
        return spec.s * q - 0.5 * q * q
    return spec.s * q - 0.5 * spec.a * q * q - spec.b * q * q * q / 3.0


@dataclass(frozen=True)
class ConcavityReport:
    """Outcome of validate_concavity.

    violation_q is the smallest quantity in [0, q_max] where a condition
    fails, or None when everything holds.
    """

    valid: bool
    slope_ok: bool
    curvature_ok: bool
    violation_q: float | None
    message: str


def validate_concavity(spec: DemandSpec, q_max: float) -> ConcavityReport:
    """Check P' < 0 and P'' <= 0 analytically over [0, q_max].

    Both families make this decidable without sampling: the slope is
    monotone in q, so its sign on the interval is pinned by the endpoint
    values.

    Args:
        spec: demand family to examine.
        q_max: upper end of the quantity range the caller intends to use.

    Returns:
        ConcavityReport with the failing location when invalid.
    """
    if not q_max > 0.0:
        raise ValueError("q_max must be positive")
    if spec.kind == "linear":
        return ConcavityReport(True, True, True, None, "linear demand: slope -1, no curvature")
    # Slope is -a - 2bq, most positive at q = 0.  With b >= 0 enforced at
    # construction the curvature condition cannot fail, but it is reported
    # for completeness.
    slope_ok = spec.a > 0.0
    curvature_ok = spec.b >= 0.0
    valid = slope_ok and curvature_ok
    violation = None if valid else 0.0
    msg = "ok" if valid else f"P'(0) = {-spec.a} is not strictly negative"
    return ConcavityReport(valid, slope_ok, curvature_ok, violation, msg)
