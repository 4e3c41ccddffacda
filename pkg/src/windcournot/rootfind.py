"""Bracketed root finding for monotone first-order conditions.

Every solver in the package reduces to finding the zero of a strictly
decreasing function on a known interval, so plain bisection with tight
tolerances is all we need.  No derivatives, no scipy dependency, and the
failure modes are explicit exceptions rather than silently returned
endpoints.
"""

from .errors import BracketError, ConvergenceError

__all__ = ["bisect_decreasing", "expand_upper"]

RESIDUAL_TOL = 1e-12
WIDTH_TOL = 1e-13
MAX_ITER = 200


def bisect_decreasing(f, lo: float, hi: float, *, residual_tol: float = RESIDUAL_TOL,
                      width_tol: float = WIDTH_TOL, max_iter: int = MAX_ITER):
    """Zero of a decreasing function f on [lo, hi].

    Requires f(lo) >= 0 >= f(hi).  Exact zeros at either endpoint are
    returned immediately.  Stops when |f(mid)| <= residual_tol or the
    bracket width drops below width_tol, whichever comes first.

    Returns:
        (root, residual) where residual = f(root).

    Raises:
        BracketError: the endpoint signs do not bracket a root of a
            decreasing function.
        ConvergenceError: neither tolerance was met within max_iter
            iterations (practically unreachable for sane tolerances,
            since 200 halvings shrink any bracket below 1e-13).
    """
    if not lo < hi:
        raise BracketError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return lo, 0.0
    if f_hi == 0.0:
        return hi, 0.0
    if f_lo < 0.0 or f_hi > 0.0:
        raise BracketError(
            f"f must be positive at lo and negative at hi for a decreasing "
            f"bracket; got f({lo!r}) = {f_lo!r}, f({hi!r}) = {f_hi!r}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) <= residual_tol:
            return mid, f_mid
        if f_mid > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= width_tol:
            mid = 0.5 * (lo + hi)
            return mid, f(mid)
    raise ConvergenceError(
        f"bisection did not converge in {max_iter} iterations "
        f"(bracket [{lo!r}, {hi!r}])"
    )


def expand_upper(f, lo: float, hi: float, *, factor: float = 2.0, max_doublings: int = 60) -> float:
    """Grow hi geometrically until f(hi) < 0.

    Helper for solvers whose natural upper bound is not known in advance
    (the best-response quantity of an unconstrained producer, for
    instance).  The initial hi must exceed lo.

    Raises:
        BracketError: f stayed nonnegative after max_doublings expansions.
    """
    if not lo < hi:
        raise BracketError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    for _ in range(max_doublings):
        if f(hi) < 0.0:
            return hi
        hi = lo + factor * (hi - lo)
    raise BracketError(
        f"could not find a sign change: f still nonnegative at {hi!r}"
    )
