import math

import pytest

from windcournot.errors import BracketError, ConvergenceError
from windcournot.rootfind import bisect_decreasing, expand_upper


def test_finds_linear_root():
    root, residual = bisect_decreasing(lambda x: 2.0 - x, 0.0, 10.0)
    assert root == pytest.approx(2.0, abs=1e-12)
    assert abs(residual) <= 1e-12


def test_finds_transcendental_root():
    f = lambda x: math.cos(x) - x  # noqa: E731
    root, residual = bisect_decreasing(f, 0.0, 1.0)
    assert root == pytest.approx(0.7390851332151607, abs=1e-12)
    assert abs(residual) <= 1e-12


def test_exact_endpoint_zero_short_circuits():
    calls = []

    def f(x):
        calls.append(x)
        return 3.0 - x

    root, residual = bisect_decreasing(f, 3.0, 10.0)
    assert root == 3.0
    assert residual == 0.0
    # both endpoints get probed, but no midpoint ever does
    assert calls == [3.0, 10.0]


def test_upper_endpoint_zero():
    root, residual = bisect_decreasing(lambda x: 3.0 - x, 0.0, 3.0)
    assert root == 3.0
    assert residual == 0.0


def test_rejects_inverted_interval():
    with pytest.raises(BracketError):
        bisect_decreasing(lambda x: -x, 2.0, 1.0)


def test_rejects_non_bracketing_signs():
    with pytest.raises(BracketError):
        bisect_decreasing(lambda x: x + 1.0, 0.0, 1.0)
    with pytest.raises(BracketError):
        bisect_decreasing(lambda x: -x - 1.0, 0.0, 1.0)


def test_width_tolerance_handles_flat_residual():
    # scaled function keeps |f| above any reasonable residual_tol near the
    # root, so only the width test can stop the iteration
    root, _ = bisect_decreasing(lambda x: 1e9 * (0.3 - x), 0.0, 1.0, residual_tol=1e-300)
    assert root == pytest.approx(0.3, abs=1e-12)


def test_iteration_cap_raises():
    with pytest.raises(ConvergenceError):
        bisect_decreasing(
            lambda x: 1.0 - x, 0.0, 3.0,
            residual_tol=0.0, width_tol=0.0, max_iter=20,
        )


def test_expand_upper_finds_sign_change():
    hi = expand_upper(lambda x: 100.0 - x, 0.0, 1.0)
    assert hi > 100.0
    root, _ = bisect_decreasing(lambda x: 100.0 - x, 0.0, hi)
    assert root == pytest.approx(100.0, rel=1e-12)


def test_expand_upper_rejects_inverted_interval():
    with pytest.raises(BracketError):
        expand_upper(lambda x: -x, 1.0, 1.0)


def test_expand_upper_gives_up_on_positive_function():
    with pytest.raises(BracketError):
        expand_upper(lambda x: 1.0, 0.0, 1.0, max_doublings=10)
