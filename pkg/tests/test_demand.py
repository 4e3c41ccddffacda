import numpy as np
import pytest

from windcournot.demand import (
    DemandSpec,
    linear_demand,
    price,
    price_deriv,
    price_second_deriv,
    quadratic_demand,
    utility,
    validate_concavity,
)


def test_linear_price_and_derivatives():
    dem = linear_demand(3.0)
    assert price(dem, 0.0) == 3.0
    assert price(dem, 1.2) == pytest.approx(1.8)
    assert price_deriv(dem, 0.7) == -1.0
    assert price_second_deriv(dem, 0.7) == 0.0


def test_linear_price_goes_negative_without_clamping():
    dem = linear_demand(3.0)
    assert price(dem, 5.0) == -2.0


def test_quadratic_price_and_derivatives():
    dem = quadratic_demand(3.0, 1.0, 0.1)
    q = 2.0
    assert price(dem, q) == pytest.approx(3.0 - 2.0 - 0.4)
    assert price_deriv(dem, q) == pytest.approx(-1.0 - 0.4)
    assert price_second_deriv(dem, q) == pytest.approx(-0.2)


def test_quadratic_reduces_to_linear_shape_when_b_zero():
    dem = quadratic_demand(3.0, 1.0, 0.0)
    lin = linear_demand(3.0)
    for q in (0.0, 0.5, 1.7):
        assert price(dem, q) == pytest.approx(price(lin, q))
        assert utility(dem, q) == pytest.approx(utility(lin, q))


def test_utility_is_price_antiderivative():
    dem = quadratic_demand(3.0, 1.0, 0.1)
    h = 1e-6
    for q in (0.3, 1.0, 2.2):
        numeric = (utility(dem, q + h) - utility(dem, q - h)) / (2.0 * h)
        assert numeric == pytest.approx(price(dem, q), abs=1e-8)


def test_linear_utility_value():
    dem = linear_demand(3.0)
    assert utility(dem, 1.68) == pytest.approx(3.0 * 1.68 - 0.5 * 1.68 ** 2)


def test_functions_accept_arrays():
    dem = linear_demand(3.0)
    q = np.array([0.0, 1.0, 2.0])
    np.testing.assert_allclose(price(dem, q), [3.0, 2.0, 1.0])
    np.testing.assert_allclose(utility(dem, q), [0.0, 2.5, 4.0])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "cubic", "s": 3.0},
        {"kind": "linear", "s": 0.0},
        {"kind": "linear", "s": -1.0},
        {"kind": "linear", "s": 3.0, "a": 2.0},
        {"kind": "linear", "s": 3.0, "b": 0.1},
        {"kind": "quadratic", "s": 3.0, "a": -1.0},
        {"kind": "quadratic", "s": 3.0, "a": 1.0, "b": -0.1},
    ],
)
def test_spec_validation_rejects(kwargs):
    with pytest.raises(ValueError):
        DemandSpec(**kwargs)


def test_concavity_linear_always_valid():
    report = validate_concavity(linear_demand(3.0), 10.0)
    assert report.valid and report.slope_ok and report.curvature_ok
    assert report.violation_q is None


def test_concavity_quadratic_flat_slope_invalid():
    report = validate_concavity(DemandSpec(kind="quadratic", s=3.0, a=0.0, b=0.1), 5.0)
    assert not report.valid
    assert not report.slope_ok
    assert report.violation_q == 0.0


def test_concavity_rejects_bad_qmax():
    with pytest.raises(ValueError):
        validate_concavity(linear_demand(3.0), 0.0)
