import math
import random

import mpmath
import pytest

from hydroxi.quadrature import IntegrationResult, QuadratureError, integrate, oracle_coefficient

TOL = 1e-12


def test_xi0_normalization_integral():
    res = integrate(lambda t: mpmath.sin(t) * 6 / mpmath.pi**2 * mpmath.log(mpmath.tan(t / 2)) ** 2, 0, mpmath.pi, TOL)
    assert abs(res.value - 1) < TOL
    assert res.error_estimate >= 0 and res.evaluations > 0


def test_artanh_squared():
    res = integrate(lambda x: mpmath.atanh(x) ** 2, -1, 1, 1e-10)
    assert abs(res.value - mpmath.pi**2 / 6) < 1e-10


def test_trivial_and_singular():
    assert abs(integrate(lambda x: 1, 0, 1, TOL).value - 1) < TOL
    assert abs(integrate(mpmath.log, 0, 1, TOL).value + 1) < TOL
    assert abs(integrate(lambda x: 1 / mpmath.sqrt(x), 0, 1, TOL).value - 2) < TOL


def test_semi_infinite_gamma_integral():
    # int_0^inf r^k e^{-a r} dr = k! / a^(k+1)
    res = integrate(lambda r: r**5 * mpmath.exp(-r / 3), 0, math.inf, TOL)
    assert abs(res.value - math.factorial(5) * 3**6) < TOL * 3**6 * 120


def _smooth(seed):
    rng = random.Random(seed)
    a, b, c = (rng.uniform(-2, 2) for _ in range(3))
    return lambda x: a * mpmath.cos(b * x) + c * x**2


@pytest.mark.parametrize("seed", range(5))
def test_linearity(seed):
    f, g = _smooth(seed), _smooth(seed + 100)
    alpha, beta = 0.7, -1.3
    lhs = integrate(lambda x: alpha * f(x) + beta * g(x), -1, 2, TOL).value
    rhs = alpha * integrate(f, -1, 2, TOL).value + beta * integrate(g, -1, 2, TOL).value
    assert abs(lhs - rhs) < 3 * TOL


@pytest.mark.parametrize("seed", range(3))
def test_interval_additivity(seed):
    f = _smooth(seed)
    whole = integrate(f, 0, 3, TOL).value
    parts = integrate(f, 0, 1.2, TOL).value + integrate(f, 1.2, 3, TOL).value
    assert abs(whole - parts) < 3 * TOL


def test_non_convergence_carries_best_estimate():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: mpmath.sin(1 / x), 0, 1, 1e-14, max_level=4)
    assert isinstance(info.value.best, IntegrationResult)


def test_bad_arguments():
    with pytest.raises(ValueError):
        integrate(lambda x: x, 1, 0)
    with pytest.raises(ValueError):
        integrate(lambda x: x, 0, 1, tol=0)


def test_oracle_coefficient_examples():
    assert abs(oracle_coefficient(1, 0, 2, 1) - (-0.4620425488792155)) < 1e-10
    assert abs(oracle_coefficient(1, 0, 3, 2)) < 1e-12
    assert abs(oracle_coefficient(1, 0, 1, 0)) < 1e-12
