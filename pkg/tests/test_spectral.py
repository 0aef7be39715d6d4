import math
from fractions import Fraction

import mpmath
import pytest

from hydroxi.exact import ONE, PI_SQUARED, ZERO, PiSquaredElement
from hydroxi.quadrature import integrate, oracle_coefficient
from hydroxi.spectral import (
    Amplitude,
    angular_overlap,
    coefficient,
    decompose,
    divergence_scan,
    point_autocorrelation,
    radial_overlap,
    residual_check,
)

C21_SQUARE = PiSquaredElement.from_rational(Fraction(4608, 2187)) / PI_SQUARED


@pytest.fixture(scope="module")
def report40():
    return decompose(1, 0, 40)


def test_amplitude_invariants():
    with pytest.raises(ValueError):
        Amplitude(0, ONE)
    with pytest.raises(ValueError):
        Amplitude(1, ZERO)
    a = Amplitude(-1, PiSquaredElement.from_rational(Fraction(9, 4)))
    assert float(a) == -1.5
    assert float(-a) == 1.5


def test_radial_overlap_examples():
    assert radial_overlap(1, 0, 1, 0) == Amplitude(1, ONE)
    assert radial_overlap(2, 0, 2, 0) == Amplitude(1, ONE)
    r = radial_overlap(1, 0, 2, 1)
    assert r.sign == 1 and r.square == PiSquaredElement.from_rational(Fraction(512, 2187))
    assert abs(float(r) - 16 * math.sqrt(6) / 81) < 1e-15
    # hand Gamma integral: (1/sqrt 6) int r^3 e^{-3r/2} dr = (1/sqrt 6) 3!/(3/2)^4
    assert abs(float(r) - 6 / 1.5**4 / math.sqrt(6)) < 1e-15
    # independent numeric quadrature of 2 e^{-r} * r e^{-r/2}/(2 sqrt 6) * r^2
    num = integrate(lambda x: 2 * mpmath.exp(-x) * x * mpmath.exp(-x / 2) / (2 * mpmath.sqrt(6)) * x * x, 0, math.inf, 1e-13)
    assert abs(num.value - float(r)) < 1e-13


def test_angular_overlap_examples():
    a = angular_overlap(0, 1)
    assert a.sign == -1 and a.square == PiSquaredElement.from_rational(9) / PI_SQUARED
    assert abs(float(a) + 3 / math.pi) < 1e-15
    # quadrature of sqrt(3/2) cos(t) (sqrt 6/pi) ln tan(t/2) sin(t)
    q = integrate(
        lambda t: mpmath.sin(t) * mpmath.sqrt(1.5) * mpmath.cos(t) * mpmath.sqrt(6) / mpmath.pi * mpmath.log(mpmath.tan(t / 2)),
        0, mpmath.pi, 1e-13,
    )
    assert abs(q.value - float(a)) < 1e-13
    assert angular_overlap(0, 2).is_zero()
    assert angular_overlap(0, 0).is_zero()


def test_coefficient_examples():
    c = coefficient(1, 0, 2, 1)
    assert c.sign == -1 and c.square == C21_SQUARE
    assert abs(float(c) - (-0.46204254887921547)) < 1e-15
    assert abs(float(c.square) - 0.2134833169748022) < 1e-15
    assert coefficient(1, 0, 1, 0).is_zero()
    for n_p in range(1, 10):
        for lp in range(0, n_p, 2):
            assert coefficient(1, 0, n_p, lp).is_zero()


def test_coefficient_against_oracle():
    for n, l in [(1, 0), (2, 1), (3, 2)]:
        for n_p in range(1, 6):
            for lp in range(n_p):
                exact = float(coefficient(n, l, n_p, lp))
                assert abs(exact - oracle_coefficient(n, l, n_p, lp, 1e-11)) < 1e-9


def test_sigma_invariance(report40):
    flipped = decompose(1, 0, 12, sigma=1)
    for row_a, row_b in zip(report40.p_of_n, flipped.p_of_n):
        assert row_a.p_squared == row_b.p_squared
    for (_, _, a), (_, _, b) in zip(report40.entries, flipped.entries):
        assert a.square == b.square and a.sign == -b.sign
    for t in (0.0, 5.0, 33.3):
        assert abs(point_autocorrelation(1, 0, 12, t) - point_autocorrelation(1, 0, 12, t, flipped)) < 1e-15


def test_decompose_examples(report40):
    rows = report40.p_of_n
    assert rows[0].p_squared == ZERO and rows[0].p_value == 0
    assert rows[1].p_squared == C21_SQUARE
    assert abs(float(rows[1].p_value) - 0.46204254887921547) < 1e-15
    assert float(rows[39].p_value) < 0.6
    assert report40.continuum_lower_bound >= 0.64


def test_decompose_invariants(report40):
    prev = ZERO
    for row in report40.p_of_n:
        assert prev <= row.p_squared <= ONE
        prev = row.p_squared
    for n_p, lp, amp in report40.entries:
        assert amp.is_zero() == (lp % 2 == 0)
    assert report40.continuum_lower_bound == pytest.approx(1 - float(report40.p_of_n[-1].p_value) ** 2, abs=1e-15)
    ordering = [(n_p, lp) for n_p, lp, _ in report40.entries]
    assert ordering == sorted(ordering)


def test_decompose_other_sources():
    rep = decompose(2, 1, 10)
    assert not rep.entries[0][2].is_zero()  # Psi_{1,0,0} overlaps Xi_{2,1,0}
    assert rep.p_of_n[-1].p_squared < ONE


def test_decompose_guards():
    with pytest.raises(ValueError):
        decompose(1, 0, 61)
    with pytest.raises(ValueError):
        decompose(3, 0, 2)
    with pytest.raises(ValueError):
        decompose(1, 0, 10, digits=10)


def test_decompose_is_deterministic_in_parallel(monkeypatch):
    serial = decompose(1, 0, 8)
    monkeypatch.setenv("HYDROXI_THREADS", "2")
    parallel = decompose(1, 0, 8)
    assert [(a, b, c.square) for a, b, c in serial.entries] == [(a, b, c.square) for a, b, c in parallel.entries]


def test_residual_examples():
    r1 = residual_check(1, 0, 2.0, math.pi / 3, 1e-3)
    r2 = residual_check(1, 0, 2.0, math.pi / 3, 2e-3)
    assert r2 / r1 == pytest.approx(4.0, rel=0.25)
    assert r1 < 1e-4
    c1 = residual_check(2, 1, 2.0, math.pi / 3, 1e-3, kind="regular")
    c2 = residual_check(2, 1, 2.0, math.pi / 3, 2e-3, kind="regular")
    assert c2 / c1 == pytest.approx(4.0, rel=0.25)


def test_residual_slope_three_halvings():
    hs = [8e-3, 4e-3, 2e-3, 1e-3]
    res = [residual_check(2, 1, 1.7, 1.1, h) for h in hs]
    slope = math.log(res[0] / res[-1]) / math.log(hs[0] / hs[-1])
    assert 1.8 <= slope <= 2.2


def test_residual_preconditions():
    with pytest.raises(ValueError):
        residual_check(1, 0, 2.0, 0.005, 1e-3)
    with pytest.raises(ValueError):
        residual_check(1, 0, 0.005, 1.0, 1e-3)
    with pytest.raises(ValueError):
        residual_check(1, 0, 2.0, 1.0, 0)


def test_point_autocorrelation(report40):
    p2 = float(report40.p_of_n[11].p_value) ** 2
    rep12 = decompose(1, 0, 12)
    a0 = point_autocorrelation(1, 0, 12, 0.0, rep12)
    assert a0.imag == 0 and a0.real == pytest.approx(p2, rel=1e-14)
    t_special = 2 * math.pi / (-0.125 + 1 / 18)
    for t in [0.3, 1.0, 17.0, 250.0, t_special]:
        a = point_autocorrelation(1, 0, 12, t, rep12)
        assert abs(a) <= a0.real + 1e-15
        assert abs(a) < 0.36
    with pytest.raises(ValueError):
        point_autocorrelation(1, 0, 1, 0.0)


def test_divergence_scan_examples():
    eps = [1e-2, 1e-3, 1e-4]
    vals = divergence_scan(1, 1, eps)
    assert vals[0] < vals[1] < vals[2]
    inc = [b - a for a, b in zip(vals, vals[1:])]
    # asymptotically sin(t)|Q_1^1|^2 ~ 1/t at both poles: 2 ln 10 per decade
    assert all(abs(d - 2 * math.log(10)) < 0.05 for d in inc)
    control = divergence_scan(1, 0, eps)
    cinc = [b - a for a, b in zip(control, control[1:])]
    assert abs(cinc[1]) < abs(cinc[0]) < 1e-2


def test_divergence_scan_guards():
    with pytest.raises(ValueError):
        divergence_scan(3, 2, [1e-2])
    with pytest.raises(ValueError):
        divergence_scan(1, 1, [1e-3, 1e-2])
    with pytest.raises(ValueError):
        divergence_scan(1, 1, [2.0])
