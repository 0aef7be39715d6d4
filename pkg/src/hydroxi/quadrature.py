"""Double-exponential quadrature used as an independent numeric oracle.

Finite intervals use the tanh-sinh map, ``[a, inf)`` the exp-sinh map.
Nodes are generated as distances from the endpoints, so integrands with
logarithmic or inverse-square-root endpoint singularities are sampled
without cancellation.  Arithmetic is mpmath at ``digits(tol) + 15``
decimal digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath


@dataclass(frozen=True)
class IntegrationResult:
    value: mpmath.mpf
    error_estimate: float
    evaluations: int

    def __float__(self) -> float:
        return float(self.value)


class QuadratureError(ArithmeticError):
    """Raised when the evaluation budget is exhausted; carries the best estimate."""

    def __init__(self, message: str, best: IntegrationResult):
        super().__init__(message)
        self.best = best


def _working_dps(tol: float) -> int:
    return max(15, math.ceil(-math.log10(tol))) + 15


@lru_cache(maxsize=64)
def _tanh_sinh_level(dps: int, level: int) -> tuple[tuple[mpmath.mpf, mpmath.mpf], ...]:
    """(distance from endpoint on [-1, 1], weight) for new nodes t > 0 at ``level``.

    Level 0 holds t = 1, 2, ...; level k > 0 holds odd multiples of 2**-k.
    """
    with mpmath.workdps(dps):
        h = mpmath.mpf(2) ** -level
        cutoff = mpmath.mpf(10) ** (-2 * dps)
        half_pi = mpmath.pi / 2
        nodes = []
        j = 1
        while True:
            t = j * h
            u = half_pi * mpmath.sinh(t)
            dist = 2 / (mpmath.exp(2 * u) + 1)  # 1 - tanh(u)
            weight = half_pi * mpmath.cosh(t) / mpmath.cosh(u) ** 2
            if weight < cutoff:
                break
            nodes.append((dist, weight))
            j += 1 if level == 0 else 2
        return tuple(nodes)


@lru_cache(maxsize=64)
def _exp_sinh_level(dps: int, level: int) -> tuple[tuple[mpmath.mpf, mpmath.mpf], ...]:
    """(offset from a, weight) pairs of the exp-sinh map for all t of ``level``."""
    with mpmath.workdps(dps):
        h = mpmath.mpf(2) ** -level
        half_pi = mpmath.pi / 2
        tmax = mpmath.asinh(2 * dps * mpmath.log(10) / mpmath.pi) + 1
        nodes = []
        start = -int(tmax / h)
        for j in range(start, int(tmax / h) + 1):
            if level > 0 and j % 2 == 0:
                continue
            t = j * h
            x = mpmath.exp(half_pi * mpmath.sinh(t))
            w = half_pi * mpmath.cosh(t) * x
            nodes.append((x, w))
        return tuple(nodes)


def integrate(f: Callable, a, b, tol: float = 1e-12, max_level: int = 10,
              relative: bool = False) -> IntegrationResult:
    """Integrate ``f`` over the open interval (a, b); ``b`` may be ``inf``.

    The error estimate is the change between successive step halvings.
    With ``relative`` the target is ``tol * max(1, |value|)``.
    Raises :class:`QuadratureError` if the target is not reached by ``max_level``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    dps = _working_dps(tol)
    with mpmath.workdps(dps):
        a = mpmath.mpf(a)
        b = mpmath.mpf(b) if b != math.inf else mpmath.inf
        if not a < b:
            raise ValueError("need a < b")
        if mpmath.isinf(a):
            raise ValueError("lower limit must be finite")
        if mpmath.isinf(b):
            return _refine(_exp_sinh_sum(f, a), tol, max_level, dps, relative)
        return _refine(_tanh_sinh_sum(f, a, b), tol, max_level, dps, relative)


def _tanh_sinh_sum(f, a, b):
    half = (b - a) / 2
    mid = (a + b) / 2

    def level_sum(dps, level):
        total = mpmath.mpf(0)
        count = 0
        if level == 0:
            total += f(mid) * mpmath.pi / 2
            count += 1
        for dist, w in _tanh_sinh_level(dps, level):
            d = dist * half
            for x in (a + d, b - d):
                if a < x < b:
                    total += w * f(x)
                    count += 1
        return total * half, count

    return level_sum


def _exp_sinh_sum(f, a):
    def level_sum(dps, level):
        total = mpmath.mpf(0)
        count = 0
        for off, w in _exp_sinh_level(dps, level):
            x = a + off
            if x > a and mpmath.isfinite(x):
                total += w * f(x)
                count += 1
        return total, count

    return level_sum


def _refine(level_sum, tol, max_level, dps, relative) -> IntegrationResult:
    raw, evals = level_sum(dps, 0)
    estimate = raw
    error = math.inf
    for level in range(1, max_level + 1):
        s, c = level_sum(dps, level)
        evals += c
        raw += s
        new = raw * mpmath.mpf(2) ** -level
        error = float(abs(new - estimate))
        estimate = new
        target = tol * max(1.0, float(abs(estimate))) if relative else tol
        if error <= target and level >= 3:
            return IntegrationResult(estimate, error, evals)
    best = IntegrationResult(estimate, error, evals)
    raise QuadratureError(f"no convergence to {tol:g} (estimate {error:.3g})", best)


# --- oracle for decomposition coefficients ---------------------------------


def _radial_oracle(n: int, ell: int):
    """Textbook normalized R_{n,ell} built from mpmath's Laguerre function."""
    norm = mpmath.sqrt(
        (mpmath.mpf(2) / n) ** 3 * mpmath.factorial(n - ell - 1) / (2 * n * mpmath.factorial(n + ell))
    )

    def radial(r):
        rho = 2 * r / n
        return norm * mpmath.exp(-rho / 2) * rho**ell * mpmath.laguerre(n - ell - 1, 2 * ell + 1, rho)

    return radial


@lru_cache(maxsize=None)
def oracle_radial_overlap(n: int, ell: int, n_p: int, ell_p: int, tol: float = 1e-13) -> mpmath.mpf:
    r1, r2 = _radial_oracle(n, ell), _radial_oracle(n_p, ell_p)
    return integrate(lambda r: r1(r) * r2(r) * r * r, 0, math.inf, tol).value


class _LegendreQCache:
    """mpmath ``legenq`` values keyed by node; the same nodes recur across overlaps."""

    def __init__(self):
        self._values: dict = {}

    def __call__(self, ell: int, x):
        key = (ell, x)
        if key not in self._values:
            self._values[key] = mpmath.legenq(ell, 0, x, type=2, zeroprec=4 * mpmath.mp.prec)
        return self._values[key]


_legenq = _LegendreQCache()


@lru_cache(maxsize=None)
def oracle_q_norm_sq(ell: int, tol: float = 1e-13) -> mpmath.mpf:
    return integrate(lambda x: _legenq(ell, x) ** 2, -1, 1, tol).value


@lru_cache(maxsize=None)
def oracle_angular_overlap(ell_xi: int, ell_theta: int, sigma: int = -1, tol: float = 1e-13) -> mpmath.mpf:
    """``<normalized P_ell_theta, sigma Q_ell_xi / ||Q_ell_xi||>`` on (-1, 1)."""
    raw = integrate(lambda x: mpmath.legendre(ell_theta, x) * _legenq(ell_xi, x), -1, 1, tol).value
    with mpmath.workdps(_working_dps(tol)):
        return sigma * mpmath.sqrt(mpmath.mpf(2 * ell_theta + 1) / 2) * raw / mpmath.sqrt(oracle_q_norm_sq(ell_xi, tol))


def oracle_coefficient(n: int, ell: int, n_p: int, ell_p: int, tol: float = 1e-12, sigma: int = -1) -> float:
    """Numeric ``<Psi_{n',l',0}, Xi_{n,l,0}>`` from independent 1D integrals."""
    if not (0 <= ell < n and 0 <= ell_p < n_p):
        raise ValueError("invalid quantum numbers")
    rad = oracle_radial_overlap(n, ell, n_p, ell_p, tol / 10)
    ang = oracle_angular_overlap(ell, ell_p, sigma, tol / 10)
    return float(rad * ang)
