"""Spectral decomposition of the pseudo-eigenfunctions onto bound states.

Every overlap ``C = <Psi_{n',l',0}, Xi_{n,l,0}>`` factorizes into a radial
integral (rational after squaring) and an angular integral whose square lies
in Q(pi^2), so all squared coefficients and all partial sums
``P(N)^2 = sum_{n' <= N} sum_{l'} C^2`` are exact.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exact import ZERO, PiSquaredElement, pisq_eval
from .hydrogen import QuantumNumbers, eigenvalue, exp_moment, radial, theta_regular, xi
from .quadrature import integrate
from .specfun import SMALL_M_CASES, assoc_legendre_q_small_m, legendre_q, pq_overlap, q_norm_sq

DEFAULT_NMAX = 40
NMAX_CAP = 60


@dataclass(frozen=True)
class Amplitude:
    """Signed square root ``sign * sqrt(square)`` with ``square`` in Q(pi^2)."""

    sign: int
    square: PiSquaredElement

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if (self.sign == 0) != self.square.is_zero():
            raise ValueError("sign is zero iff square is zero")

    @classmethod
    def zero(cls) -> "Amplitude":
        return cls(0, ZERO)

    @classmethod
    def from_rational(cls, q: Fraction) -> "Amplitude":
        """Amplitude equal to the rational ``q`` itself."""
        return cls((q > 0) - (q < 0), PiSquaredElement.from_rational(q * q))

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "Amplitude") -> "Amplitude":
        return Amplitude(self.sign * other.sign, self.square * other.square)

    def __neg__(self) -> "Amplitude":
        return Amplitude(-self.sign, self.square)

    def value(self, digits: int = 30) -> mpmath.mpf:
        if self.sign == 0:
            return mpmath.mpf(0)
        with mpmath.workdps(digits + 5):
            return self.sign * mpmath.sqrt(pisq_eval(self.square, digits))

    def __float__(self) -> float:
        return float(self.value(20))


def _check(n: int, ell: int):
    QuantumNumbers(n, ell)


@lru_cache(maxsize=None)
def radial_integral(n: int, ell: int, n_p: int, ell_p: int) -> Fraction:
    """Unnormalized ``int poly * poly' * r^2 exp(-(1/n + 1/n') r) dr``."""
    _check(n, ell)
    _check(n_p, ell_p)
    a, b = radial(n, ell), radial(n_p, ell_p)
    return exp_moment((a.full_poly * b.full_poly).shift(2), a.decay_rate + b.decay_rate)


def radial_overlap(n: int, ell: int, n_p: int, ell_p: int) -> Amplitude:
    """Exact ``int_0^inf R_{n',l'} R_{n,l} r^2 dr``; the square is rational."""
    raw = radial_integral(n, ell, n_p, ell_p)
    if raw == 0:
        return Amplitude.zero()
    norms = radial(n, ell).norm_sq_rational * radial(n_p, ell_p).norm_sq_rational
    return Amplitude(1 if raw > 0 else -1, PiSquaredElement.from_rational(raw * raw * norms))


def angular_overlap(ell_xi: int, ell_theta: int, sigma: int = -1) -> Amplitude:
    """``<sqrt((2l'+1)/2) P_l', xi_l>`` with weight sin(theta)."""
    if ell_xi < 0 or ell_theta < 0:
        raise ValueError("indices must be >= 0")
    pq = pq_overlap(ell_xi, ell_theta)
    if pq == 0:
        return Amplitude.zero()
    square = q_norm_sq(ell_xi).inverse() * (Fraction(2 * ell_theta + 1, 2) * pq * pq)
    return Amplitude(sigma * (1 if pq > 0 else -1), square)


def coefficient(n: int, ell: int, n_p: int, ell_p: int, sigma: int = -1) -> Amplitude:
    """``C^{(n,l)}_{n',l'} = <Psi_{n',l',0}, Xi_{n,l,0}>`` exactly."""
    _check(n, ell)
    _check(n_p, ell_p)
    ang = angular_overlap(ell, ell_p, sigma)
    if ang.is_zero():
        return ang
    return radial_overlap(n, ell, n_p, ell_p) * ang


# --- decomposition report --------------------------------------------------


@dataclass(frozen=True)
class PRow:
    N: int
    p_squared: PiSquaredElement
    p_value: mpmath.mpf

    @property
    def p_squared_value(self) -> mpmath.mpf:
        return self.p_value**2


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    ell: int
    entries: tuple[tuple[int, int, Amplitude], ...]
    p_of_n: tuple[PRow, ...]
    continuum_lower_bound: float
    digits: int

    def shell_weights(self) -> dict[int, PiSquaredElement]:
        """``S_{n'} = sum_{l'} C^2`` per principal shell."""
        out: dict[int, PiSquaredElement] = {}
        for n_p, _, amp in self.entries:
            out[n_p] = out.get(n_p, ZERO) + amp.square
        return out

    def heuristic_extrapolation(self) -> float | None:
        """P(inf)^2 assuming a ``c / N^2`` tail fitted to the last two rows.

        Not a bound; the certified figure is :attr:`continuum_lower_bound`.
        """
        if len(self.p_of_n) < 2:
            return None
        a, b = self.p_of_n[-2], self.p_of_n[-1]
        pa, pb = float(a.p_value) ** 2, float(b.p_value) ** 2
        return (b.N**2 * pb - a.N**2 * pa) / (b.N**2 - a.N**2)


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("HYDROXI_THREADS", "1")))
    except ValueError:
        return 1


def _shell(args: tuple[int, int, int, int]) -> list[tuple[int, int, Amplitude]]:
    n, ell, n_p, sigma = args
    return [(n_p, lp, coefficient(n, ell, n_p, lp, sigma)) for lp in range(n_p)]


def decompose(n: int, ell: int, n_max: int = DEFAULT_NMAX, digits: int = 30,
              sigma: int = -1, cap: int = NMAX_CAP) -> DecompositionReport:
    """All coefficients for ``n' <= n_max`` and the exact P(N) table."""
    _check(n, ell)
    if n_max < n:
        raise ValueError("n_max must be >= n")
    if n_max > cap:
        raise ValueError(f"n_max={n_max} exceeds the configured cap {cap}")
    if not 15 <= digits <= 200:
        raise ValueError("digits must lie in [15, 200]")

    jobs = [(n, ell, n_p, sigma) for n_p in range(1, n_max + 1)]
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            shells = list(pool.map(_shell, jobs))
    else:
        shells = [_shell(job) for job in jobs]

    entries = tuple(e for shell in shells for e in shell)
    rows = []
    total = ZERO
    float_total = mpmath.mpf(0)
    with mpmath.workdps(digits + 10):
        for N, shell in enumerate(shells, start=1):
            for _, _, amp in shell:
                if not amp.is_zero():
                    total = total + amp.square
                    float_total += pisq_eval(amp.square, digits + 5)
            exact_value = pisq_eval(total, digits + 5)
            if abs(exact_value - float_total) > mpmath.mpf(10) ** (5 - digits):
                raise ArithmeticError(f"exact and float P({N})^2 disagree")
            rows.append(PRow(N, total, mpmath.sqrt(exact_value)))
    bound = float(1 - rows[-1].p_value ** 2)
    return DecompositionReport(n, ell, entries, tuple(rows), bound, digits)


# --- pseudo-eigenvalue residual --------------------------------------------


def _laplacian_residual(func, n: int, r, theta, h) -> mpmath.mpf:
    """|(-1/2 Lap_h - 1/r - lambda_n) f| with a central-difference spherical Laplacian (m = 0)."""
    f0 = func(r, theta)
    frp, frm = func(r + h, theta), func(r - h, theta)
    ftp, ftm = func(r, theta + h), func(r, theta - h)
    f_rr = (frp - 2 * f0 + frm) / h**2
    f_r = (frp - frm) / (2 * h)
    f_tt = (ftp - 2 * f0 + ftm) / h**2
    f_t = (ftp - ftm) / (2 * h)
    lap = f_rr + 2 * f_r / r + (f_tt + mpmath.cot(theta) * f_t) / r**2
    lam = mpmath.mpf(-1) / (2 * n * n)
    return abs(-lap / 2 - f0 / r - lam * f0)


def residual_check(n: int, ell: int, r: float, theta: float, h: float,
                   kind: str = "pseudo", dps: int = 40) -> float:
    """Finite-difference residual of ``H f = lambda_n f``; O(h^2) for eigen- and pseudo-states."""
    _check(n, ell)
    if h <= 0:
        raise ValueError("h must be positive")
    if r <= 10 * h:
        raise ValueError("r must exceed 10 h")
    if theta < 10 * h or theta > math.pi - 10 * h:
        raise ValueError("theta must stay 10 h away from the z-axis")
    rad = radial(n, ell)
    if kind == "pseudo":
        ang = xi(ell)
    elif kind == "regular":
        ang = theta_regular(ell)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    with mpmath.workdps(dps):
        norm = 1 / mpmath.sqrt(2 * mpmath.pi)
        res = _laplacian_residual(
            lambda rr, tt: rad(rr) * ang(tt) * norm, n, mpmath.mpf(r), mpmath.mpf(theta), mpmath.mpf(h)
        )
    return float(res)


# --- autocorrelation -------------------------------------------------------


def point_autocorrelation(n: int, ell: int, n_max: int, t: float,
                          report: DecompositionReport | None = None) -> complex:
    """Point-spectrum part ``sum_{n'} exp(-i lambda_{n'} t) S_{n'}``.

    The continuum part is not modeled, so ``|a_p(t)| <= P(n_max)^2 < 1``,
    whereas the naive evolution would have unit modulus.
    """
    _check(n, ell)
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if report is None or report.n != n or report.ell != ell or report.p_of_n[-1].N != n_max:
        report = decompose(n, ell, max(n_max, n))
    weights = report.shell_weights()
    total = 0j
    for n_p in sorted(weights):
        s = float(weights[n_p])
        if s:
            total += cmath.exp(-1j * eigenvalue(n_p) * t) * s
    return total


# --- m != 0 divergence scan ------------------------------------------------


def _polar_density(ell: int, m: int):
    if m == 0:
        rep = legendre_q(ell)
        return lambda th: mpmath.sin(th) * rep.at_angle(th) ** 2
    return lambda th: mpmath.sin(th) * assoc_legendre_q_small_m(ell, m, mpmath.cos(th)) ** 2


def divergence_scan(ell: int, m: int, epsilons: list[float], tol: float = 1e-10) -> list[float]:
    """``I(eps) = int_eps^{pi-eps} sin(t) |Q_l^m(cos t)|^2 dt`` for each cutoff.

    ``m = 0`` is accepted as the convergent control.  ``tol`` is relative to
    ``max(1, |I|)`` since the m != 0 integrals grow without bound.
    """
    if m != 0 and (ell, m) not in SMALL_M_CASES:
        raise ValueError(f"unsupported (ell, m) = ({ell}, {m})")
    if any(not 0 < e < math.pi / 2 for e in epsilons):
        raise ValueError("cutoffs must lie in (0, pi/2)")
    if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
        raise ValueError("cutoffs must be strictly decreasing")
    dens = _polar_density(ell, m)
    out = []
    for eps in epsilons:
        # split at pi/2: both halves only have the near-pole growth at one end
        lower = integrate(dens, eps, mpmath.pi / 2, tol, max_level=14, relative=True).value
        upper = integrate(dens, mpmath.pi / 2, mpmath.pi - eps, tol, max_level=14, relative=True).value
        out.append(float(lower + upper))
    return out
