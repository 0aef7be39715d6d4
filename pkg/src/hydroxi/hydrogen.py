"""Hydrogen eigenfunctions and the m = 0 pseudo-eigenfunctions.

Hartree atomic units throughout: hbar = mu = e = a0 = 1, energies in Hartree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Literal

import mpmath
import numpy as np

from .exact import PiSquaredElement, Polynomial
from .specfun import LegendreQRep, laguerre, legendre_p, legendre_q, q_norm_sq


@dataclass(frozen=True)
class UnitSystem:
    hbar: int = 1
    mu: int = 1
    e_charge: int = 1

    @property
    def a0(self) -> Fraction:
        return Fraction(self.hbar**2, self.mu * self.e_charge**2)


ATOMIC_UNITS = UnitSystem()


class SingularPointError(ValueError):
    """Evaluation requested on the z-axis, where the pseudo states diverge."""


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    ell: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.ell < self.n:
            raise ValueError(f"need 0 <= ell < n, got n={self.n}, ell={self.ell}")
        if abs(self.m) > self.ell:
            raise ValueError(f"need |m| <= ell, got m={self.m}")


@dataclass(frozen=True)
class SpatialPoint:
    r: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be >= 0")
        if not 0 <= self.theta <= mpmath.pi:
            raise ValueError("theta must lie in [0, pi]")
        if not 0 <= self.phi < 2 * mpmath.pi:
            raise ValueError("phi must lie in [0, 2 pi)")


# --- radial part -----------------------------------------------------------


def exp_moment(poly: Polynomial, alpha: Fraction) -> Fraction:
    """``int_0^inf poly(r) exp(-alpha r) dr`` via ``k!/alpha^(k+1)``."""
    return sum(
        (c * factorial(k) / alpha ** (k + 1) for k, c in enumerate(poly.coeffs) if c),
        Fraction(0),
    )


@dataclass(frozen=True)
class RadialFunction:
    """``R(r) = sqrt(norm_sq_rational) * poly(r) * r**ell * exp(-decay_rate * r)``."""

    n: int
    ell: int
    poly: Polynomial
    decay_rate: Fraction
    norm_sq_rational: Fraction

    @property
    def full_poly(self) -> Polynomial:
        """``poly(r) * r**ell`` (unnormalized)."""
        return self.poly.shift(self.ell)

    def norm_check(self) -> Fraction:
        p = self.full_poly
        return self.norm_sq_rational * exp_moment((p * p).shift(2), 2 * self.decay_rate)

    def __call__(self, r):
        r = mpmath.mpf(r)
        norm = mpmath.sqrt(mpmath.mpf(self.norm_sq_rational.numerator) / self.norm_sq_rational.denominator)
        rate = mpmath.mpf(self.decay_rate.numerator) / self.decay_rate.denominator
        return norm * self.full_poly(r) * mpmath.exp(-rate * r)


@lru_cache(maxsize=None)
def radial(n: int, ell: int) -> RadialFunction:
    """R_{n,ell} with ``L^{2l+1}_{n-l-1}(2r/n)`` and normalization enforced exactly."""
    QuantumNumbers(n, ell)
    poly = laguerre(2 * ell + 1, n - ell - 1).scale_argument(Fraction(2, n))
    poly = poly * Fraction(2, n) ** ell  # rho**ell = (2/n)**ell r**ell
    rate = Fraction(1, n)
    full = poly.shift(ell)
    norm_sq = 1 / exp_moment((full * full).shift(2), 2 * rate)
    return RadialFunction(n, ell, poly, rate, norm_sq)


def eigenvalue(n: int) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    return -0.5 / n**2


def eigenvalue_exact(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(-1, 2 * n * n)


# --- angular parts ---------------------------------------------------------


@dataclass(frozen=True)
class AngularPart:
    """Unit-norm (weight sin theta) polar factor, regular or pseudo.

    Regular: ``sqrt((2l+1)/2) P_l(cos theta)``.  Pseudo:
    ``sigma Q_l(cos theta) / ||Q_l||``; ``sigma = -1`` reproduces
    ``(sqrt 6 / pi) ln tan(theta/2)`` for l = 0.
    """

    ell: int
    kind: Literal["regular", "pseudo"]
    sigma: int = -1
    q_rep: LegendreQRep | None = field(default=None, compare=False)

    @property
    def norm_sq(self) -> Fraction | PiSquaredElement:
        """Square of the normalization constant multiplying P_l or Q_l."""
        if self.kind == "regular":
            return Fraction(2 * self.ell + 1, 2)
        return 1 / q_norm_sq(self.ell)

    def __call__(self, theta):
        theta = mpmath.mpf(theta)
        if self.kind == "regular":
            c = mpmath.sqrt(mpmath.mpf(2 * self.ell + 1) / 2)
            return c * legendre_p(self.ell)(mpmath.cos(theta))
        if theta <= 0 or theta >= mpmath.pi:
            raise SingularPointError("pseudo angular part is undefined at theta = 0 or pi")
        norm = mpmath.sqrt(q_norm_sq(self.ell).evaluate(mpmath.mp.dps + 5))
        return self.sigma * self.q_rep.at_angle(theta) / norm


def theta_regular(ell: int) -> AngularPart:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    return AngularPart(ell, "regular")


def xi(ell: int, sigma: int = -1) -> AngularPart:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if sigma not in (-1, 1):
        raise ValueError("sigma must be +1 or -1")
    return AngularPart(ell, "pseudo", sigma, legendre_q(ell))


def phi_part(m: int, phi):
    """Azimuthal factor ``exp(i m phi) / sqrt(2 pi)``."""
    return mpmath.expj(m * phi) / mpmath.sqrt(2 * mpmath.pi)


# --- full wavefunctions ----------------------------------------------------


def _check_m0(qn: QuantumNumbers):
    if qn.m != 0:
        raise ValueError("only m = 0 states are normalizable for the pseudo family")


def psi_eval(qn: QuantumNumbers, p: SpatialPoint):
    """Psi_{n,l,0}(r, theta, phi), real."""
    _check_m0(qn)
    return radial(qn.n, qn.ell)(p.r) * theta_regular(qn.ell)(p.theta) / mpmath.sqrt(2 * mpmath.pi)


def xi_eval(qn: QuantumNumbers, p: SpatialPoint, sigma: int = -1):
    """Xi_{n,l,0}(r, theta, phi), real; raises on the z-axis."""
    _check_m0(qn)
    return radial(qn.n, qn.ell)(p.r) * xi(qn.ell, sigma)(p.theta) / mpmath.sqrt(2 * mpmath.pi)


@dataclass(frozen=True)
class DensityGrid:
    r: np.ndarray
    theta: np.ndarray
    density: np.ndarray  # shape (len(r), len(theta)); phi-independent since m = 0
    kind: str


def theta_nodes(n_theta: int, inset: bool) -> np.ndarray:
    """Polar grid on [0, pi]; ``inset`` shifts by half a cell off the poles."""
    if inset:
        return (np.arange(n_theta) + 0.5) * np.pi / n_theta
    return np.linspace(0.0, np.pi, n_theta)


def density_grid(qn: QuantumNumbers, kind: str, r_max: float, n_r: int, n_theta: int) -> DensityGrid:
    """|wavefunction|^2 on an (r, theta) grid.

    Pseudo grids are inset by half a cell in theta so every node is finite.
    """
    _check_m0(qn)
    if kind not in ("regular", "pseudo"):
        raise ValueError(f"unknown kind {kind!r}")
    if r_max <= 0 or n_r < 2 or n_theta < 2:
        raise ValueError("need r_max > 0, n_r >= 2, n_theta >= 2")
    rs = np.linspace(0.0, r_max, n_r)
    thetas = theta_nodes(n_theta, inset=kind == "pseudo")
    rad = radial(qn.n, qn.ell)
    ang = theta_regular(qn.ell) if kind == "regular" else xi(qn.ell)
    with mpmath.workdps(20):
        r_vals = np.array([float(rad(r) ** 2) for r in rs])
        a_vals = np.array([float(ang(t) ** 2) for t in thetas])
    density = np.outer(r_vals, a_vals) / (2 * np.pi)
    return DensityGrid(rs, thetas, density, kind)
