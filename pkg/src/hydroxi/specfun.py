"""Exact-coefficient special functions.

Legendre polynomials, Legendre functions of the second kind in the split
form ``Q_l(x) = P_l(x) artanh(x) - W_l(x)``, generalized Laguerre
polynomials and the closed-form overlap integrals between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath

from .exact import PI_SQUARED, PiSquaredElement, Polynomial

PolynomialQ = Polynomial

X = Polynomial([0, 1])


@lru_cache(maxsize=None)
def legendre_p(ell: int) -> Polynomial:
    """Degree-``ell`` Legendre polynomial from the Bonnet recurrence."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if ell == 0:
        return Polynomial([1])
    if ell == 1:
        return X
    return (X * legendre_p(ell - 1) * (2 * ell - 1) - legendre_p(ell - 2) * (ell - 1)) * Fraction(1, ell)


@dataclass(frozen=True)
class LegendreQRep:
    """``Q_ell(x) = a_part(x) * artanh(x) - w_part(x)`` on (-1, 1)."""

    ell: int
    a_part: Polynomial
    w_part: Polynomial

    def __call__(self, x):
        if not -1 < x < 1:
            raise ValueError("Q_ell is singular outside the open interval (-1, 1)")
        return self.a_part(x) * mpmath.atanh(x) - self.w_part(x)

    def at_angle(self, theta):
        """``Q_ell(cos theta)`` using ``artanh(cos t) = -ln tan(t/2)``.

        Stays accurate arbitrarily close to the poles, where ``cos`` rounds
        to +-1.
        """
        x = mpmath.cos(theta)
        return -self.a_part(x) * mpmath.log(mpmath.tan(theta / 2)) - self.w_part(x)


@lru_cache(maxsize=None)
def legendre_q(ell: int) -> LegendreQRep:
    """Split representation of Q_ell built with the three-term recurrence."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if ell == 0:
        return LegendreQRep(0, Polynomial([1]), Polynomial())
    if ell == 1:
        return LegendreQRep(1, X, Polynomial([1]))
    q1, q2 = legendre_q(ell - 1), legendre_q(ell - 2)
    k = Fraction(1, ell)
    a = (X * q1.a_part * (2 * ell - 1) - q2.a_part * (ell - 1)) * k
    w = (X * q1.w_part * (2 * ell - 1) - q2.w_part * (ell - 1)) * k
    return LegendreQRep(ell, a, w)


@lru_cache(maxsize=None)
def laguerre(alpha: int, degree: int) -> Polynomial:
    """Generalized Laguerre polynomial ``L_degree^alpha`` (modern convention)."""
    if alpha < 0 or degree < 0:
        raise ValueError("alpha and degree must be >= 0")
    return Polynomial(
        Fraction((-1) ** k * comb(degree + alpha, degree - k), factorial(k))
        for k in range(degree + 1)
    )


def pq_overlap(ell_q: int, ell_p: int) -> Fraction:
    """Exact ``int_{-1}^{1} Q_{ell_q}(x) P_{ell_p}(x) dx``."""
    if ell_q < 0 or ell_p < 0:
        raise ValueError("indices must be >= 0")
    if (ell_q + ell_p) % 2 == 0:
        # Q_lq * P_lp is odd on (-1, 1); covers ell_q == ell_p too
        return Fraction(0)
    return Fraction(2, (ell_p - ell_q) * (ell_p + ell_q + 1))


@lru_cache(maxsize=None)
def q_norm_sq(ell: int) -> PiSquaredElement:
    """Exact ``int_{-1}^{1} Q_ell(x)^2 dx`` in Q(pi^2).

    Parseval over the Legendre basis gives
    ``sum_{l'} (2l'+1)/2 * pq_overlap(ell, l')**2`` over ``l' + ell`` odd.
    With ``a = l' - ell`` and ``b = l' + ell + 1`` each term is
    ``2(a+b)/(a b)^2 = (2/(2ell+1)) (1/a^2 - 1/b^2)``; ``a`` runs over odd
    integers ``>= -ell`` and ``b`` over even integers ``>= ell + 1``.  Using
    ``sum 1/k^2`` over odd k = pi^2/8 and over even k = pi^2/24, the finite
    leftovers combine into ``sum_{k=1}^{ell} 1/k^2``.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    odd_a = sum((Fraction(1, k * k) for k in range(1, ell + 1, 2)), Fraction(0))
    even_b = sum((Fraction(1, k * k) for k in range(2, ell + 1, 2)), Fraction(0))
    # (pi^2/8 + odd_a) - (pi^2/24 - even_b)
    bracket = PI_SQUARED * Fraction(1, 12) + (odd_a + even_b)
    return bracket * Fraction(2, 2 * ell + 1)


# --- independent exact route via artanh moments ----------------------------


@lru_cache(maxsize=None)
def artanh_moment(k: int) -> Fraction:
    """``int_{-1}^{1} x^k artanh(x) dx``; zero for even k."""
    if k % 2 == 0:
        return Fraction(0)
    return Fraction(2, k + 1) * sum(Fraction(1, 2 * j + 1) for j in range((k + 1) // 2))


@lru_cache(maxsize=None)
def artanh_sq_moment(k: int) -> PiSquaredElement:
    """``int_{-1}^{1} x^k artanh(x)^2 dx``; zero for odd k."""
    if k % 2:
        return PiSquaredElement.from_rational(0)
    base = PI_SQUARED * Fraction(1, 6)
    if k == 0:
        return base
    tail = sum((artanh_moment(2 * j + 1) for j in range(k // 2)), Fraction(0))
    return base * Fraction(1, k + 1) + Fraction(2, k + 1) * tail


def q_norm_sq_moments(ell: int) -> PiSquaredElement:
    """``int Q_ell^2`` by expanding the square and integrating term by term."""
    rep = legendre_q(ell)
    a2 = rep.a_part * rep.a_part
    aw = rep.a_part * rep.w_part
    total = PiSquaredElement.from_rational((rep.w_part * rep.w_part).integrate(-1, 1))
    for k, c in enumerate(a2.coeffs):
        if c:
            total = total + artanh_sq_moment(k) * c
    cross = sum((c * artanh_moment(k) for k, c in enumerate(aw.coeffs)), Fraction(0))
    return total - 2 * cross


# --- associated functions of the second kind, small m ----------------------

SMALL_M_CASES = frozenset({(1, 1), (2, 1), (2, 2)})


def assoc_legendre_q_small_m(ell: int, m: int, x):
    """Ferrers ``Q_ell^m(x)`` for (ell, m) in {(1,1), (2,1), (2,2)}.

    Uses ``Q_l^m = (-1)^m (1-x^2)^(m/2) d^m Q_l / dx^m``; grows like
    ``(1-x^2)^(-m/2)`` at the endpoints.
    """
    if (ell, m) not in SMALL_M_CASES:
        raise ValueError(f"no closed form for (ell, m) = ({ell}, {m})")
    x = mpmath.mpf(x)
    if not -1 < x < 1:
        raise ValueError("|x| must be < 1")
    s2 = 1 - x * x
    at = mpmath.atanh(x)
    if (ell, m) == (1, 1):
        return -mpmath.sqrt(s2) * (at + x / s2)
    if (ell, m) == (2, 1):
        p2 = (3 * x * x - 1) / 2
        return -mpmath.sqrt(s2) * (3 * x * at + p2 / s2 - mpmath.mpf(3) / 2)
    return 3 * s2 * at + 3 * x + 2 * x / s2
