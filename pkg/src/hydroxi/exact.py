"""Exact arithmetic: rationals, rational polynomials and the field Q(pi^2).

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Elements of Q(pi^2) are stored as a normalized ratio of two
polynomials in the indeterminate ``tau = pi**2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

BigRational = Fraction

RationalLike = Union[int, Fraction]


def rat(value: RationalLike | str, denominator: int = 1) -> Fraction:
    """Build a reduced rational; ``rat(1, 0)`` raises ``ZeroDivisionError``."""
    return Fraction(value) / denominator if denominator != 1 else Fraction(value)


def rat_div(a: RationalLike, b: RationalLike) -> Fraction:
    if b == 0:
        raise ZeroDivisionError(f"division of {a} by zero")
    return Fraction(a) / Fraction(b)


def rational_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Polynomial:
    """Polynomial with rational coefficients, ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, value: RationalLike) -> "Polynomial":
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[rational_text(c) for c in self.coeffs]})"

    def __add__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: RationalLike) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Polynomial([0] * k + list(self.coeffs))

    def scale_argument(self, s: RationalLike) -> "Polynomial":
        """Return ``p(s*x)``."""
        s = Fraction(s)
        return Polynomial(c * s**k for k, c in enumerate(self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def antiderivative(self) -> "Polynomial":
        return Polynomial([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, a: RationalLike, b: RationalLike) -> Fraction:
        anti = self.antiderivative()
        return anti(Fraction(b)) - anti(Fraction(a))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = other.leading
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, oc in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * oc
        return Polynomial(quot), Polynomial(rem[:dq])

    def monic(self) -> "Polynomial":
        return self * (1 / self.leading) if self.coeffs else self

    def __call__(self, x):
        """Horner evaluation; exact for rationals, mpmath/float otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc


def _as_poly(p: "Polynomial | RationalLike") -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial.constant(p)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# --- pi bounds -----------------------------------------------------------


@lru_cache(maxsize=None)
def pi_squared_bounds(bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo < pi**2 < hi with hi - lo of order 2**-bits."""
    with mpmath.workprec(bits + 20):
        mid = _mpf_to_fraction(+mpmath.pi)
    slack = Fraction(1, 2**bits)
    lo, hi = mid - slack, mid + slack
    return lo * lo, hi * hi


def _mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    man, exp = x.man_exp
    return Fraction(man) * Fraction(2) ** exp


def _poly_interval(p: Polynomial, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval enclosure of p over [lo, hi] with 0 < lo."""
    acc_lo = acc_hi = Fraction(0)
    for c in reversed(p.coeffs):
        cands = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(cands) + c, max(cands) + c
    return acc_lo, acc_hi


# --- Q(pi^2) -------------------------------------------------------------


class PiSquaredElement:
    """Element ``num(tau) / den(tau)`` of Q(pi^2), normalized on construction.

    ``den`` is monic and coprime to ``num``; zero is stored as ``0 / 1``.
    Instances are immutable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Sequence[RationalLike] | RationalLike,
                 den: Polynomial | Sequence[RationalLike] | RationalLike = 1):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(pi^2) element")
        if num.is_zero():
            num, den = Polynomial(), Polynomial.constant(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.leading
            num, den = num * (1 / lead), den * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("PiSquaredElement is immutable")

    @classmethod
    def from_rational(cls, q: RationalLike) -> "PiSquaredElement":
        return cls(Polynomial.constant(q))

    @property
    def num_poly(self) -> tuple[Fraction, ...]:
        return self.num.coeffs

    @property
    def den_poly(self) -> tuple[Fraction, ...]:
        return self.den.coeffs

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_rational(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def normalized(self) -> "PiSquaredElement":
        return PiSquaredElement(self.num, self.den)

    # arithmetic
    def __add__(self, other):
        other = _as_pisq(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return PiSquaredElement(self.num + other.num, self.den)
        return PiSquaredElement(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return PiSquaredElement(-self.num, self.den)

    def __sub__(self, other):
        other = _as_pisq(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _as_pisq(other) - self

    def __mul__(self, other):
        other = _as_pisq(other)
        if other is NotImplemented:
            return other
        return PiSquaredElement(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "PiSquaredElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(pi^2)")
        return PiSquaredElement(self.den, self.num)

    def __truediv__(self, other):
        other = _as_pisq(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_pisq(other) * self.inverse()

    # comparison
    def __eq__(self, other: object) -> bool:
        other = _as_pisq(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def sign(self) -> int:
        """Exact sign, certified by interval evaluation at pi**2."""
        if self.is_zero():
            return 0
        bits = 64
        while True:
            lo, hi = pi_squared_bounds(bits)
            nlo, nhi = _poly_interval(self.num, lo, hi)
            dlo, dhi = _poly_interval(self.den, lo, hi)
            if (nlo > 0 or nhi < 0) and (dlo > 0 or dhi < 0):
                return (1 if nlo > 0 else -1) * (1 if dlo > 0 else -1)
            bits *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def evaluate(self, digits: int = 30) -> mpmath.mpf:
        return pisq_eval(self, digits)

    def __float__(self) -> float:
        return float(pisq_eval(self, 20))

    def __str__(self) -> str:
        if self.den == 1:
            return _poly_text(self.num)
        return f"({_poly_text(self.num)})/({_poly_text(self.den)})"

    def __repr__(self) -> str:
        return f"PiSquaredElement({self})"

    @classmethod
    def parse(cls, text: str) -> "PiSquaredElement":
        """Inverse of ``str``: accepts ``"a/b + c/d*pi^2"`` and ``"(...)/(...)"``."""
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
        if m:
            return cls(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
        return cls(_parse_poly(text))


def _coerce_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return Polynomial.constant(p)
    return Polynomial(p)


def _as_pisq(x):
    if isinstance(x, PiSquaredElement):
        return x
    if isinstance(x, (int, Fraction)):
        return PiSquaredElement.from_rational(x)
    return NotImplemented


def _poly_text(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = rational_text(abs(c))
        if k == 0:
            body = mag
        elif abs(c) == 1:
            body = f"pi^{2 * k}"
        else:
            body = f"{mag}*pi^{2 * k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)(?:\*pi\^(\d+))?|pi\^(\d+))")


def _parse_poly(text: str) -> Polynomial:
    coeffs: dict[int, Fraction] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Q(pi^2) text near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(4):
            power, coeff = int(m.group(4)), Fraction(1)
        else:
            power, coeff = int(m.group(3) or 0), Fraction(m.group(2))
        if power % 2:
            raise ValueError("odd power of pi is outside Q(pi^2)")
        coeffs[power // 2] = coeffs.get(power // 2, Fraction(0)) + sign * coeff
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    if not coeffs:
        raise ValueError("empty polynomial text")
    return Polynomial([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])


PI_SQUARED = PiSquaredElement([0, 1])
ONE = PiSquaredElement.from_rational(1)
ZERO = PiSquaredElement.from_rational(0)


def pisq_eval(a: PiSquaredElement, digits: int = 30) -> mpmath.mpf:
    """Evaluate to ``digits`` significant digits (ten guard digits for pi)."""
    if digits < 15:
        raise ValueError("digits must be >= 15")
    with mpmath.workdps(digits + 10):
        tau = mpmath.pi**2
        den = a.den(tau)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at pi^2")
        return a.num(tau) / den
