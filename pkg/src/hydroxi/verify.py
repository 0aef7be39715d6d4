"""Invariant suites behind ``hydroxi verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from . import quadrature
from .exact import ONE
from .hydrogen import radial, xi
from .spectral import coefficient, divergence_scan, radial_overlap, residual_check
from .specfun import legendre_p, q_norm_sq, q_norm_sq_moments

NUMERIC_TOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: bool
    seconds: float
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name:<20} ({self.seconds:.2f} s)"
        for f in self.failures[:5]:
            text += f"\n     - {f}"
        return text


def _legendre_inner(l1: int, l2: int) -> Fraction:
    return (legendre_p(l1) * legendre_p(l2)).integrate(-1, 1)


def orthonormality(mode: str, n_max: int = 6) -> list[str]:
    """Gram matrix of Psi_{n,l,0}, n <= n_max."""
    states = [(n, l) for n in range(1, n_max + 1) for l in range(n)]
    bad = []
    for i, (n1, l1) in enumerate(states):
        for n2, l2 in states[i:]:
            expected = 1 if (n1, l1) == (n2, l2) else 0
            if mode in ("exact", "both"):
                ang = _legendre_inner(l1, l2) * Fraction(2 * l1 + 1, 2)
                if l1 != l2:
                    if ang != 0:
                        bad.append(f"exact <P_{l1},P_{l2}> = {ang}")
                else:
                    rad = radial_overlap(n1, l1, n2, l2)
                    if ang != 1:
                        bad.append(f"exact angular norm of l={l1} = {ang}")
                    if expected and (rad.sign != 1 or rad.square != ONE):
                        bad.append(f"exact norm of ({n1},{l1}) = {rad}")
                    if not expected and not rad.is_zero():
                        bad.append(f"exact <({n1},{l1}),({n2},{l2})> = {rad}")
            if mode in ("quad", "both") and l1 == l2:
                val = quadrature.oracle_radial_overlap(n1, l1, n2, l2, 1e-12)
                if abs(val - expected) > NUMERIC_TOL:
                    bad.append(f"quad <({n1},{l1}),({n2},{l2})> = {mpmath.nstr(val, 12)}")
    return bad


def normalization(mode: str, ell_max: int = 8, n_max: int = 6) -> list[str]:
    bad = []
    for n in range(1, n_max + 1):
        for l in range(n):
            if radial(n, l).norm_check() != 1:
                bad.append(f"radial ({n},{l}) not unit norm")
    for l in range(ell_max + 1):
        if mode in ("exact", "both") and q_norm_sq(l) != q_norm_sq_moments(l):
            bad.append(f"||Q_{l}||^2 closed form disagrees with moment route")
        if mode in ("quad", "both"):
            ang = xi(l)
            val = quadrature.integrate(lambda t: mpmath.sin(t) * ang(t) ** 2, 0, mpmath.pi, 1e-12).value
            if abs(val - 1) > NUMERIC_TOL:
                bad.append(f"quad norm of xi_{l} = {mpmath.nstr(val, 15)}")
    return bad


def selection_rule(mode: str, n_max: int = 12) -> list[str]:
    bad = []
    for n in (1, 2, 3):
        for l in range(n):
            for n_p in range(1, n_max + 1):
                for lp in range(n_p):
                    c = coefficient(n, l, n_p, lp)
                    if (l + lp) % 2 == 0:
                        if mode == "quad":
                            if abs(float(c)) > NUMERIC_TOL:
                                bad.append(f"C({n},{l};{n_p},{lp}) nonzero")
                        elif not c.is_zero():
                            bad.append(f"C({n},{l};{n_p},{lp}) nonzero")
                    elif n_p <= 3 and c.is_zero():
                        bad.append(f"C({n},{l};{n_p},{lp}) unexpectedly zero")
    return bad


def cross_validation(n_max: int = 6, fault: bool = False) -> list[str]:
    bad = []
    for n_p in range(1, n_max + 1):
        for lp in range(n_p):
            exact = float(coefficient(1, 0, n_p, lp))
            if fault and (n_p, lp) == (2, 1):
                exact = -exact
            oracle = quadrature.oracle_coefficient(1, 0, n_p, lp, 1e-11)
            if abs(exact - oracle) > NUMERIC_TOL:
                bad.append(f"C(1,0;{n_p},{lp}): exact {exact:.12g} vs quadrature {oracle:.12g}")
    return bad


def residual_order() -> list[str]:
    bad = []
    hs = (4e-3, 2e-3, 1e-3)
    for n, l in ((1, 0), (2, 1)):
        for r, th in ((1.5, math.pi / 3), (2.5, 2 * math.pi / 5)):
            res = [residual_check(n, l, r, th, h) for h in hs]
            slope = math.log(res[0] / res[2]) / math.log(hs[0] / hs[2])
            if not 1.8 <= slope <= 2.2:
                bad.append(f"Xi({n},{l}) at r={r}: slope {slope:.3f}")
    return bad


def divergence() -> list[str]:
    bad = []
    eps = [10.0**-k for k in range(2, 7)]
    scan = divergence_scan(1, 1, eps)
    inc = [b - a for a, b in zip(scan, scan[1:])]
    if min(inc) < 1.0:
        bad.append(f"m=1 increments {inc} decay")
    control = divergence_scan(1, 0, eps)
    cinc = [b - a for a, b in zip(control, control[1:])]
    if not all(abs(b) < abs(a) for a, b in zip(cinc, cinc[1:])) or abs(cinc[-1]) > 1e-6:
        bad.append(f"m=0 increments {cinc} do not vanish")
    return bad


def run_verification(mode: str = "both", fault: bool = False, cross_nmax: int = 6,
                     echo: Callable[[str], None] = print) -> bool:
    if mode not in ("exact", "quad", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    suites: list[tuple[str, Callable[[], list[str]]]] = [
        ("orthonormality", lambda: orthonormality(mode)),
        ("normalization", lambda: normalization(mode)),
        ("selection-rule", lambda: selection_rule(mode)),
        ("cross-validation", lambda: cross_validation(cross_nmax, fault)),
        ("residual-order", residual_order),
        ("divergence-scan", divergence),
    ]
    ok = True
    for name, suite in suites:
        start = time.perf_counter()
        failures = suite()
        result = SuiteResult(name, not failures, time.perf_counter() - start, failures)
        echo(result.line())
        ok &= result.passed
    echo("PASS" if ok else "FAIL")
    return ok
