"""Command-line interface: figure data as CSV and the verification run.

Exit codes: 0 success, 1 bad arguments, 2 numerical failure, 3 failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import asdict, dataclass

import mpmath
import numpy as np

from . import __version__
from .hydrogen import QuantumNumbers, density_grid, theta_nodes, theta_regular, xi
from .quadrature import QuadratureError, oracle_coefficient
from .spectral import NMAX_CAP, decompose, divergence_scan, point_autocorrelation
from .verify import run_verification

EXIT_ARGS, EXIT_NUMERIC, EXIT_VERIFY = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 1
    ell: int = 0
    m: int = 0
    n_max: int = 40
    digits: int = 30
    samples: int = 64
    r_max: float = 10.0
    output_path: str = "-"
    mode: str = "exact"
    kind: str = "pseudo"
    t_max: float = 200.0

    def validate(self):
        if self.command == "divergence":
            # angular-only scan; n plays no role
            if self.ell < 0 or abs(self.m) > self.ell:
                raise UsageError(f"need 0 <= |m| <= l (got l={self.ell}, m={self.m})")
        elif self.n < 1 or not 0 <= self.ell < self.n:
            raise UsageError(f"need n >= 1 and 0 <= l < n (got n={self.n}, l={self.ell})")
        elif self.m != 0:
            raise UsageError("only m = 0 pseudo states are normalizable; use --m with 'divergence'")
        if not 15 <= self.digits <= 200:
            raise UsageError("--digits must lie in [15, 200]")
        if not self.n <= self.n_max <= NMAX_CAP:
            raise UsageError(f"--nmax must lie in [n, {NMAX_CAP}]")
        if self.samples < 2 or self.r_max <= 0 or self.t_max <= 0:
            raise UsageError("--samples >= 2, --rmax > 0 and --tmax > 0 are required")

    def echo(self) -> str:
        parts = " ".join(f"{k}={v}" for k, v in asdict(self).items() if k not in ("command", "output_path"))
        return f"# hydroxi {__version__} command={self.command} {parts}"


def _fmt(x, digits: int = 15) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False) if not isinstance(x, str) else x


def _table(cfg: RunConfig, header: list[str], rows, footer: list[str] = ()) -> str:
    buf = io.StringIO()
    buf.write(cfg.echo() + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    for line in footer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def cmd_coeffs(cfg: RunConfig) -> str:
    report = decompose(cfg.n, cfg.ell, cfg.n_max, cfg.digits)
    header = ["n_prime", "l_prime"]
    if cfg.mode in ("exact", "both"):
        header += ["sign", "square_exact", "value_float"]
    if cfg.mode in ("quad", "both"):
        header += ["quad_value"]
    rows = []
    for n_p, lp, amp in report.entries:
        row = [n_p, lp]
        if cfg.mode in ("exact", "both"):
            sign = {1: "+", -1: "-", 0: "0"}[amp.sign]
            row += [sign, str(amp.square), _fmt(amp.value(cfg.digits), cfg.digits)]
        if cfg.mode in ("quad", "both"):
            row.append(f"{oracle_coefficient(cfg.n, cfg.ell, n_p, lp, 1e-12):.12e}")
        rows.append(row)
    return _table(cfg, header, rows)


def cmd_pn(cfg: RunConfig) -> str:
    report = decompose(cfg.n, cfg.ell, cfg.n_max, cfg.digits)
    rows = [[r.N, str(r.p_squared), _fmt(r.p_value, cfg.digits)] for r in report.p_of_n]
    footer = [
        f"continuum_lower_bound = {report.continuum_lower_bound:.12f}  (1 - P({cfg.n_max})^2, certified)",
        f"heuristic_p_inf_squared = {report.heuristic_extrapolation():.12f}  (c/N^2 tail fit, heuristic only)",
    ]
    return _table(cfg, ["N", "P_squared_exact", "P_float"], rows, footer)


def cmd_angular(cfg: RunConfig) -> str:
    if cfg.samples < 16:
        raise UsageError("--samples must be >= 16 for angular data")
    pseudo, regular = xi(cfg.ell), theta_regular(cfg.ell)
    rows = []
    with mpmath.workdps(20):
        for t in theta_nodes(cfg.samples, inset=True):
            rows.append([f"{t:.12f}", _fmt(abs(pseudo(t)), 12), _fmt(abs(regular(t)), 12)])
    return _table(cfg, ["theta", "abs_xi", "abs_theta_regular"], rows)


def cmd_surface(cfg: RunConfig) -> str:
    grid = density_grid(QuantumNumbers(cfg.n, cfg.ell), cfg.kind, cfg.r_max, cfg.samples, cfg.samples)
    rows = [
        [f"{r:.12g}", f"{t:.12f}", f"{grid.density[i, j]:.12e}"]
        for i, r in enumerate(grid.r)
        for j, t in enumerate(grid.theta)
    ]
    return _table(cfg, ["r", "theta", "density"], rows)


def cmd_autocorr(cfg: RunConfig) -> str:
    report = decompose(cfg.n, cfg.ell, cfg.n_max, cfg.digits)
    rows = []
    for t in np.linspace(0.0, cfg.t_max, cfg.samples):
        a = point_autocorrelation(cfg.n, cfg.ell, cfg.n_max, float(t), report)
        rows.append([f"{t:.12g}", f"{a.real:.15e}", f"{a.imag:.15e}", f"{abs(a):.15e}"])
    footer = [f"P(nmax)^2 = {float(report.p_of_n[-1].p_value) ** 2:.15e}; naive evolution has modulus 1"]
    return _table(cfg, ["t", "re", "im", "modulus"], rows, footer)


def cmd_divergence(cfg: RunConfig) -> str:
    eps = [10.0**-k for k in range(2, 7)]
    values = divergence_scan(cfg.ell, cfg.m, eps)
    rows = [[f"{e:.1e}", f"{v:.12f}"] for e, v in zip(eps, values)]
    return _table(cfg, ["epsilon", "truncated_integral"], rows)


COMMANDS = {
    "coeffs": cmd_coeffs,
    "pn": cmd_pn,
    "angular": cmd_angular,
    "surface": cmd_surface,
    "autocorr": cmd_autocorr,
    "divergence": cmd_divergence,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="principal quantum number of the pseudo state")
    common.add_argument("--l", dest="ell", type=int, default=0, help="orbital quantum number")
    common.add_argument("--m", type=int, default=0, help="azimuthal quantum number (divergence scan)")
    common.add_argument("--nmax", dest="n_max", type=int, default=40, help=f"largest n' (<= {NMAX_CAP})")
    common.add_argument("--digits", type=int, default=30, help="decimal digits for float columns")
    common.add_argument("--samples", type=int, default=64, help="grid points per axis / time points")
    common.add_argument("--rmax", dest="r_max", type=float, default=10.0, help="radial extent in Bohr radii")
    common.add_argument("--tmax", dest="t_max", type=float, default=200.0, help="final time (atomic units)")
    common.add_argument("--kind", choices=("regular", "pseudo"), default="pseudo")
    common.add_argument("--out", dest="output_path", default="-", help="output file, '-' for stdout")
    common.add_argument("--mode", choices=("exact", "quad", "both"), default=None)

    parser = _Parser(prog="hydroxi", description="Hydrogen pseudo-eigenfunction spectral data.")
    parser.add_argument("--version", action="version", version=f"hydroxi {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "coeffs": "overlap coefficients C_{n',l'}",
        "pn": "P(N) table and continuum bound",
        "angular": "|xi_l| and |Theta_l| against theta",
        "surface": "(r, theta, density) grid for isosurfaces",
        "autocorr": "point-spectrum autocorrelation a_p(t)",
        "divergence": "truncated polar integrals for m != 0",
        "verify": "run the invariant suites",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        if name == "verify":
            p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    opts = vars(args)
    command = opts.pop("command")
    fault = opts.pop("inject_fault", False)
    mode = opts.pop("mode") or ("both" if command == "verify" else "exact")
    cfg = RunConfig(command=command, mode=mode, **opts)
    try:
        cfg.validate()
        if command == "verify":
            ok = run_verification(cfg.mode, fault=fault, cross_nmax=min(cfg.n_max, 6))
            return 0 if ok else EXIT_VERIFY
        text = COMMANDS[command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"hydroxi: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (QuadratureError, ArithmeticError) as exc:
        print(f"hydroxi: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if cfg.output_path == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
