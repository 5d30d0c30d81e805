"""Command-line front end: ``casimir-boost {tensor,profile,verify,scan-divergence}``.

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import tables
from .boosted import boosted_moments, theta_from_boosted_fields, verify_equivalence
from .core import (
    BoostSpec,
    CasimirError,
    CavityConfig,
    DomainError,
    as_scalar,
    prefactor,
    tensor_unit,
)
from .oracle import default_nmax
from .rest_frame import assemble_theta, eval_F
from .verify import report_json, report_text, run_checks

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

PROFILE_HEADER = ["z", "xi", "F", "Ex2", "Ey2", "Ez2", "Bx2", "By2", "Bz2", "energy_density"]
SCAN_HEADER = ["z", "xi", "F", "F_xi4", "theta_zz"]
TENSOR_HEADER = ["path", "mu", "nu", "coefficient", "value"]
TENSOR_UNIT_LABEL = "pi^2/(720*a^4)"


@dataclass(frozen=True)
class RunConfig:
    command: str
    config: CavityConfig
    beta: BoostSpec
    z_grid: tuple
    fmt: str = "csv"

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")
        start, stop, count = self.z_grid
        if count < 1:
            raise DomainError("grid count must be at least 1")
        a = self.config.a
        if not (0 < start < a and 0 < stop < a):
            raise DomainError(f"grid must lie strictly inside (0, {a})")

    def grid(self, geometric: bool = False) -> list:
        start, stop, count = self.z_grid
        if count == 1:
            return [start]
        if geometric:
            return [float(x) for x in np.geomspace(float(start), float(stop), count)]
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]


def parse_beta(text: str) -> BoostSpec:
    parts = [p for p in text.split(",")]
    if len(parts) == 1:
        parts = ["0", "0", parts[0]]
    if len(parts) != 3:
        raise DomainError("beta must be 'bx,by,bz' or a single z-component")
    return BoostSpec(tuple(as_scalar(p) for p in parts))


def parse_grid(text: str) -> tuple:
    try:
        start, stop, count = text.split(":")
        return as_scalar(start), as_scalar(stop), int(count)
    except ValueError as exc:
        raise DomainError(f"grid must be 'start:stop:count', got {text!r}") from exc


def default_grid(command: str, a) -> tuple:
    if command == "profile":
        return a / 20, a * 19 / 20, 19
    if command == "scan-divergence":
        return a / 10**4, a / 2, 13
    return a / 2, a / 2, 1


def _tensor_block(theta, config: CavityConfig, xi: float) -> dict:
    coeff = theta.coefficients()
    values = theta.evaluate(config, xi)
    return {
        "unit": TENSOR_UNIT_LABEL,
        "coefficients_exact": [[tables.exact_text(x) for x in row] for row in coeff],
        "coefficients": [[tables.decimal(x) for x in row] for row in coeff],
        "values": values.tolist(),
    }


def cmd_tensor(run: RunConfig) -> tuple[str, int]:
    z = run.grid()[0]
    config = run.config
    xi = config.xi(z)
    # raises if a divergent coefficient survived; the comparison itself never does
    theta_from_boosted_fields(z, config, run.beta)
    comparison = verify_equivalence(z, config, run.beta)
    field_block = _tensor_block(comparison.theta_field_path, config, xi)
    tensor_block = _tensor_block(comparison.theta_tensor_path, config, xi)
    if run.fmt == "json":
        doc = {
            "a": tables.scalar_json(config.a),
            "beta": [tables.scalar_json(b) for b in run.beta.beta],
            "gamma": tables.scalar_json(run.beta.gamma),
            "z": tables.scalar_json(z),
            "theta_field": field_block,
            "theta_tensor": tensor_block,
            "max_rel_diff": tables.scalar_json(comparison.max_rel_diff),
        }
        return tables.to_json(doc), EXIT_OK
    rows = []
    for name, theta in (("field", comparison.theta_field_path), ("tensor", comparison.theta_tensor_path)):
        coeff = theta.coefficients()
        values = theta.evaluate(config, xi)
        for mu in range(4):
            for nu in range(4):
                rows.append([name, str(mu), str(nu), tables.coefficient_text(coeff[mu, nu]),
                             float(values[mu, nu])])
    return tables.to_csv(TENSOR_HEADER, rows), EXIT_OK


def profile_rows(run: RunConfig) -> list[list[float]]:
    config = run.config
    k = prefactor(config)
    unit = tensor_unit(config)
    rows = []
    for z in run.grid():
        xi = config.xi(z)
        s = boosted_moments(z, config, run.beta)
        theta = assemble_theta(s)
        f_value = eval_F(xi)
        diag = [k * float(s.matrix[i, i].value(f_value)) for i in range(6)]
        rho = unit * float(theta.entries[0, 0].value(f_value))
        rows.append([float(z), xi, f_value, *diag, rho])
    return rows


def scan_rows(run: RunConfig) -> list[list[float]]:
    config = run.config
    unit = tensor_unit(config)
    rows = []
    for z in run.grid(geometric=True):
        xi = config.xi(z)
        theta = assemble_theta(boosted_moments(z, config, run.beta))
        f_value = eval_F(xi)
        rows.append([float(z), xi, f_value, f_value * xi**4,
                     unit * float(theta.entries[3, 3].value(f_value))])
    return rows


def _table(run: RunConfig, header, rows) -> str:
    if run.fmt == "csv":
        return tables.to_csv(header, rows)
    doc = {
        "a": tables.scalar_json(run.config.a),
        "beta": [tables.scalar_json(b) for b in run.beta.beta],
        "gamma": tables.scalar_json(run.beta.gamma),
        "columns": header,
        "rows": rows,
    }
    return tables.to_json(doc)


def cmd_profile(run: RunConfig) -> tuple[str, int]:
    return _table(run, PROFILE_HEADER, profile_rows(run)), EXIT_OK


def cmd_scan_divergence(run: RunConfig) -> tuple[str, int]:
    return _table(run, SCAN_HEADER, scan_rows(run)), EXIT_OK


def cmd_verify(as_json: bool, inject_fault: bool = False) -> tuple[str, int]:
    results = run_checks(n_max=default_nmax(), inject_fault=inject_fault)
    status = EXIT_OK if all(r.passed for r in results) else EXIT_FAILED
    if as_json:
        return tables.to_json(report_json(results, inject_fault)), status
    return report_text(results), status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-boost",
        description="Vacuum stress-energy of a boosted parallel-plate Casimir cavity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_help):
        p.add_argument("--a", default="1", help="plate separation (default 1)")
        p.add_argument("--beta", default="0,0,0",
                       help="boost velocity 'bx,by,bz', or a single z-component")
        p.add_argument("--z-grid", dest="z_grid", default=None, help=grid_help)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-", help="output path, '-' or 'stdout' for stdout")

    common(sub.add_parser("tensor", help="boosted stress-energy tensor, field vs tensor path"),
           "start:stop:count; the tensor is evaluated at the first point (default a/2)")
    common(sub.add_parser("profile", help="correlators and energy density across the gap"),
           "start:stop:count, linear spacing (default a/20:19a/20:19)")
    common(sub.add_parser("scan-divergence", help="F growth near a plate vs constant Theta^zz"),
           "start:stop:count, logarithmic spacing (default a/1e4:a/2:13)")
    v = sub.add_parser("verify", help="run the built-in verification suite")
    v.add_argument("--json", action="store_true", help="emit the JSON report")
    v.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None,
                   help=argparse.SUPPRESS)
    v.add_argument("--out", default="-", help="output path, '-' or 'stdout' for stdout")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def _write(text: str, out: str) -> None:
    if out in ("-", "stdout"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def make_run(args) -> RunConfig:
    config = CavityConfig(as_scalar(args.a))
    beta = parse_beta(args.beta)
    grid = parse_grid(args.z_grid) if args.z_grid else default_grid(args.command, config.a)
    return RunConfig(args.command, config, beta, grid, args.fmt)


COMMANDS = {
    "tensor": cmd_tensor,
    "profile": cmd_profile,
    "scan-divergence": cmd_scan_divergence,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            text, status = cmd_verify(args.json or args.fmt == "json", args.inject_fault)
        else:
            run = make_run(args)
            text, status = COMMANDS[args.command](run)
    except (CasimirError, ValueError) as exc:
        print(f"casimir-boost {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
