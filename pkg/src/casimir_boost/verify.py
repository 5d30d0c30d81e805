"""Built-in verification suite behind ``casimir-boost verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .boosted import (
    boosted_moments,
    divergence_audit,
    reference_boosted_tensor,
    theta_from_boosted_fields,
    verify_equivalence,
)
from .core import (
    METRIC,
    AffineF,
    BoostSpec,
    CasimirError,
    CavityConfig,
    tensor_unit,
)
from .lorentz import _field_boost, boost_matrix, field_boost_matrix
from .oracle import (
    OracleReport,
    compare,
    fd_F,
    half_period_F,
    lattice_sum_F,
    pythagorean_boosts,
    rational_replay,
)
from .rest_frame import (
    assemble_theta,
    eval_F,
    force_per_area,
    force_per_area_coefficient,
    rest_correlators,
    rest_moments,
    stress_from_moments,
    theta_zz_coefficient,
)

SEED = 20201109
PATH_TOL = 1e-10
STRUCTURE_TOL = 1e-12
LATTICE_TOL = 1e-8
FD_TOL = 1e-5
FD_STEP = 1e-3
# The O(h^2) stencil meets FD_TOL only away from the poles of cot.
FD_BAND = (0.25 * math.pi, 0.75 * math.pi)
LATTICE_BAND = (0.05 * math.pi, 0.95 * math.pi)
DIVERGENCE_DOMINANCE = 1e3

VERIFY_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["passed", "n_checks", "n_failed", "fault_injected", "checks"],
    "additionalProperties": False,
    "properties": {
        "passed": {"type": "boolean"},
        "n_checks": {"type": "integer", "minimum": 0},
        "n_failed": {"type": "integer", "minimum": 0},
        "fault_injected": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "message", "detail", "reports"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "message": {"type": "string"},
                    "detail": {"type": "object"},
                    "reports": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": [
                                "quantity", "method", "primary", "oracle", "abs_dev", "rel_dev",
                            ],
                            "properties": {
                                "quantity": {"type": "string"},
                                "method": {
                                    "enum": ["finite-difference", "lattice-sum", "rational-replay"]
                                },
                                "primary": {"type": "number"},
                                "oracle": {"type": "number"},
                                "abs_dev": {"type": "number", "minimum": 0},
                                "rel_dev": {"type": "number", "minimum": 0},
                            },
                        },
                    },
                },
            },
        },
    },
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    message: str = ""
    detail: dict = field(default_factory=dict)
    reports: list[OracleReport] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "message": self.message,
            "detail": {k: _plain(v) for k, v in self.detail.items()},
            "reports": [
                {
                    "quantity": r.quantity,
                    "method": r.method,
                    "primary": float(r.primary),
                    "oracle": float(r.oracle),
                    "abs_dev": float(r.abs_dev),
                    "rel_dev": float(r.rel_dev),
                }
                for r in self.reports
            ],
        }


def _plain(v):
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def random_boost(rng: np.random.Generator, max_speed: float = 0.99, in_plane: bool = False):
    v = rng.normal(size=3)
    if in_plane:
        v[2] = 0.0
    v = v / np.linalg.norm(v) * rng.uniform(0.0, max_speed)
    return BoostSpec(tuple(float(c) for c in v))


def random_interior_z(rng: np.random.Generator, config: CavityConfig, band=LATTICE_BAND) -> float:
    return float(rng.uniform(*band)) * float(config.a) / math.pi


def check_rest_tensor(field_boost, n_max) -> CheckResult:
    expected = [-1, 1, 1, -3]
    exact_ok = True
    for z in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        c = assemble_theta(rest_moments(z, CavityConfig(1))).coefficients()
        exact_ok &= all(c[i, j] == (expected[i] if i == j else 0) for i in range(4) for j in range(4))
    config = CavityConfig(1.0)
    ref = math.pi**2 / 720 * np.diag(expected)
    worst = 0.0
    for z in (0.1, 0.37, 0.5, 0.9):
        got = assemble_theta(rest_moments(z, config)).evaluate(config, config.xi(z))
        worst = max(worst, float(np.max(np.abs(got - ref)) / np.max(np.abs(ref))))
    passed = exact_ok and worst <= STRUCTURE_TOL
    return CheckResult("rest_tensor", passed, "assembled rest tensor vs diag(-1,1,1,-3)",
                       {"exact_match": exact_ok, "float_max_rel_diff": worst})


def check_stress_components(field_boost, n_max) -> CheckResult:
    worst = 0.0
    for a in (1, 2):
        config = CavityConfig(a)
        z = Fraction(a, 3)
        xi = config.xi(z)
        t = stress_from_moments(rest_moments(z, config))
        unit = tensor_unit(config)
        f_value = eval_F(xi)
        tzz = float(t[2, 2].value(f_value)) * unit
        txx = float(t[0, 0].value(f_value)) * unit
        tyy = float(t[1, 1].value(f_value)) * unit
        for got, want in ((tzz, math.pi**2 / (240 * a**4)),
                          (txx, -math.pi**2 / (720 * a**4)),
                          (tyy, -math.pi**2 / (720 * a**4))):
            worst = max(worst, abs(got - want) / abs(want))
    return CheckResult("stress_components", worst <= STRUCTURE_TOL,
                       "T_zz = pi^2/240a^4, T_xx = T_yy = -pi^2/720a^4 at a = 1, 2",
                       {"max_rel_diff": worst})


def check_force(field_boost, n_max) -> CheckResult:
    config = CavityConfig(1)
    coeff = force_per_area_coefficient(config)
    exact_ok = coeff == Fraction(-1, 240) == theta_zz_coefficient(config)
    value_ok = force_per_area(config) == -math.pi**2 / 240
    return CheckResult("force_per_area", exact_ok and value_ok,
                       "F/A = -pi^2/240 equals Theta^zz (3/720 = 1/240)",
                       {"coefficient": str(coeff), "value": force_per_area(config)})


def check_boosted_closed_form(field_boost, n_max) -> CheckResult:
    config = CavityConfig(1)
    mismatches = []
    for b in (Fraction(3, 5), Fraction(4, 5)):
        theta = theta_from_boosted_fields(Fraction(1, 2), config, BoostSpec.along_z(b), field_boost)
        ref = reference_boosted_tensor(config, b)
        if not (theta.coefficients() == ref.coefficients()).all():
            mismatches.append(str(b))
    return CheckResult("boosted_closed_form", not mismatches,
                       "field path equals the closed-form boosted tensor exactly",
                       {"mismatched_beta": ", ".join(mismatches)})


def check_path_equivalence(field_boost, n_max, n: int = 200) -> CheckResult:
    rng = np.random.default_rng(SEED)
    config = CavityConfig(1.0)
    worst = 0.0
    for _ in range(n):
        spec = random_boost(rng)
        z = random_interior_z(rng, config)
        worst = max(worst, float(verify_equivalence(z, config, spec, field_boost).max_rel_diff))
    return CheckResult("path_equivalence", worst <= PATH_TOL,
                       f"{n} random (z, beta), field path vs tensor path",
                       {"max_rel_diff": worst, "tolerance": PATH_TOL})


def check_divergence_cancellation(field_boost, n_max) -> CheckResult:
    config = CavityConfig(1)
    bad = []
    for beta, _ in pythagorean_boosts(100):
        for b in (beta, -beta):
            audit = divergence_audit(Fraction(1, 2), config, BoostSpec.along_z(b), field_boost)
            if any(x != 0 for x in audit.ravel()):
                bad.append(str(b))
    # upstream: divergent parts dominate the correlators near a plate
    z = Fraction(1, 20)
    corr = rest_correlators(z, config)
    f_value = eval_F(corr.xi)
    ratio = min(
        abs(x.f_coeff * f_value) / abs(x.const_coeff)
        for block in (corr.ee, corr.bb) for x in np.diag(block)
    )
    passed = not bad and ratio > DIVERGENCE_DOMINANCE
    return CheckResult("divergence_cancellation", passed,
                       "f coefficients of the boosted tensor vanish exactly for Pythagorean z-boosts",
                       {"failing_beta": ", ".join(bad), "upstream_min_ratio": ratio})


def check_parallel_invariance(field_boost, n_max, n: int = 20) -> CheckResult:
    rng = np.random.default_rng(SEED + 1)
    config = CavityConfig(1.0)
    ref = math.pi**2 / 720 * np.diag([-1, 1, 1, -3])
    worst = 0.0
    for _ in range(n):
        spec = random_boost(rng, in_plane=True)
        z = random_interior_z(rng, config)
        got = theta_from_boosted_fields(z, config, spec, field_boost).evaluate(config, config.xi(z))
        worst = max(worst, float(np.max(np.abs(got - ref)) / np.max(np.abs(ref))))
    return CheckResult("parallel_boost_invariance", worst <= STRUCTURE_TOL,
                       f"{n} random in-plane boosts leave the rest tensor unchanged",
                       {"max_rel_diff": worst})


def check_lattice(field_boost, n_max) -> CheckResult:
    reports = [
        compare(f"F({xi:.6f})", eval_F(xi), lattice_sum_F(xi, n_max), "lattice-sum")
        for xi in np.linspace(*LATTICE_BAND, 50)
    ]
    failing = [r for r in reports if r.rel_dev > LATTICE_TOL]
    return CheckResult("F_lattice_sum", not failing,
                       "closed-form F vs partial-fraction lattice sum on 50 points",
                       {"n_max": n_max, "max_rel_dev": max(r.rel_dev for r in reports)},
                       failing or reports[:1])


def check_finite_difference(field_boost, n_max) -> CheckResult:
    reports = [
        compare(f"F({xi:.6f})", eval_F(xi), fd_F(xi, FD_STEP), "finite-difference")
        for xi in np.linspace(*FD_BAND, 50)
    ]
    failing = [r for r in reports if r.rel_dev > FD_TOL]
    return CheckResult("F_finite_difference", not failing,
                       "closed-form F vs central difference of cot on 50 points",
                       {"h": FD_STEP, "max_rel_dev": max(r.rel_dev for r in reports)},
                       failing or reports[:1])


def check_half_period(field_boost, n_max) -> CheckResult:
    exact = half_period_F()
    report = compare("F(pi/2)", eval_F(math.pi / 2), float(exact), "lattice-sum")
    passed = exact == Fraction(1, 8) and report.rel_dev <= 1e-15
    return CheckResult("F_half_period", passed, "F(pi/2) = 1/8 from the lattice reduction",
                       {"exact": str(exact)}, [report])


def check_boundary_asymptotics(field_boost, n_max) -> CheckResult:
    r2 = eval_F(1e-2) * 1e-8 / 0.375
    r3 = eval_F(1e-3) * 1e-12 / 0.375
    passed = abs(r2 - 1) <= 1e-2 and abs(r3 - 1) <= 1e-4
    return CheckResult("boundary_asymptotics", passed, "F(xi) xi^4 -> 3/8 near a plate",
                       {"ratio_1e-2": r2, "ratio_1e-3": r3})


def check_lorentz_structure(field_boost, n_max, n: int = 1000) -> CheckResult:
    rng = np.random.default_rng(SEED + 2)
    eta = METRIC.astype(float)
    lorentz, det, sym, trace, zdep = 0.0, 0.0, 0.0, 0.0, 0.0
    config = CavityConfig(1.0)
    for i in range(n):
        spec = random_boost(rng)
        lam = boost_matrix(spec).to_float()
        lorentz = max(lorentz, float(np.max(np.abs(lam.T @ eta @ lam - eta))))
        det = max(det, abs(float(np.linalg.det(lam)) - 1))
        if i % 20 == 0:
            thetas = [
                theta_from_boosted_fields(z, config, spec, field_boost)
                for z in (0.25, 0.5, 0.75)
            ]
            vals = [t.evaluate(config, config.xi(z)) for t, z in zip(thetas, (0.25, 0.5, 0.75))]
            scale = float(np.max(np.abs(vals[1])))
            sym = max(sym, float(np.max(np.abs(vals[1] - vals[1].T))) / scale)
            trace = max(trace, abs(float(np.sum(np.diag(eta) * np.diag(vals[1])))) / scale)
            zdep = max(zdep, max(float(np.max(np.abs(v - vals[1]))) for v in vals) / scale)
    worst = max(lorentz, det, sym, trace, zdep)
    return CheckResult("lorentz_structure", worst <= STRUCTURE_TOL,
                       "Lambda^T eta Lambda = eta, det = 1, symmetric traceless z-independent Theta",
                       {"metric": lorentz, "det": det, "symmetry": sym, "trace": trace,
                        "z_dependence": zdep})


def check_correlator_boost(field_boost, n_max) -> CheckResult:
    config = CavityConfig(1)
    errors = []
    c = Fraction(1, 120)
    for b in (Fraction(3, 5), Fraction(5, 13), Fraction(4, 5)):
        spec = BoostSpec.along_z(b)
        g2 = spec.gamma**2
        rest = rest_moments(Fraction(1, 2), config)
        s = boosted_moments(Fraction(1, 2), config, spec, field_boost)
        ee_par = AffineF(g2 * (-c - b * b * c), g2 * (1 - b * b))
        bb_par = AffineF(g2 * (-c - b * b * c), -g2 * (1 - b * b))
        if s.ee[2, 2] != rest.ee[2, 2] or s.bb[2, 2] != rest.bb[2, 2]:
            errors.append(f"beta={b}: normal components changed")
        if s.ee[0, 0] != ee_par or s.ee[1, 1] != ee_par:
            errors.append(f"beta={b}: <E'_x^2>, <E'_y^2>")
        if s.bb[0, 0] != bb_par or s.bb[1, 1] != bb_par:
            errors.append(f"beta={b}: <B'_x^2>, <B'_y^2>")
        if any(s.ee[i, j] != AffineF() or s.bb[i, j] != AffineF()
               for i in range(3) for j in range(3) if i != j):
            errors.append(f"beta={b}: off-diagonal EE'/BB'")
    return CheckResult("correlator_boost", not errors,
                       "boosted EE/BB correlators vs their expanded closed forms",
                       {"errors": "; ".join(errors)})


def check_mixed_moment(field_boost, n_max) -> CheckResult:
    config = CavityConfig(1)
    errors = []
    for b in (Fraction(3, 5), Fraction(5, 13), Fraction(-4, 5)):
        spec = BoostSpec.along_z(b)
        g2 = spec.gamma**2
        rest = rest_moments(Fraction(1, 2), config)
        eb = boosted_moments(Fraction(1, 2), config, spec, field_boost).eb
        want_xy = (rest.bb[1, 1] + rest.ee[0, 0]) * (-g2 * b)
        want_yx = (rest.bb[0, 0] + rest.ee[1, 1]) * (g2 * b)
        if eb[0, 1] != want_xy:
            errors.append(f"beta={b}: <E'_x B'_y>")
        if eb[1, 0] != want_yx:
            errors.append(f"beta={b}: <E'_y B'_x>")
        others = [eb[i, j] for i in range(3) for j in range(3) if (i, j) not in ((0, 1), (1, 0))]
        if any(x.const_coeff != 0 or x.f_coeff != 0 for x in others):
            errors.append(f"beta={b}: spurious mixed moments")
    return CheckResult("mixed_moment", not errors,
                       "boosted <E'_i B'_j> vs the closed form -gamma^2 beta (<B_y^2> + <E_x^2>)",
                       {"errors": "; ".join(errors)})


def check_rational_replay(field_boost, n_max) -> CheckResult:
    reports = [rational_replay(b, g, field_boost) for b, g in pythagorean_boosts(100)]
    failing = [r for r in reports if not r.extra["passed"]]
    return CheckResult("rational_replay", not failing,
                       f"exact replay for {len(reports)} Pythagorean boosts (hypotenuse <= 100)",
                       {"n_boosts": len(reports)}, failing or reports[:1])


CHECKS = {
    "rest_tensor": check_rest_tensor,
    "stress_components": check_stress_components,
    "force_per_area": check_force,
    "boosted_closed_form": check_boosted_closed_form,
    "path_equivalence": check_path_equivalence,
    "divergence_cancellation": check_divergence_cancellation,
    "parallel_boost_invariance": check_parallel_invariance,
    "F_lattice_sum": check_lattice,
    "F_finite_difference": check_finite_difference,
    "F_half_period": check_half_period,
    "boundary_asymptotics": check_boundary_asymptotics,
    "lorentz_structure": check_lorentz_structure,
    "correlator_boost": check_correlator_boost,
    "mixed_moment": check_mixed_moment,
    "rational_replay": check_rational_replay,
}


def faulty_field_boost(spec: BoostSpec):
    """Field boost with the sign of beta x E in the magnetic transform flipped."""
    return _field_boost(spec, b_sign=+1)


def run_checks(n_max: int = 200, inject_fault: bool = False) -> list[CheckResult]:
    field_boost = faulty_field_boost if inject_fault else field_boost_matrix
    results = []
    for name, check in CHECKS.items():
        try:
            results.append(check(field_boost, n_max))
        except (CasimirError, ArithmeticError, ValueError) as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results


def report_json(results: list[CheckResult], inject_fault: bool = False) -> dict:
    n_failed = sum(not r.passed for r in results)
    return {
        "passed": n_failed == 0,
        "n_checks": len(results),
        "n_failed": n_failed,
        "fault_injected": inject_fault,
        "checks": [r.to_json() for r in results],
    }


def report_text(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<26} {r.message}")
        if not r.passed:
            for k, v in r.detail.items():
                lines.append(f"        {k}: {_plain(v)}")
            for rep in r.reports:
                lines.append(
                    f"        {rep.method} {rep.quantity}: primary={float(rep.primary)!r} "
                    f"oracle={float(rep.oracle)!r} rel_dev={float(rep.rel_dev):.3e}"
                )
    n_failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"

