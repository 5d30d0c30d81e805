"""Independent checks for the closed forms: finite differences, lattice sums,
and an exact-rational replay of the boosted pipeline."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    CASIMIR_UNITS_PER_TENSOR_UNIT,
    BoostSpec,
    CavityConfig,
    DomainError,
    as_scalar,
    is_exact,
)

DEFAULT_NMAX = 200


def default_nmax() -> int:
    """Lattice-sum depth, overridable through ``CASIMIR_NMAX``."""
    raw = os.environ.get("CASIMIR_NMAX")
    if not raw:
        return DEFAULT_NMAX
    n = int(raw)
    if n < 1:
        raise DomainError("CASIMIR_NMAX must be a positive integer")
    return n


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    primary: object
    oracle: object
    abs_dev: object
    rel_dev: object
    method: str
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in ("finite-difference", "lattice-sum", "rational-replay"):
            raise ValueError(f"unknown oracle method {self.method!r}")
        if self.abs_dev < 0 or self.rel_dev < 0:
            raise ValueError("deviations must be nonnegative")


def compare(quantity: str, primary, oracle, method: str, **extra) -> OracleReport:
    dev = abs(primary - oracle)
    rel = dev / abs(oracle) if oracle != 0 else dev
    return OracleReport(quantity, primary, oracle, dev, rel, method, extra)


def fd_third_derivative_cot(xi: float, h: float) -> float:
    """Central difference [f(x+2h) - 2f(x+h) + 2f(x-h) - f(x-2h)]/(2h^3) of cot, O(h^2)."""
    xi, h = float(xi), float(h)
    if not h > 0:
        raise DomainError("step must be positive")
    if not (0 < xi - 2 * h and xi + 2 * h < math.pi):
        raise DomainError("stencil leaves the open interval (0, pi)")

    def cot(x):
        return math.cos(x) / math.sin(x)

    return (cot(xi + 2 * h) - 2 * cot(xi + h) + 2 * cot(xi - h) - cot(xi - 2 * h)) / (2 * h**3)


def fd_F(xi: float, h: float = 1e-3) -> float:
    return -fd_third_derivative_cot(xi, h) / 16


def lattice_tail(xi: float, n_max: int) -> float:
    """Midpoint-rule estimate of sum_{|n| > n_max} (xi - n pi)^-4."""
    edge = (n_max + 0.5) * math.pi
    return (1 / (edge - xi) ** 3 + 1 / (edge + xi) ** 3) / (3 * math.pi)


def lattice_tail_bound(n_max: int) -> float:
    """Upper bound on the omitted part of (3/8) * sum (xi - n pi)^-4, n_max >= 2."""
    return (3 / 8) * 2 / (3 * (math.pi * (n_max - 1)) ** 3)


def lattice_sum_F(xi: float, n_max: int | None = None, tail: bool = True) -> float:
    """F(xi) = (3/8) sum_{n in Z} (xi - n pi)^-4, from the partial fractions of cot.

    Summed over |n| <= n_max (smallest terms first) plus an integral tail estimate.
    """
    xi = float(xi)
    n_max = default_nmax() if n_max is None else int(n_max)
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if not 0 < xi < math.pi:
        raise DomainError("xi must lie in (0, pi)")
    total = lattice_tail(xi, n_max) if tail else 0.0
    for n in range(n_max, 0, -1):
        total += (xi - n * math.pi) ** -4 + (xi + n * math.pi) ** -4
    total += xi**-4
    return 0.375 * total


def half_period_F() -> Fraction:
    """Exact F(pi/2) from the lattice sum.

    At xi = pi/2 every term is (2/pi)^4 / (2n - 1)^4, so the sum is
    (16/pi^4) * 2 * lambda(4) with lambda(4) = (1 - 2^-4) zeta(4) and
    zeta(4) = pi^4/90; the powers of pi cancel.
    """
    zeta4_over_pi4 = Fraction(1, 90)
    lambda4_over_pi4 = (1 - Fraction(1, 2**4)) * zeta4_over_pi4
    return Fraction(3, 8) * 2**4 * 2 * lambda4_over_pi4


def pythagorean_boosts(max_hypotenuse: int = 100):
    """Every (beta, gamma) with rational gamma from a triple m^2 + n^2 = c^2, c <= bound."""
    out = []
    for c in range(1, max_hypotenuse + 1):
        for m in range(1, c):
            n2 = c * c - m * m
            n = math.isqrt(n2)
            if n > 0 and n * n == n2:
                out.append((Fraction(m, c), Fraction(c, n)))
    return sorted(set(out))


def rational_replay(beta, gamma, field_boost=None) -> OracleReport:
    """Run the z-boosted field pipeline in exact arithmetic and compare with the closed form.

    F is carried as a formal symbol, so ``f_zero`` certifies that every
    divergent coefficient of the boosted tensor is the rational zero.
    """
    from .boosted import boosted_moments, reference_boosted_tensor
    from .lorentz import field_boost_matrix
    from .rest_frame import assemble_unchecked

    beta, gamma = as_scalar(beta), as_scalar(gamma)
    if not (is_exact(beta) and is_exact(gamma)):
        raise DomainError("rational replay needs rational beta and gamma")
    if gamma <= 0 or gamma * gamma * (1 - beta * beta) != 1:
        raise DomainError(f"({beta}, {gamma}) is not a Pythagorean boost")
    spec = BoostSpec.along_z(beta)
    assert spec.gamma == gamma
    config = CavityConfig(1)
    fb = field_boost or field_boost_matrix
    theta = assemble_unchecked(boosted_moments(Fraction(1, 2), config, spec, fb))
    ref = reference_boosted_tensor(config, beta)
    unit = CASIMIR_UNITS_PER_TENSOR_UNIT
    f_res = max(abs(x.f_coeff) for x in theta.entries.ravel())
    dev = max(
        abs((x.const_coeff - y.const_coeff) * unit)
        for x, y in zip(theta.entries.ravel(), ref.entries.ravel())
    )
    primary = theta.entries[3, 3].const_coeff * unit
    oracle = ref.entries[3, 3].const_coeff * unit
    exact = all(is_exact(x.const_coeff) and is_exact(x.f_coeff) for x in theta.entries.ravel())
    return OracleReport(
        quantity=f"boosted tensor, beta={beta}",
        primary=primary,
        oracle=oracle,
        abs_dev=max(dev, f_res),
        rel_dev=max(dev, f_res) / abs(oracle),
        method="rational-replay",
        extra={
            "beta": beta,
            "gamma": gamma,
            "f_coeff_residual": f_res,
            "max_entry_deviation": dev,
            "exact": exact,
            "passed": exact and f_res == 0 and dev == 0,
        },
    )
