"""Rest-frame correlators and stress-energy assembly between the plates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    BOUNDARY_EXCLUSION,
    CASIMIR_UNITS_PER_TENSOR_UNIT,
    AffineF,
    CancellationError,
    CavityConfig,
    DomainError,
    SecondMomentMatrix,
    StressEnergyTensor,
    ZERO,
    as_scalar,
    is_exact,
    zeros_affine,
)

# Relative size of a tolerated float-path f residual, against the tensor scale.
FLOAT_CANCELLATION_TOL = 1e-10

_LEVI_CIVITA = {
    (0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
    (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1,
}


def _check_xi(xi) -> None:
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(~(xi_arr > 0)) or np.any(~(xi_arr < math.pi)):
        raise DomainError("F(xi) diverges on the plates; xi must lie in (0, pi)")
    if np.any(xi_arr < BOUNDARY_EXCLUSION) or np.any(math.pi - xi_arr < BOUNDARY_EXCLUSION):
        raise DomainError("xi is inside the float boundary exclusion zone")


def eval_F(xi):
    r"""Boundary-divergent profile :math:`F(\xi) = -\tfrac{1}{16}\,\cot'''(\xi)`.

    With :math:`\cot''' = -4\csc^2\cot^2 - 2\csc^4`,

    .. math::
        F(\xi) = \frac{\csc^2\xi\cot^2\xi}{4} + \frac{\csc^4\xi}{8}
               = \frac{1 + 2\cos^2\xi}{8\sin^4\xi}.

    Accepts a float or an array of floats in (0, pi).
    """
    _check_xi(xi)
    s = np.sin(xi)
    c = np.cos(xi)
    out = (1.0 + 2.0 * c * c) / (8.0 * s**4)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class CorrelatorSet:
    """EE, BB and EB correlators (AffineF, units of K) at one interior point."""

    ee: np.ndarray
    bb: np.ndarray
    eb: np.ndarray
    z: object
    xi: float

    @property
    def moments(self) -> SecondMomentMatrix:
        return SecondMomentMatrix.from_blocks(self.ee, self.eb, self.bb)

    def evaluate(self, config: CavityConfig) -> dict[str, np.ndarray]:
        from .core import prefactor

        k = prefactor(config)
        f_value = eval_F(self.xi)
        ev = np.vectorize(lambda x: k * float(x.value(f_value)), otypes=[float])
        return {"EE": ev(self.ee), "BB": ev(self.bb), "EB": ev(self.eb)}


def rest_correlators(z, config: CavityConfig) -> CorrelatorSet:
    """Equal-point vacuum correlators of the cavity, with F kept symbolic.

    EE = K diag(-1/120 + F, -1/120 + F, 1/120 + F)
    BB = K diag(-1/120 - F, -1/120 - F, 1/120 - F)
    EB = 0
    """
    xi = config.xi(z)
    c = Fraction(1, 120)
    ee = zeros_affine(3)
    bb = zeros_affine(3)
    for i, sign in enumerate((-1, -1, 1)):
        ee[i, i] = AffineF(sign * c, Fraction(1))
        bb[i, i] = AffineF(sign * c, Fraction(-1))
    return CorrelatorSet(ee=ee, bb=bb, eb=zeros_affine(3), z=as_scalar(z), xi=xi)


def rest_moments(z, config: CavityConfig) -> SecondMomentMatrix:
    return rest_correlators(z, config).moments


def _trace(m: np.ndarray) -> AffineF:
    return sum((m[i, i] for i in range(m.shape[0])), ZERO)


def stress_from_moments(S: SecondMomentMatrix) -> np.ndarray:
    """Maxwell stress T_ij over AffineF, in tensor units K/(4 pi).

    4 pi T_ij = EE_ij - delta_ij tr(EE)/2 + BB_ij - delta_ij tr(BB)/2
    """
    ee, bb = S.ee, S.bb
    half = Fraction(1, 2)
    tr = _trace(ee) + _trace(bb)
    out = zeros_affine(3)
    for i in range(3):
        for j in range(3):
            t = ee[i, j] + bb[i, j]
            if i == j:
                t = t - tr * half
            out[i, j] = t
    return out


def energy_density(S: SecondMomentMatrix) -> AffineF:
    """rho = (tr EE + tr BB)/(8 pi), in tensor units K/(4 pi)."""
    return (_trace(S.ee) + _trace(S.bb)) * Fraction(1, 2)


def momentum_density(S: SecondMomentMatrix) -> np.ndarray:
    """Poynting density <E x B>_k/(4 pi) = eps_ijk EB_ij/(4 pi), in tensor units."""
    eb = S.eb
    out = zeros_affine(3, 1)[:, 0]
    for (i, j, k), sign in _LEVI_CIVITA.items():
        out[k] = out[k] + eb[i, j] * sign
    return out


def assemble_unchecked(S: SecondMomentMatrix) -> StressEnergyTensor:
    """Theta^{mu nu} from second moments, F coefficients left as they fall."""
    theta = zeros_affine(4)
    theta[0, 0] = energy_density(S)
    p = momentum_density(S)
    t = stress_from_moments(S)
    for k in range(3):
        theta[0, k + 1] = theta[k + 1, 0] = p[k]
        for j in range(3):
            theta[k + 1, j + 1] = -t[k, j]
    return StressEnergyTensor(theta)


def cancellation_residual(theta: StressEnergyTensor):
    """Largest |f_coeff| over the tensor and the scale it is judged against."""
    f = [abs(x.f_coeff) for x in theta.entries.ravel()]
    c = [abs(x.const_coeff) for x in theta.entries.ravel()]
    return max(f), max(c)


def assemble_theta(S: SecondMomentMatrix) -> StressEnergyTensor:
    """Renormalized stress-energy tensor; raises if any divergent part survives.

    Exact zero is required on the rational path.  On the float path the
    largest f coefficient may not exceed ``FLOAT_CANCELLATION_TOL`` times the
    largest finite entry (or the rest-frame scale 1/120 if that is larger).
    """
    theta = assemble_unchecked(S)
    f_max, c_max = cancellation_residual(theta)
    exact = all(is_exact(x.f_coeff) for x in theta.entries.ravel())
    if exact:
        ok = f_max == 0
    else:
        ok = f_max <= FLOAT_CANCELLATION_TOL * max(float(c_max), 1 / 120)
    if not ok:
        raise CancellationError(
            f"divergent F coefficients survived assembly:\n{theta.f_coefficients()}"
        )
    return theta


def reference_rest_tensor(config: CavityConfig) -> StressEnergyTensor:
    """pi**2/(720 a**4) * diag(-1, 1, 1, -3); independent of z and of a in these units."""
    config = config if isinstance(config, CavityConfig) else CavityConfig(config)
    d = [-1, 1, 1, -3]
    return StressEnergyTensor.from_casimir_units(
        [[d[i] if i == j else 0 for j in range(4)] for i in range(4)]
    )


def force_per_area(config: CavityConfig) -> float:
    """Casimir pressure -pi**2/(240 a**4); negative means attraction."""
    return math.pi**2 * float(force_per_area_coefficient(config))


def force_per_area_coefficient(config: CavityConfig):
    """Rational cofactor of pi**2 in the force per unit area, -1/(240 a**4)."""
    a = config.a
    if is_exact(a):
        return Fraction(-1, 240) / Fraction(a) ** 4
    return -1.0 / (240.0 * a**4)


def theta_zz_coefficient(config: CavityConfig):
    """Rational cofactor of pi**2 in Theta^{zz} of the reference tensor."""
    theta = reference_rest_tensor(config)
    c = theta.entries[3, 3].const_coeff * CASIMIR_UNITS_PER_TENSOR_UNIT / 720
    a = config.a
    return c / Fraction(a) ** 4 if is_exact(a) else float(c) / a**4
