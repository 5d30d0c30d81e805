"""Passive Lorentz boosts of spacetime tensors and of the (E, B) field pair."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .core import (
    METRIC,
    BoostSpec,
    LorentzConditionError,
    StressEnergyTensor,
    congruence,
    is_exact,
)

LORENTZ_TOL = 1e-12


def _cross_matrix(beta) -> np.ndarray:
    """C with C @ v == beta x v."""
    bx, by, bz = beta
    zero = Fraction(0)
    return np.array(
        [[zero, -bz, by], [bz, zero, -bx], [-by, bx, zero]], dtype=object
    )


def _outer_coeff(spec: BoostSpec):
    """gamma**2/(gamma + 1), equal to (gamma - 1)/beta**2 but finite at beta = 0."""
    g = spec.gamma
    return g * g / (g + 1)


def _det(m) -> object:
    """Determinant by permutation expansion; exact for Fraction entries."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term = term * m[i][p]
            if term == 0:
                break
        total = total + term
    return total


@dataclass(frozen=True, eq=False)
class Boost4:
    """Mixed-index boost matrix Lambda^mu_nu."""

    matrix: np.ndarray

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self.matrix.ravel())

    def metric_defect(self):
        """Largest entry of |Lambda^T eta Lambda - eta|."""
        m = self.matrix
        d = m.T @ METRIC @ m - METRIC
        return max(abs(x) for x in d.ravel())

    def det(self):
        return _det(self.matrix.tolist())

    def satisfies_lorentz(self, tol: float = LORENTZ_TOL) -> bool:
        defect = self.metric_defect()
        return defect == 0 if self.is_exact else defect <= tol

    def __matmul__(self, other: Boost4) -> Boost4:
        return Boost4(self.matrix @ other.matrix)

    def to_float(self) -> np.ndarray:
        return self.matrix.astype(float)


@dataclass(frozen=True, eq=False)
class FieldBoost6:
    """Linear map (E, B) -> (E', B') as a 6x6 matrix."""

    matrix: np.ndarray

    def __matmul__(self, other: FieldBoost6) -> FieldBoost6:
        return FieldBoost6(self.matrix @ other.matrix)

    def to_float(self) -> np.ndarray:
        return self.matrix.astype(float)


def boost_matrix(beta: BoostSpec) -> Boost4:
    """Passive boost to a frame moving with velocity beta.

    Lambda^0_0 = gamma, Lambda^0_i = Lambda^i_0 = -gamma beta_i,
    Lambda^i_j = delta_ij + gamma**2 beta_i beta_j / (gamma + 1).
    """
    spec = beta if isinstance(beta, BoostSpec) else BoostSpec(beta)
    g = spec.gamma
    k = _outer_coeff(spec)
    b = spec.beta
    m = np.empty((4, 4), dtype=object)
    m[0, 0] = g
    for i in range(3):
        m[0, i + 1] = m[i + 1, 0] = -g * b[i]
        for j in range(3):
            m[i + 1, j + 1] = (1 if i == j else 0) + k * b[i] * b[j]
    return Boost4(m)


def _field_boost(spec: BoostSpec, e_sign: int = 1, b_sign: int = -1) -> FieldBoost6:
    g = spec.gamma
    k = _outer_coeff(spec)
    b = spec.beta
    c = _cross_matrix(b)
    a = np.empty((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            a[i, j] = (g if i == j else 0) - k * b[i] * b[j]
    top = np.hstack([a, c * (e_sign * g)])
    bottom = np.hstack([c * (b_sign * g), a])
    return FieldBoost6(np.vstack([top, bottom]))


def field_boost_matrix(beta: BoostSpec) -> FieldBoost6:
    """Passive transformation of the field pair.

    E' = gamma (E + beta x B) - gamma**2/(gamma+1) beta (beta . E)
    B' = gamma (B - beta x E) - gamma**2/(gamma+1) beta (beta . B)
    """
    spec = beta if isinstance(beta, BoostSpec) else BoostSpec(beta)
    return _field_boost(spec)


def tensor_boost(theta: StressEnergyTensor, lam: Boost4) -> StressEnergyTensor:
    """Theta'^{mu nu} = Lambda^mu_rho Lambda^nu_delta Theta^{rho delta}."""
    if not lam.satisfies_lorentz():
        raise LorentzConditionError(
            f"matrix violates Lambda^T eta Lambda = eta (defect {lam.metric_defect()})"
        )
    return StressEnergyTensor(congruence(lam.matrix, theta.entries))


def rotation_about_z(angle: float) -> np.ndarray:
    """Proper 3x3 rotation; internal helper for in-plane reductions."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotate_fields(angle: float) -> FieldBoost6:
    """Rotation acting identically on E and B."""
    r = rotation_about_z(angle)
    m = np.zeros((6, 6))
    m[:3, :3] = r
    m[3:, 3:] = r
    return FieldBoost6(m.astype(object))
