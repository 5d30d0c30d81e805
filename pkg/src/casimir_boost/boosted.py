"""Boosted-frame correlators and the field-path vs tensor-path comparison."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    CASIMIR_UNITS_PER_TENSOR_UNIT,
    BoostSpec,
    CavityConfig,
    SecondMomentMatrix,
    StressEnergyTensor,
    as_scalar,
    congruence,
    is_exact,
    lorentz_gamma,
)
from .lorentz import FieldBoost6, boost_matrix, field_boost_matrix, tensor_boost
from .rest_frame import (
    assemble_theta,
    assemble_unchecked,
    cancellation_residual,
    eval_F,
    reference_rest_tensor,
    rest_moments,
)

FieldBoost = Callable[[BoostSpec], FieldBoost6]


def _spec(beta) -> BoostSpec:
    return beta if isinstance(beta, BoostSpec) else BoostSpec(beta)


def boost_second_moments(
    S: SecondMomentMatrix, beta, field_boost: FieldBoost = field_boost_matrix
) -> SecondMomentMatrix:
    """S' = L S L^T with L the field boost; F stays symbolic throughout."""
    L = field_boost(_spec(beta)).matrix
    return SecondMomentMatrix(congruence(L, S.matrix))


def boosted_moments(z, config: CavityConfig, beta, field_boost: FieldBoost = field_boost_matrix):
    return boost_second_moments(rest_moments(z, config), beta, field_boost)


def theta_from_boosted_fields(
    z, config: CavityConfig, beta, field_boost: FieldBoost = field_boost_matrix
) -> StressEnergyTensor:
    return assemble_theta(boosted_moments(z, config, beta, field_boost))


def reference_boosted_tensor(config: CavityConfig, beta_z) -> StressEnergyTensor:
    """Rest tensor boosted along the plate normal, written out in closed form.

    In units of pi**2/(720 a**4):
    Theta'^00 = -gamma**2 (1 + 3 beta**2), Theta'^0z = 4 gamma**2 beta,
    Theta'^xx = Theta'^yy = 1, Theta'^zz = -gamma**2 (3 + beta**2).
    gamma**2 = 1/(1 - beta**2) is rational for every rational beta.
    """
    b = as_scalar(beta_z)
    lorentz_gamma(b * b)
    g2 = 1 / (1 - b * b)
    rows = [[0] * 4 for _ in range(4)]
    rows[0][0] = -g2 * (1 + 3 * b * b)
    rows[0][3] = rows[3][0] = 4 * g2 * b
    rows[1][1] = rows[2][2] = 1
    rows[3][3] = -g2 * (3 + b * b)
    return StressEnergyTensor.from_casimir_units(rows)


def _entry_value(x, f_value):
    """Entry in units of pi**2/(720 a**4); stays exact when f_coeff is zero."""
    return x.value(f_value) * CASIMIR_UNITS_PER_TENSOR_UNIT


def tensor_difference(a: StressEnergyTensor, b: StressEnergyTensor, xi: float):
    """(max |a - b|, max |b|) in units of pi**2/(720 a**4), evaluated at xi."""
    f_value = None
    if any(x.is_divergent for x in np.concatenate([a.entries.ravel(), b.entries.ravel()])):
        f_value = eval_F(xi)
    diff = max(abs(_entry_value(x - y, f_value)) for x, y in zip(a.entries.ravel(), b.entries.ravel()))
    scale = max(abs(_entry_value(y, f_value)) for y in b.entries.ravel())
    return diff, scale


@dataclass(frozen=True, eq=False)
class PathComparison:
    """Field-level and tensor-level boosted tensors with their deviations.

    Deviations are in units of pi**2/(720 a**4); ``max_rel_diff`` divides by
    the largest tensor-path entry.
    """

    theta_field_path: StressEnergyTensor
    theta_tensor_path: StressEnergyTensor
    max_abs_diff: object
    max_rel_diff: object
    f_coeff_residual: object
    closed_form_diff: object = None

    @property
    def exact(self) -> bool:
        return is_exact(self.max_abs_diff) and is_exact(self.f_coeff_residual)


def verify_equivalence(
    z, config: CavityConfig, beta, field_boost: FieldBoost = field_boost_matrix
) -> PathComparison:
    """Compare the boost of the field moments against the boost of the rest tensor.

    Never raises on a failed cancellation; the surviving f coefficient is
    reported instead.
    """
    spec = _spec(beta)
    xi = config.xi(z)
    field_path = assemble_unchecked(boosted_moments(z, config, spec, field_boost))
    tensor_path = tensor_boost(reference_rest_tensor(config), boost_matrix(spec))
    diff, scale = tensor_difference(field_path, tensor_path, xi)
    rel = diff / scale if scale != 0 else diff
    residual, _ = cancellation_residual(field_path)
    closed = None
    if spec.is_along_z:
        closed, _ = tensor_difference(
            field_path, reference_boosted_tensor(config, spec.beta[2]), xi
        )
    return PathComparison(field_path, tensor_path, diff, rel, residual, closed)


def divergence_audit(
    z, config: CavityConfig, beta, field_boost: FieldBoost = field_boost_matrix
) -> np.ndarray:
    """f coefficients of every boosted tensor entry, read before any cancellation check."""
    config.xi(z)
    theta = assemble_unchecked(boosted_moments(z, config, _spec(beta), field_boost))
    return theta.f_coefficients()

