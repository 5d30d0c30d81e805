"""Shared domain types for the boosted parallel-plate cavity.

Numbers follow a dual path: :class:`fractions.Fraction` whenever every input
is rational, plain ``float`` otherwise.  Python's arithmetic already demotes
``Fraction op float`` to ``float``, so the path tag is simply the type of the
value (see :func:`is_exact`).

Correlator-level :class:`AffineF` values are implicitly multiplied by the
cavity prefactor ``K(a) = (pi/a)**4 * 2/(3*pi)``.  Tensor-level values
(stress, energy and momentum densities) carry an additional ``1/(4*pi)``,
i.e. they are coefficients of ``K(a)/(4*pi) = pi**2/(6*a**4)``.  Multiplying a
tensor-level coefficient by :data:`CASIMIR_UNITS_PER_TENSOR_UNIT` (120) gives
the coefficient of ``pi**2/(720*a**4)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np

Scalar = Union[Fraction, float]

# pi**2/(6 a**4) == 120 * pi**2/(720 a**4)
CASIMIR_UNITS_PER_TENSOR_UNIT = Fraction(120)

# Rejected distance (in xi) from either plate on the float path.
BOUNDARY_EXCLUSION = 1e-9


class CasimirError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """Input lies outside the region where a quantity is defined."""


class CancellationError(CasimirError, ArithmeticError):
    """A boundary-divergent coefficient survived tensor assembly."""


class NonlinearProductError(CasimirError, TypeError):
    """Attempted product of two AffineF values."""


class LorentzConditionError(CasimirError, ValueError):
    """Matrix does not preserve the Minkowski metric."""


def as_scalar(x) -> Scalar:
    """Coerce ``x`` onto the dual path.

    Integers, rationals and decimal strings become ``Fraction``; floats
    (including numpy floats) stay ``float``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer, Rational)):
        return Fraction(int(x)) if isinstance(x, (int, np.integer)) else Fraction(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            return float(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def to_float(x) -> float:
    return float(x)


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Rational square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        raise DomainError("square root of a negative number")
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def lorentz_gamma(beta_sq: Scalar) -> Scalar:
    """gamma = (1 - beta**2)**(-1/2); exact when 1 - beta**2 is a rational square."""
    if beta_sq >= 1:
        raise DomainError("speed must satisfy |beta| < 1")
    if is_exact(beta_sq):
        root = exact_sqrt(1 - Fraction(beta_sq))
        if root is not None:
            return 1 / root
    return 1.0 / math.sqrt(1.0 - float(beta_sq))


@dataclass(frozen=True)
class CavityConfig:
    """Two perfect conductors at z = 0 and z = a (units hbar = c = 1)."""

    a: Scalar = Fraction(1)

    def __post_init__(self):
        a = as_scalar(self.a)
        if not a > 0 or (isinstance(a, float) and not math.isfinite(a)):
            raise DomainError(f"plate separation must be positive and finite, got {self.a!r}")
        object.__setattr__(self, "a", a)

    def xi(self, z) -> float:
        """Reduced coordinate pi*z/a, validated to lie strictly between the plates."""
        z = as_scalar(z)
        if not 0 < z < self.a:
            raise DomainError(f"z={z} is not strictly inside the cavity (0, {self.a})")
        xi = math.pi * float(z) / float(self.a)
        if xi < BOUNDARY_EXCLUSION or math.pi - xi < BOUNDARY_EXCLUSION:
            raise DomainError(f"z={z} is within the float boundary exclusion zone")
        return xi


@dataclass(frozen=True)
class BoostSpec:
    """Boost velocity (units of c) with its derived Lorentz factor."""

    beta: tuple = (Fraction(0), Fraction(0), Fraction(0))
    gamma: Scalar = field(init=False)

    def __post_init__(self):
        beta = tuple(as_scalar(b) for b in self.beta)
        if len(beta) != 3:
            raise DomainError("beta must have three components")
        if not all(math.isfinite(float(b)) for b in beta):
            raise DomainError("beta components must be finite")
        beta_sq = sum(b * b for b in beta)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", lorentz_gamma(beta_sq))

    @classmethod
    def along_z(cls, beta) -> BoostSpec:
        return cls((0, 0, beta))

    @classmethod
    def from_rapidity(cls, phi: float, direction=(0.0, 0.0, 1.0)) -> BoostSpec:
        n = np.asarray(direction, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(tuple(float(c) for c in math.tanh(phi) * n))

    @property
    def speed_sq(self) -> Scalar:
        return sum(b * b for b in self.beta)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(b) for b in self.beta) and is_exact(self.gamma)

    @property
    def is_along_z(self) -> bool:
        return self.beta[0] == 0 and self.beta[1] == 0

    @property
    def is_in_plane(self) -> bool:
        return self.beta[2] == 0


@dataclass(frozen=True)
class AffineF:
    """``const_coeff + f_coeff * F(xi)``, in units fixed by context (see module doc).

    Closed under addition and scalar multiplication only.  Products of two
    AffineF values are rejected: nothing in the cavity algebra needs ``F**2``.
    """

    const_coeff: Scalar = Fraction(0)
    f_coeff: Scalar = Fraction(0)

    def __add__(self, other):
        if isinstance(other, AffineF):
            return AffineF(self.const_coeff + other.const_coeff, self.f_coeff + other.f_coeff)
        if isinstance(other, (int, float, Fraction)) and other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return AffineF(-self.const_coeff, -self.f_coeff)

    def __sub__(self, other):
        if isinstance(other, AffineF):
            return self + (-other)
        return self + (-other) if isinstance(other, (int, float, Fraction)) else NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AffineF):
            raise NonlinearProductError("product of two AffineF values is not representable")
        if isinstance(other, (int, float, Fraction, np.integer, np.floating)):
            other = as_scalar(other)
            return AffineF(self.const_coeff * other, self.f_coeff * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, AffineF):
            raise NonlinearProductError("quotient of two AffineF values is not representable")
        other = as_scalar(other)
        if is_exact(other):
            return self * (1 / other)
        return self * (1.0 / other)

    @property
    def is_divergent(self) -> bool:
        return self.f_coeff != 0

    def value(self, f_value: float | None = None) -> Scalar:
        """Bracket value ``c0 + c1*F`` without any prefactor.

        ``f_value`` may be omitted when ``f_coeff`` is zero; the result then
        stays exact on the rational path.
        """
        if self.f_coeff == 0:
            return self.const_coeff
        if f_value is None:
            raise DomainError("F(xi) is required to evaluate an F-bearing value")
        return self.const_coeff + self.f_coeff * f_value


ZERO = AffineF()


def affine_matrix(rows) -> np.ndarray:
    """Object array of AffineF from nested (c0, c1) pairs or AffineF entries."""
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x if isinstance(x, AffineF) else AffineF(as_scalar(x[0]), as_scalar(x[1]))
    return out


def zeros_affine(n: int, m: int | None = None) -> np.ndarray:
    out = np.empty((n, n if m is None else m), dtype=object)
    out.fill(ZERO)
    return out


def scalar_matrix(rows) -> np.ndarray:
    return np.array([[as_scalar(x) for x in row] for row in rows], dtype=object)


def const_part(m: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: x.const_coeff, otypes=[object])(m)


def f_part(m: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: x.f_coeff, otypes=[object])(m)


def _lift(x):
    if isinstance(x, AffineF):
        return AffineF(Fraction(x.const_coeff), Fraction(x.f_coeff))
    return Fraction(x)


def _round(x: AffineF) -> AffineF:
    return AffineF(float(x.const_coeff), float(x.f_coeff))


def congruence(left: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``left @ m @ left.T`` for symmetric ``m``, filled from the upper triangle.

    Float inputs are lifted to Fractions (losslessly), accumulated exactly
    and rounded once, so coefficient combinations that cancel identically
    cancel to 0.0 rather than to roundoff times a divergent F.  Mirroring
    keeps the result exactly symmetric.
    """
    floats = any(isinstance(x, float) for x in left.ravel()) or any(
        isinstance(x.const_coeff, float) or isinstance(x.f_coeff, float) for x in m.ravel()
    )
    if floats:
        left = np.vectorize(_lift, otypes=[object])(left)
        m = np.vectorize(_lift, otypes=[object])(m)
    n = left.shape[0]
    lm = left @ m
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            acc = ZERO
            for k in range(m.shape[0]):
                if left[j, k] != 0:
                    acc = acc + lm[i, k] * left[j, k]
            out[i, j] = out[j, i] = _round(acc) if floats else acc
    return out


@dataclass(frozen=True, eq=False)
class SecondMomentMatrix:
    """6x6 symmetric second moments over (E_x, E_y, E_z, B_x, B_y, B_z)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=object)
        if m.shape != (6, 6):
            raise ValueError(f"second-moment matrix must be 6x6, got {m.shape}")
        if not all(m[i, j] == m[j, i] for i in range(6) for j in range(i + 1, 6)):
            raise ValueError("second-moment matrix must be symmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_blocks(cls, ee, eb, bb) -> SecondMomentMatrix:
        ee, eb, bb = (np.asarray(x, dtype=object) for x in (ee, eb, bb))
        return cls(np.block([[ee, eb], [eb.T, bb]]))

    @classmethod
    def zeros(cls) -> SecondMomentMatrix:
        return cls(zeros_affine(6))

    @property
    def ee(self) -> np.ndarray:
        return self.matrix[:3, :3]

    @property
    def eb(self) -> np.ndarray:
        return self.matrix[:3, 3:]

    @property
    def bb(self) -> np.ndarray:
        return self.matrix[3:, 3:]

    def __eq__(self, other):
        if not isinstance(other, SecondMomentMatrix):
            return NotImplemented
        return bool(np.all(self.matrix == other.matrix))


METRIC = np.diag([Fraction(-1), Fraction(1), Fraction(1), Fraction(1)]).astype(object)


@dataclass(frozen=True, eq=False)
class StressEnergyTensor:
    """Symmetric 4x4 tensor over AffineF in units of K(a)/(4 pi), indices (t, x, y, z)."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=object)
        if m.shape != (4, 4):
            raise ValueError(f"stress-energy tensor must be 4x4, got {m.shape}")
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_casimir_units(cls, rows) -> StressEnergyTensor:
        """Build an F-free tensor from coefficients of pi**2/(720 a**4)."""
        unit = CASIMIR_UNITS_PER_TENSOR_UNIT
        return cls(affine_matrix([[(as_scalar(x) / unit, 0) for x in row] for row in rows]))

    def __eq__(self, other):
        if not isinstance(other, StressEnergyTensor):
            return NotImplemented
        return bool(np.all(self.entries == other.entries))

    def is_symmetric(self, tol: float = 0.0) -> bool:
        m = self.entries
        for i in range(4):
            for j in range(i + 1, 4):
                d = m[i, j] - m[j, i]
                if abs(d.const_coeff) > tol or abs(d.f_coeff) > tol:
                    return False
        return True

    def eta_trace(self) -> AffineF:
        """eta_{mu nu} Theta^{mu nu}."""
        return sum((METRIC[i, i] * self.entries[i, i] for i in range(4)), ZERO)

    def f_coefficients(self) -> np.ndarray:
        return f_part(self.entries)

    def coefficients(self) -> np.ndarray:
        """Finite parts as multiples of pi**2/(720 a**4)."""
        return const_part(self.entries) * CASIMIR_UNITS_PER_TENSOR_UNIT

    def evaluate(self, config: CavityConfig, xi: float | None = None) -> np.ndarray:
        """Numeric tensor in units hbar = c = 1."""
        from .rest_frame import eval_F

        f_value = eval_F(xi) if xi is not None else None
        unit = tensor_unit(config)
        return np.array(
            [[float(x.value(f_value)) * unit for x in row] for row in self.entries]
        )


def prefactor(config: CavityConfig) -> float:
    """K(a) = (pi/a)**4 * 2/(3 pi) = 2 pi**3 / (3 a**4)."""
    return math.pi**3 * float(prefactor_rational(config))


def prefactor_rational(config: CavityConfig) -> Scalar:
    """Rational cofactor of pi**3 in K(a), i.e. 2/(3 a**4)."""
    a = config.a
    if is_exact(a):
        return Fraction(2, 3) / Fraction(a) ** 4
    return 2.0 / (3.0 * a**4)


def tensor_unit(config: CavityConfig) -> float:
    """K(a)/(4 pi) = pi**2/(6 a**4), the multiplier of tensor-level AffineF values."""
    return math.pi**2 * float(prefactor_rational(config)) / 4


def eval_affine(x: AffineF, xi: float, config: CavityConfig) -> float:
    """K(a) * (const_coeff + f_coeff * F(xi)) for a correlator-level value."""
    from .rest_frame import eval_F

    return prefactor(config) * float(x.value(eval_F(xi)))
