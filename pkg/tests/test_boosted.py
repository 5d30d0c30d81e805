import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_boost.boosted import (
    boost_second_moments,
    boosted_moments,
    divergence_audit,
    reference_boosted_tensor,
    theta_from_boosted_fields,
    verify_equivalence,
)
from casimir_boost.core import (
    AffineF,
    BoostSpec,
    CavityConfig,
    DomainError,
    SecondMomentMatrix,
    affine_matrix,
    const_part,
)
from casimir_boost.lorentz import rotation_about_z
from casimir_boost.oracle import pythagorean_boosts
from casimir_boost.rest_frame import energy_density, reference_rest_tensor

from conftest import PYTHAGOREAN_Z

HALF = Fraction(1, 2)


def _lift4(r):
    m = np.eye(4)
    m[1:, 1:] = r
    return m


class TestClosedForm:
    def test_three_fifths(self, unit_cavity):
        theta = reference_boosted_tensor(unit_cavity, Fraction(3, 5))
        assert theta.coefficients().tolist() == [
            [Fraction(-13, 4), 0, 0, Fraction(15, 4)],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [Fraction(15, 4), 0, 0, Fraction(-21, 4)],
        ]

    def test_four_fifths_zz(self, unit_cavity):
        assert reference_boosted_tensor(unit_cavity, Fraction(4, 5)).coefficients()[3, 3] == Fraction(-91, 9)

    def test_rest_limit(self, unit_cavity):
        assert reference_boosted_tensor(unit_cavity, 0) == reference_rest_tensor(unit_cavity)

    @given(st.fractions(min_value=Fraction(-99, 100), max_value=Fraction(99, 100)))
    def test_traceless(self, beta):
        assert reference_boosted_tensor(CavityConfig(1), beta).eta_trace() == AffineF(0, 0)

    def test_superluminal(self, unit_cavity):
        with pytest.raises(DomainError):
            reference_boosted_tensor(unit_cavity, 1)


class TestFieldPath:
    @pytest.mark.parametrize("beta", PYTHAGOREAN_Z)
    def test_exact_along_z(self, unit_cavity, beta):
        theta = theta_from_boosted_fields(Fraction(1, 7), unit_cavity, BoostSpec.along_z(beta))
        assert theta == reference_boosted_tensor(unit_cavity, beta)

    def test_correlators_three_fifths(self, unit_cavity):
        s = boosted_moments(HALF, unit_cavity, BoostSpec.along_z(Fraction(3, 5)))
        c0 = Fraction(1, 120)
        # E'_x = gamma (E_x - beta B_y): gamma^2 (EE_xx + beta^2 BB_yy)
        g2, b2 = Fraction(25, 16), Fraction(9, 25)
        assert s.ee[0, 0] == AffineF(g2 * (-c0 - b2 * c0), g2 * (1 - b2))
        assert s.ee[2, 2] == AffineF(c0, 1)
        assert s.bb[2, 2] == AffineF(c0, -1)
        # B'_y = gamma (B_y - beta E_x), so <E'_x B'_y> = -gamma^2 beta (EE_xx + BB_yy)
        assert s.eb[0, 1] == AffineF(Fraction(1, 64), 0)
        assert s.eb[1, 0] == AffineF(Fraction(-1, 64), 0)
        assert energy_density(s) * 120 == AffineF(Fraction(-13, 4), 0)

    @pytest.mark.parametrize("beta", [(Fraction(3, 5), 0, 0), (0, Fraction(5, 13), 0),
                                      (Fraction(3, 13), Fraction(4, 13), 0)])
    def test_in_plane_invariance_exact(self, unit_cavity, beta):
        theta = theta_from_boosted_fields(Fraction(1, 3), unit_cavity, BoostSpec(beta))
        assert theta == reference_rest_tensor(unit_cavity)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95), st.floats(0.01, 0.99))
    def test_in_plane_invariance_float(self, bx, by, z):
        if bx * bx + by * by >= 0.99:
            return
        config = CavityConfig(1.0)
        theta = theta_from_boosted_fields(z, config, BoostSpec((bx, by, 0.0)))
        diff = np.abs(theta.coefficients().astype(float) - np.diag([-1, 1, 1, -3]))
        assert diff.max() <= 1e-12

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0, math.pi), st.floats(0, 2 * math.pi), st.floats(0.05, 0.9))
    def test_rotation_reduction(self, polar, azimuth, speed):
        config = CavityConfig(1.0)
        base = (speed * math.sin(polar), 0.0, speed * math.cos(polar))
        r = rotation_about_z(azimuth)
        turned = tuple(r @ np.array(base))
        t_base = theta_from_boosted_fields(0.3, config, BoostSpec(base)).coefficients().astype(float)
        t_turn = theta_from_boosted_fields(0.3, config, BoostSpec(turned)).coefficients().astype(float)
        r4 = _lift4(r)
        np.testing.assert_allclose(t_turn, r4 @ t_base @ r4.T, atol=1e-10 * np.abs(t_base).max())

    @settings(max_examples=50, deadline=None)
    @given(st.fractions(min_value=0, max_value=Fraction(98, 100)),
           st.fractions(min_value=0, max_value=Fraction(98, 100)))
    def test_energy_grows_with_speed(self, b1, b2):
        lo, hi = sorted((b1, b2))
        config = CavityConfig(1)
        e_lo = reference_boosted_tensor(config, lo).coefficients()[0, 0]
        e_hi = reference_boosted_tensor(config, hi).coefficients()[0, 0]
        assert abs(e_hi) >= abs(e_lo)


class TestModeSumOracle:
    """S = sum_a v_a v_a^T boosts to sum_a (L v_a)(L v_a)^T; L v is built from cross products."""

    @settings(max_examples=30, deadline=None)
    @given(st.tuples(*[st.floats(-0.5, 0.5)] * 3), st.integers(0, 2**32 - 1))
    def test_congruence(self, beta, seed):
        rng = np.random.default_rng(seed)
        modes = rng.normal(size=(5, 6))
        s = modes.T @ modes
        s = (s + s.T) / 2
        moments = SecondMomentMatrix(affine_matrix([[(x, 0.0) for x in row] for row in s]))
        boosted = const_part(boost_second_moments(moments, BoostSpec(beta)).matrix).astype(float)

        b = np.array(beta)
        g = 1 / math.sqrt(1 - b @ b)
        k = g * g / (g + 1)
        out = np.zeros((6, 6))
        for v in modes:
            e, m = v[:3], v[3:]
            e2 = g * (e + np.cross(b, m)) - k * b * (b @ e)
            m2 = g * (m - np.cross(b, e)) - k * b * (b @ m)
            w = np.concatenate([e2, m2])
            out += np.outer(w, w)
        np.testing.assert_allclose(boosted, out, atol=1e-10 * np.abs(out).max())


class TestEquivalence:
    def test_exact_pythagorean(self, unit_cavity):
        cmp = verify_equivalence(Fraction(1, 5), unit_cavity, BoostSpec.along_z(Fraction(12, 13)))
        assert cmp.exact
        assert cmp.max_abs_diff == 0 and cmp.f_coeff_residual == 0 and cmp.closed_form_diff == 0

    def test_oblique_float(self, float_cavity):
        cmp = verify_equivalence(0.37, float_cavity, BoostSpec((0.3, -0.4, 0.5)))
        assert cmp.max_rel_diff <= 1e-10
        assert cmp.closed_form_diff is None

    def test_oblique_exact(self, unit_cavity):
        beta = (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))  # speed 3/5, gamma 5/4
        cmp = verify_equivalence(Fraction(1, 9), unit_cavity, BoostSpec(beta))
        assert cmp.exact and cmp.max_abs_diff == 0

    @pytest.mark.parametrize("beta, gamma", pythagorean_boosts(30))
    def test_divergence_audit(self, unit_cavity, beta, gamma):
        for sign in (1, -1):
            f = divergence_audit(Fraction(1, 20), unit_cavity, BoostSpec.along_z(sign * beta))
            assert all(x == 0 for x in f.ravel())
            assert BoostSpec.along_z(beta).gamma == gamma

    def test_upstream_correlators_do_diverge(self, unit_cavity):
        s = boosted_moments(Fraction(1, 20), unit_cavity, BoostSpec.along_z(Fraction(3, 5)))
        assert s.ee[0, 0].f_coeff != 0 and s.bb[0, 0].f_coeff != 0
