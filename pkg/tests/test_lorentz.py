import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_boost.core import METRIC, BoostSpec, CavityConfig, LorentzConditionError
from casimir_boost.lorentz import (
    Boost4,
    boost_matrix,
    field_boost_matrix,
    rotate_fields,
    rotation_about_z,
    tensor_boost,
)
from casimir_boost.rest_frame import reference_rest_tensor

velocity = st.tuples(*[st.floats(-0.57, 0.57)] * 3)


def _field_boost_by_vectors(beta, e, b):
    """Independent vector form of the field transformation, via numpy cross products."""
    beta = np.asarray(beta, float)
    g = 1 / math.sqrt(1 - beta @ beta)
    k = g * g / (g + 1)
    e2 = g * (e + np.cross(beta, b)) - k * beta * (beta @ e)
    b2 = g * (b - np.cross(beta, e)) - k * beta * (beta @ b)
    return e2, b2


class TestBoostMatrix:
    def test_pythagorean_entries(self):
        lam = boost_matrix(BoostSpec.along_z(Fraction(3, 5)))
        assert lam.is_exact
        expected = [
            [Fraction(5, 4), 0, 0, Fraction(-3, 4)],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [Fraction(-3, 4), 0, 0, Fraction(5, 4)],
        ]
        assert lam.matrix.tolist() == expected
        assert lam.metric_defect() == 0
        assert lam.det() == 1

    def test_identity_at_rest(self):
        assert boost_matrix(BoostSpec()).matrix.tolist() == np.eye(4, dtype=int).tolist()

    @settings(max_examples=300)
    @given(velocity)
    def test_lorentz_condition(self, beta):
        lam = boost_matrix(BoostSpec(beta))
        assert lam.satisfies_lorentz()
        assert abs(float(lam.det()) - 1) < 1e-12
        assert lam.to_float()[0, 0] >= 1

    @given(velocity)
    def test_inverse(self, beta):
        spec = BoostSpec(beta)
        back = BoostSpec(tuple(-b for b in beta))
        prod = (boost_matrix(spec) @ boost_matrix(back)).to_float()
        np.testing.assert_allclose(prod, np.eye(4), atol=1e-12)

    @given(st.floats(-2, 2), st.floats(-2, 2))
    def test_rapidity_composition(self, p1, p2):
        composed = boost_matrix(BoostSpec.from_rapidity(p1)) @ boost_matrix(BoostSpec.from_rapidity(p2))
        direct = boost_matrix(BoostSpec.from_rapidity(p1 + p2))
        scale = math.cosh(p1 + p2)
        np.testing.assert_allclose(composed.to_float(), direct.to_float(), atol=1e-12 * scale)

    def test_non_lorentz_rejected(self):
        bad = Boost4(np.diag([1, 2, 1, 1]).astype(object))
        with pytest.raises(LorentzConditionError):
            tensor_boost(reference_rest_tensor(CavityConfig(1)), bad)


class TestFieldBoost:
    def test_half_light_speed_rows(self):
        g = 2 / math.sqrt(3)
        m = field_boost_matrix(BoostSpec.along_z(Fraction(1, 2))).to_float()
        # E'_x = gamma E_x - gamma beta B_y ; B'_x = gamma B_x + gamma beta E_y
        np.testing.assert_allclose(m[0], [g, 0, 0, 0, -g / 2, 0], rtol=1e-15)
        np.testing.assert_allclose(m[3], [0, g / 2, 0, g, 0, 0], rtol=1e-15)
        np.testing.assert_allclose(m[2], [0, 0, 1, 0, 0, 0], atol=1e-15)

    @settings(max_examples=200)
    @given(velocity, st.lists(st.floats(-1, 1), min_size=6, max_size=6))
    def test_matches_vector_form(self, beta, fields):
        v = np.array(fields)
        m = field_boost_matrix(BoostSpec(beta)).to_float()
        e2, b2 = _field_boost_by_vectors(beta, v[:3], v[3:])
        np.testing.assert_allclose(m @ v, np.concatenate([e2, b2]), atol=1e-12)

    @given(velocity, st.lists(st.floats(-1, 1), min_size=6, max_size=6))
    def test_invariants(self, beta, fields):
        v = np.array(fields)
        w = field_boost_matrix(BoostSpec(beta)).to_float() @ v
        e, b, e2, b2 = v[:3], v[3:], w[:3], w[3:]
        assert e2 @ e2 - b2 @ b2 == pytest.approx(e @ e - b @ b, abs=1e-12)
        assert e2 @ b2 == pytest.approx(e @ b, abs=1e-12)

    @given(velocity)
    def test_inverse(self, beta):
        fwd = field_boost_matrix(BoostSpec(beta))
        back = field_boost_matrix(BoostSpec(tuple(-b for b in beta)))
        np.testing.assert_allclose((fwd @ back).to_float(), np.eye(6), atol=1e-12)

    def test_exact_inverse(self):
        fwd = field_boost_matrix(BoostSpec.along_z(Fraction(5, 13)))
        back = field_boost_matrix(BoostSpec.along_z(Fraction(-5, 13)))
        assert (fwd @ back).matrix.tolist() == np.eye(6, dtype=int).tolist()

    @given(st.floats(0, 2 * math.pi), st.floats(-0.9, 0.9))
    def test_rotation_covariance(self, angle, speed):
        r = rotation_about_z(angle)
        beta = np.array([speed, 0.0, 0.0])
        rotated = field_boost_matrix(BoostSpec(tuple(r @ beta))).to_float()
        rot = rotate_fields(angle).to_float()
        reduced = rot @ field_boost_matrix(BoostSpec(tuple(beta))).to_float() @ rot.T
        np.testing.assert_allclose(rotated, reduced, atol=1e-12)


def test_metric_constant():
    assert METRIC.tolist() == np.diag([-1, 1, 1, 1]).tolist()
