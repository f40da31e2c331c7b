from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractal_spline import InterpolationData, estimate_derivatives, validate
from fractal_spline.errors import (
    IndexOutOfRange,
    LengthMismatch,
    NonIncreasingKnots,
    PointOutsideDomain,
    PointOutsideSubinterval,
    TooFewPoints,
)

from .conftest import KNOTS, VALUES


def amm_fraction(x, y):
    """Arithmetic mean derivative estimates in exact rational arithmetic."""
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    h = [b - a for a, b in zip(x, x[1:])]
    s = [(y[i + 1] - y[i]) / h[i] for i in range(len(h))]
    d = [s[0] + (s[0] - s[1]) * h[0] / (h[0] + h[1])]
    for i in range(1, len(x) - 1):
        d.append((h[i] * s[i - 1] + h[i - 1] * s[i]) / (h[i - 1] + h[i]))
    d.append(s[-1] + (s[-1] - s[-2]) * h[-1] / (h[-2] + h[-1]))
    return d


def test_mesh_quantities_example_data():
    m = validate(InterpolationData(KNOTS, VALUES))
    np.testing.assert_allclose(m.h, [3, 4, 3, 5])
    np.testing.assert_allclose(m.a, [0.2, 4 / 15, 0.2, 1 / 3], rtol=1e-15)
    np.testing.assert_allclose(m.slopes, [-8 / 3, 0.5, -1, 11 / 5], rtol=1e-15)
    assert m.total_length == 15


def test_uniform_symmetric_mesh():
    m = validate(InterpolationData([0, 1, 2], [0, 0, 0]))
    np.testing.assert_array_equal(m.h, [1, 1])
    np.testing.assert_array_equal(m.a, [0.5, 0.5])
    np.testing.assert_array_equal(m.slopes, [0, 0])


@pytest.mark.parametrize("x, y, err", [
    ([0, 1, 1], [0, 0, 0], NonIncreasingKnots),
    ([0, 2, 1], [0, 0, 0], NonIncreasingKnots),
    ([0, 1], [0, 0], TooFewPoints),
    ([0, 1, 2], [0, 0], LengthMismatch),
])
def test_validate_errors(x, y, err):
    with pytest.raises(err):
        validate(InterpolationData(x, y))


def test_derivative_length_mismatch():
    with pytest.raises(LengthMismatch):
        validate(InterpolationData([0, 1, 2], [0, 1, 2], [1, 1]))


def test_forward_map_examples():
    m = validate(InterpolationData(KNOTS, VALUES))
    assert m.forward_map(0, 0.0) == 0.0
    assert m.forward_map(3, 15.0) == 15.0
    assert m.forward_map(1, 7.5) == pytest.approx(5.0, abs=1e-14)
    for i in range(4):
        assert m.forward_map(i, m.x_first) == m.knots[i]
        assert m.forward_map(i, m.x_last) == m.knots[i + 1]
        # a_i x + e_i form agrees
        xs = np.linspace(0, 15, 7)
        np.testing.assert_allclose(m.forward_map(i, xs), m.a[i] * xs + m.e[i], atol=1e-13)


def test_inverse_map_examples():
    m = validate(InterpolationData(KNOTS, VALUES))
    for i in range(4):
        assert m.inverse_map(i, m.knots[i]) == 0.0
        assert m.inverse_map(i, m.knots[i + 1]) == 15.0
    assert m.inverse_map(0, 1.5) == pytest.approx(7.5, abs=1e-13)


def test_map_errors():
    m = validate(InterpolationData(KNOTS, VALUES))
    with pytest.raises(IndexOutOfRange):
        m.forward_map(4, 1.0)
    with pytest.raises(PointOutsideDomain):
        m.forward_map(0, 15.5)
    with pytest.raises(PointOutsideSubinterval):
        m.inverse_map(0, 3.5)
    with pytest.raises(PointOutsideDomain):
        m.locate(-0.1)


def test_locate_convention():
    m = validate(InterpolationData(KNOTS, VALUES))
    assert m.locate(0.0) == 0
    assert m.locate(15.0) == 3
    assert m.locate(3.0) == 1
    assert m.locate(2.999) == 0
    np.testing.assert_array_equal(m.locate([0, 3, 7, 10, 15]), [0, 1, 2, 3, 3])


def test_amm_example_data():
    d = estimate_derivatives(InterpolationData(KNOTS, VALUES))
    exact = [float(v) for v in amm_fraction(KNOTS, VALUES)]
    np.testing.assert_allclose(d, exact, rtol=1e-14)
    np.testing.assert_allclose(d, [-4.0238, -1.3095, -0.3571, 0.2, 4.2], atol=5e-5)


def test_amm_linear_and_constant():
    x = [0.0, 0.5, 2.0, 2.2, 5.0]
    np.testing.assert_allclose(
        estimate_derivatives(InterpolationData(x, [2 * v + 1 for v in x])), 2.0, rtol=1e-13)
    np.testing.assert_array_equal(estimate_derivatives(InterpolationData(x, [3.0] * 5)), 0.0)


knots_strategy = st.lists(st.floats(0.05, 5.0), min_size=2, max_size=8).map(
    lambda hs: np.concatenate([[0.0], np.cumsum(hs)]) - 1.7)


@settings(max_examples=60, deadline=None)
@given(knots_strategy, st.floats(0, 1), st.floats(-3, 3), st.floats(0.1, 4))
def test_parameterisation_and_round_trip(x, u, m, b):
    mesh = validate(InterpolationData(x, np.zeros_like(x)))
    assert abs(mesh.a.sum() - 1.0) < 1e-13
    assert np.all((mesh.a > 0) & (mesh.a < 1))
    pt = mesh.x_first + u * mesh.total_length
    pt = min(max(pt, mesh.x_first), mesh.x_last)
    for i in range(mesh.n_intervals):
        xhat = mesh.forward_map(i, pt)
        assert abs(mesh.inverse_map(i, xhat) - pt) <= 1e-13 * (1 + abs(pt)) * 10
        # theta of the pre-image equals the local parameter
        assert abs(mesh.theta(mesh.inverse_map(i, xhat)) - mesh.local_phi(i, xhat)) < 1e-13
    # amm reproduces affine data
    y = m * x + b
    np.testing.assert_allclose(estimate_derivatives(InterpolationData(x, y)), m, atol=1e-9)
