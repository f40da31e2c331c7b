import numpy as np
import pytest

from fractal_spline import (
    BoundPiece,
    BoundSpec,
    InterpolationData,
    ShapeParams,
    estimate_derivatives,
)

KNOTS = [0.0, 3.0, 7.0, 10.0, 15.0]
VALUES = [18.0, 10.0, 12.0, 9.0, 20.0]
SLOPES = [-4.02, -1.31, -0.36, 0.2, 4.2]
BOUND_AT_KNOTS = [12.0, 4.0, 10.0, 4.0, 11.0]  # polygonal bound at the knots

# (alpha, r, t) parameter rows for the polygonal and quadratic examples
POLYGON_ROWS = {
    "a": ([0.010, 0.020, 0.030, 0.333], [1, 1, 1, 1], [3.35, 1, 1, 1]),
    "b": ([0.027, 0.027, 0.027, 0.024], [1, 1, 1, 1], [3.35, 1, 1, 1]),
    "c": ([0, 0, 0, 0], [1, 1, 1, 1], [3.35, 1, 1, 1]),
}
QUADRATIC_ROWS = {
    "a": ([0.012, 0.013, 0.040, 0.005], [9, 1, 0.01, 11], [10, 200, 0.0001, 8]),
    "b": ([0.040, 0.039, 0.025, 0.034], [9, 1, 0.01, 11], [10, 200, 0.0001, 8]),
    "c": ([0.012, 0.013, 0.040, 0.005], [19, 11, 0.001, 10], [12, 210, 0.00001, 7]),
}


def quadratic_with_bad_piece() -> BoundSpec:
    # pieces (x^2-7x+20)/2, ((x-3)^2-(x-3)+8)/2, (-(x-7)^2+21(x-7)+60)/6,
    # (87(x-10)^2-375(x-10)+200)/50 as (left value, right value, left slope)
    return BoundSpec("above", (
        BoundPiece("quadratic", 10.0, 4.0, -3.5),
        BoundPiece("quadratic", 4.0, 10.0, -0.5),
        BoundPiece("quadratic", 10.0, 19.0, 3.5),
        BoundPiece("quadratic", 4.0, 10.0, -7.5),
    ))


@pytest.fixture
def example():
    """Five-point example with slopes rounded to two decimals."""
    return InterpolationData(KNOTS, VALUES, SLOPES)


@pytest.fixture
def example_amm():
    d = InterpolationData(KNOTS, VALUES)
    return d.with_derivatives(estimate_derivatives(d))


@pytest.fixture
def polygon():
    return BoundSpec.polygonal(BOUND_AT_KNOTS)


@pytest.fixture
def unit_params():
    return ShapeParams.uniform(4)


def random_data(rng, n=None, scale=10.0):
    n = n or int(rng.integers(3, 9))
    x = np.cumsum(rng.uniform(0.2, 3.0, n)) - 1.0
    y = rng.uniform(-scale, scale, n)
    d = rng.uniform(-scale / 2, scale / 2, n)
    return InterpolationData(x, y, d)


def random_params(rng, n_intervals):
    return ShapeParams(rng.uniform(0.1, 10.0, n_intervals), rng.uniform(0.1, 10.0, n_intervals))
