"""Interpolation data, mesh quantities and the affine maps of the IFS.

Interval indices are zero based throughout: interval ``i`` is
``[x[i], x[i+1]]`` for ``i = 0 .. N-2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    IndexOutOfRange,
    LengthMismatch,
    NonIncreasingKnots,
    PointOutsideDomain,
    PointOutsideSubinterval,
    TooFewPoints,
)


@dataclass(frozen=True)
class InterpolationData:
    """Knots, values and (optionally) derivative values at the knots."""

    knots: np.ndarray
    values: np.ndarray
    derivatives: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "knots", _as_vector(self.knots))
        object.__setattr__(self, "values", _as_vector(self.values))
        if self.derivatives is not None:
            object.__setattr__(self, "derivatives", _as_vector(self.derivatives))

    @property
    def n(self) -> int:
        return len(self.knots)

    def with_derivatives(self, derivatives) -> "InterpolationData":
        return InterpolationData(self.knots, self.values, derivatives)

    def negated(self) -> "InterpolationData":
        d = None if self.derivatives is None else -self.derivatives
        return InterpolationData(self.knots, -self.values, d)


def _as_vector(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise LengthMismatch("expected a one dimensional sequence")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Mesh:
    """Derived mesh quantities for a validated data set.

    ``a`` are the horizontal contraction ratios ``h_i / |I|`` and ``e`` the
    offsets, so that ``L_i(x) = a_i x + e_i`` maps ``[x_1, x_N]`` onto the
    i-th interval.
    """

    knots: np.ndarray
    h: np.ndarray
    a: np.ndarray
    e: np.ndarray
    slopes: np.ndarray
    total_length: float

    @property
    def n(self) -> int:
        return len(self.knots)

    @property
    def n_intervals(self) -> int:
        return len(self.h)

    @property
    def x_first(self) -> float:
        return float(self.knots[0])

    @property
    def x_last(self) -> float:
        return float(self.knots[-1])

    def _check_index(self, i):
        i = np.asarray(i)
        if np.any((i < 0) | (i >= self.n_intervals)):
            raise IndexOutOfRange(f"interval index {i} not in 0..{self.n_intervals - 1}")
        return i

    def _check_domain(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(~((x >= self.knots[0]) & (x <= self.knots[-1]))):
            raise PointOutsideDomain(
                f"point(s) outside [{self.knots[0]}, {self.knots[-1]}]")
        return x

    def theta(self, x):
        """Global parameter ``(x - x_1) / |I|``."""
        return (np.asarray(x, dtype=float) - self.knots[0]) / self.total_length

    def forward_map(self, i, x):
        """``L_i(x)``; exact at both ends of the domain."""
        i = self._check_index(i)
        x = self._check_domain(x)
        th = self.theta(x)
        # convex-combination form keeps L_i(x_1) = x_i and L_i(x_N) = x_{i+1} bitwise
        return self.knots[i] * (1.0 - th) + self.knots[i + 1] * th

    def inverse_map(self, i, xhat):
        i = self._check_index(i)
        xhat = np.asarray(xhat, dtype=float)
        lo, hi = self.knots[i], self.knots[i + 1]
        if np.any(~((xhat >= lo) & (xhat <= hi))):
            raise PointOutsideSubinterval(f"point(s) outside interval {i}")
        phi = (xhat - lo) / self.h[i]
        return self.knots[0] * (1.0 - phi) + self.knots[-1] * phi

    def local_phi(self, i, xhat):
        """Local parameter ``(xhat - x_i) / h_i`` on interval ``i``."""
        return (np.asarray(xhat, dtype=float) - self.knots[i]) / self.h[i]

    def locate(self, xhat):
        """Interval index containing ``xhat``.

        Intervals are left closed; the last one is closed on both ends.
        """
        xhat = self._check_domain(xhat)
        idx = np.searchsorted(self.knots, xhat, side="right") - 1
        idx = np.minimum(idx, self.n_intervals - 1)
        if idx.ndim == 0:
            return int(idx)
        return idx


def validate(data: InterpolationData, min_points: int = 3) -> Mesh:
    """Check the data and derive the mesh.

    ``min_points`` may be lowered to 2 for the classical (non-recursive)
    spline, which needs no IFS.
    """
    x, y = data.knots, data.values
    if len(x) != len(y):
        raise LengthMismatch(f"{len(x)} knots but {len(y)} values")
    if data.derivatives is not None and len(data.derivatives) != len(x):
        raise LengthMismatch(
            f"{len(x)} knots but {len(data.derivatives)} derivatives")
    if len(x) < min_points:
        raise TooFewPoints(f"need at least {min_points} points, got {len(x)}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise NonIncreasingKnots("non-finite knots or values")
    h = np.diff(x)
    if np.any(h <= 0):
        bad = int(np.argmin(h))
        raise NonIncreasingKnots(f"knots not strictly increasing at index {bad + 1}")
    total = float(x[-1] - x[0])
    a = h / total
    e = (x[-1] * x[:-1] - x[0] * x[1:]) / total
    slopes = np.diff(y) / h
    for arr in (h, a, e, slopes):
        arr.setflags(write=False)
    return Mesh(knots=x, h=h, a=a, e=e, slopes=slopes, total_length=total)


def estimate_derivatives(data: InterpolationData) -> np.ndarray:
    """Arithmetic mean method for the knot derivatives.

    Interior values are length weighted averages of the adjacent chord
    slopes; the end values extrapolate linearly from the first (last) two
    slopes.
    """
    mesh = validate(InterpolationData(data.knots, data.values))
    h, s = mesh.h, mesh.slopes
    d = np.empty(mesh.n)
    d[1:-1] = (h[1:] * s[:-1] + h[:-1] * s[1:]) / (h[:-1] + h[1:])
    d[0] = s[0] + (s[0] - s[1]) * h[0] / (h[0] + h[1])
    d[-1] = s[-1] + (s[-1] - s[-2]) * h[-1] / (h[-2] + h[-1])
    return d
