"""Non-recursive C1 rational cubic spline with linear denominator.

On interval ``i`` with local variable ``phi = (x - x_i) / h_i`` the spline is
``R_i(phi) / S_i(phi)`` where ``S_i = (1 - phi) r_i + phi t_i`` and ``R_i`` is
a cubic written in the (unnormalised) Bernstein-like basis
``(1-phi)^3, phi (1-phi)^2, phi^2 (1-phi), phi^3``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    LengthMismatch,
    MissingDerivatives,
    NonPositiveShapeParams,
    TooFewPoints,
)
from .mesh import InterpolationData, Mesh, validate


@dataclass(frozen=True)
class ShapeParams:
    r: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        t = np.array(self.t, dtype=float)
        if r.shape != t.shape or r.ndim != 1:
            raise LengthMismatch("shape parameters r and t must be equal-length vectors")
        if not (np.all(r > 0) and np.all(t > 0)):
            raise NonPositiveShapeParams("shape parameters must be strictly positive")
        r.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "t", t)

    @classmethod
    def uniform(cls, n_intervals: int, r: float = 1.0, t: float = 1.0):
        return cls(np.full(n_intervals, r), np.full(n_intervals, t))

    def check_against(self, mesh: Mesh):
        if len(self.r) != mesh.n_intervals:
            raise LengthMismatch(
                f"{len(self.r)} shape parameter pairs for {mesh.n_intervals} intervals")


@dataclass(frozen=True)
class CubicBernstein:
    """Cubic ``b0 (1-u)^3 + b1 u(1-u)^2 + b2 u^2(1-u) + b3 u^3`` on [0, 1]."""

    coefficients: tuple

    def __call__(self, u):
        return cubic_form(self.coefficients, u)

    def __sub__(self, other: "CubicBernstein") -> "CubicBernstein":
        return CubicBernstein(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __add__(self, other: "CubicBernstein") -> "CubicBernstein":
        return CubicBernstein(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def scaled(self, c: float) -> "CubicBernstein":
        return CubicBernstein(tuple(c * b for b in self.coefficients))


def cubic_form(coefficients, u):
    b0, b1, b2, b3 = coefficients
    u = np.asarray(u, dtype=float)
    v = 1.0 - u
    return b0 * v ** 3 + b1 * u * v ** 2 + b2 * u ** 2 * v + b3 * u ** 3


def degree_elevate_linear(u0: float, u1: float) -> CubicBernstein:
    """Write ``u0 (1-u) + u1 u`` in the cubic basis."""
    return CubicBernstein((u0, 2 * u0 + u1, u0 + 2 * u1, u1))


def linear_times_denominator(p0: float, p1: float, r: float, t: float) -> CubicBernstein:
    """Cubic coefficients of ``[p0 (1-u) + p1 u] * [(1-u) r + u t]``."""
    return CubicBernstein((r * p0, r * (p0 + p1) + p0 * t, r * p1 + t * (p0 + p1), t * p1))


def quadratic_times_denominator(q0: float, q1: float, q2: float,
                                r: float, t: float) -> CubicBernstein:
    """Cubic coefficients of ``[q0 (1-u)^2 + q1 u(1-u) + q2 u^2] * [(1-u) r + u t]``."""
    return CubicBernstein((r * q0, r * q1 + t * q0, r * q2 + t * q1, t * q2))


def numerator_coefficients(mesh: Mesh, data: InterpolationData, params: ShapeParams) -> np.ndarray:
    """Coefficients of ``R_i`` for every interval, shape ``(N-1, 4)``."""
    y, d = data.values, data.derivatives
    r, t, h = params.r, params.t, mesh.h
    return np.column_stack([
        r * y[:-1],
        (2 * r + t) * y[:-1] + r * h * d[:-1],
        (r + 2 * t) * y[1:] - t * h * d[1:],
        t * y[1:],
    ])


def _prepare(data: InterpolationData, params: ShapeParams, min_points: int = 2) -> Mesh:
    mesh = validate(data, min_points=min_points)
    if data.derivatives is None:
        raise MissingDerivatives("the Hermite form needs derivative values at the knots")
    params.check_against(mesh)
    return mesh


def eval_local(coeffs: np.ndarray, params: ShapeParams, i, phi):
    """Evaluate interval ``i`` of a spline at local parameter ``phi``."""
    c = coeffs[i]
    num = cubic_form((c[..., 0], c[..., 1], c[..., 2], c[..., 3]), phi)
    den = (1.0 - phi) * params.r[i] + phi * params.t[i]
    return num / den


def eval_classical(data: InterpolationData, params: ShapeParams, xhat):
    mesh = _prepare(data, params)
    xhat = np.asarray(xhat, dtype=float)
    i = mesh.locate(xhat)
    phi = mesh.local_phi(i, xhat)
    out = eval_local(numerator_coefficients(mesh, data, params), params, i, phi)
    return float(out) if np.ndim(out) == 0 else out


def chord_slope_data(data: InterpolationData, min_points: int = 3) -> InterpolationData:
    """Reduce ``N+1`` points to the ``N`` interpolated ones with ``d_i = Delta_i``."""
    if data.n < min_points + 1:
        raise TooFewPoints("values-only mode needs the interpolated points plus one extra")
    mesh = validate(InterpolationData(data.knots, data.values))
    return InterpolationData(data.knots[:-1], data.values[:-1], mesh.slopes)


def eval_classical_values_only(data: InterpolationData, params: ShapeParams, xhat):
    """Classical spline of the first ``N`` of ``N+1`` points, slopes from chords."""
    return eval_classical(chord_slope_data(data, min_points=2), params, xhat)


def sup_bound_classical(data: InterpolationData, params: ShapeParams) -> float:
    """A-priori bound ``|y|_inf + (h/4) |d|_inf`` on the sup norm of the spline."""
    mesh = _prepare(data, params)
    return float(np.max(np.abs(data.values))
                 + np.max(mesh.h) / 4.0 * np.max(np.abs(data.derivatives)))
