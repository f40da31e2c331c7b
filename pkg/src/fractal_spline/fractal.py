"""Rational cubic fractal splines and their evaluation.

The fractal spline ``g = f^alpha`` is the fixed point of the functional
equation

    g(L_i(x)) = alpha_i g(x) + q_i(x),    x in I,

where ``q_i(x) = f(L_i(x)) - alpha_i b_i(x)``, ``f`` is the classical rational
cubic spline and ``b_i`` the base function of interval ``i``.  For the
rational base functions ``q_i`` is the ratio ``P_i*(theta) / Q_i*(theta)`` of a
cubic and a linear polynomial in ``theta = (x - x_1) / |I|``.

Two evaluators are provided:

* :func:`eval_orbit` pushes the exact knot pairs forward through the maps
  ``w_i(x, v) = (L_i(x), alpha_i v + q_i(x))``.  Every emitted pair lies on
  the graph, but only at mesh-determined abscissae.
* :func:`eval_point` unrolls the functional equation along the pre-images of
  an arbitrary abscissa and stops once the geometric tail is certified below
  a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classical import (
    ShapeParams,
    chord_slope_data,
    eval_local,
    numerator_coefficients,
    sup_bound_classical,
)
from .errors import (
    DepthTooLarge,
    InvalidArgument,
    LengthMismatch,
    MissingDerivatives,
    NonPositiveAlpha,
    NonPositiveBump,
    NonPositiveTolerance,
    PointOutsideDomain,
    ScalingOutOfRange,
)
from .mesh import InterpolationData, Mesh, validate

HERMITE = "hermite"
VALUES_ONLY = "values-only"
RATIONAL = "rational"
BUMP = "classical-minus-bump"

MAX_ORBIT_POINTS = 5_000_000
MAX_EXPANSION_STEPS = 100_000


@dataclass(frozen=True)
class BaseFunctionFamily:
    """Per-interval base functions ``b_i``.

    ``rational``: ``b_i`` is the rational cubic in the global variable with
    coefficients ``coefficients[i]``.  ``classical-minus-bump``:
    ``b_i = f - bumps[i] * bump(x)`` with a quartic bump vanishing to first
    order at both ends of the domain.
    """

    kind: str
    coefficients: Optional[np.ndarray] = None
    bumps: Optional[np.ndarray] = None


@dataclass(frozen=True)
class FractalSplineModel:
    data: InterpolationData
    mesh: Mesh
    params: ShapeParams
    alpha: np.ndarray
    bases: BaseFunctionFamily
    mode: str
    classical_coefficients: np.ndarray
    offset_coefficients: Optional[np.ndarray]
    offset_sup: float

    @property
    def alpha_sup(self) -> float:
        return float(np.max(np.abs(self.alpha)))

    @property
    def sup_bound(self) -> float:
        """A-priori bound on ``sup |f^alpha|``."""
        return self.offset_sup / (1.0 - self.alpha_sup)

    def classical(self, x):
        """The classical spline ``f`` (the ``alpha = 0`` member)."""
        x = np.asarray(x, dtype=float)
        i = self.mesh.locate(x)
        return eval_local(self.classical_coefficients, self.params, i, self.mesh.local_phi(i, x))

    def base(self, i: int, x):
        """Base function ``b_i`` at global abscissae ``x``."""
        x = np.asarray(x, dtype=float)
        if self.bases.kind == RATIONAL:
            th = self.mesh.theta(x)
            c = self.bases.coefficients[i]
            num = c[0] * (1 - th) ** 3 + c[1] * th * (1 - th) ** 2 + c[2] * th ** 2 * (1 - th) + c[3] * th ** 3
            return num / ((1 - th) * self.params.r[i] + th * self.params.t[i])
        return self.classical(x) - self.bases.bumps[i] * bump(self.mesh, x)

    def offset(self, i, theta):
        """``q_i`` at the pre-image with global parameter ``theta``.

        ``i`` and ``theta`` broadcast together.
        """
        theta = np.asarray(theta, dtype=float)
        i = np.broadcast_to(np.asarray(i), theta.shape)
        if self.bases.kind == RATIONAL:
            return eval_local(self.offset_coefficients, self.params, i, theta)
        # f(L_i(x)) is the classical spline at local parameter theta on interval i
        m = self.mesh
        x_pre = m.knots[0] * (1.0 - theta) + m.knots[-1] * theta
        f_img = eval_local(self.classical_coefficients, self.params, i, theta)
        a = self.alpha[i]
        return f_img - a * self.classical(x_pre) + a * self.bases.bumps[i] * bump(m, x_pre)


def bump(mesh: Mesh, x):
    """Quartic ``[(x - x_1)(x_N - x)]^2 / (|I|/2)^4``; peak value 1 at the midpoint."""
    x = np.asarray(x, dtype=float)
    half = mesh.total_length / 2.0
    return ((x - mesh.knots[0]) * (mesh.knots[-1] - x)) ** 2 / half ** 4


def _check_alpha(alpha, mesh: Mesh) -> np.ndarray:
    alpha = np.array(alpha, dtype=float)
    if alpha.shape != (mesh.n_intervals,):
        raise LengthMismatch(f"{alpha.size} scaling factors for {mesh.n_intervals} intervals")
    bad = np.flatnonzero(~(np.abs(alpha) < mesh.a))
    if bad.size:
        i = int(bad[0])
        raise ScalingOutOfRange(
            f"|alpha[{i}]| = {abs(alpha[i]):.6g} is not below a[{i}] = {mesh.a[i]:.6g}")
    alpha.setflags(write=False)
    return alpha


def _interpolated_data(data: InterpolationData, mode: str) -> InterpolationData:
    if mode == HERMITE:
        if data.derivatives is None:
            raise MissingDerivatives("hermite mode needs derivative values at the knots")
        return data
    if mode == VALUES_ONLY:
        return chord_slope_data(data)
    raise InvalidArgument(f"unknown mode {mode!r}")


def _rational_base_coefficients(mesh: Mesh, data: InterpolationData,
                                params: ShapeParams) -> np.ndarray:
    y, d = data.values, data.derivatives
    r, t, span = params.r, params.t, mesh.total_length
    return np.column_stack([
        r * y[0],
        (2 * r + t) * y[0] + r * d[0] * span,
        (r + 2 * t) * y[-1] - t * d[-1] * span,
        t * y[-1] * np.ones_like(r),
    ])


def _ratio_sup(coeffs: np.ndarray, params: ShapeParams) -> float:
    # With the denominator elevated to (r, (2r+t)/3, (r+2t)/3, t) in the
    # normalised Bernstein basis, P/Q is a convex combination of the
    # coefficient ratios, so their max modulus bounds |P/Q| on [0, 1].
    r, t = params.r, params.t
    den = np.column_stack([r, 2 * r + t, r + 2 * t, t])
    return float(np.max(np.abs(coeffs / den)))


def build_model(data: InterpolationData, params: ShapeParams, alpha,
                mode: str = HERMITE, base_kind: str = RATIONAL,
                bumps=None) -> FractalSplineModel:
    """Assemble a fractal spline.

    In ``values-only`` mode ``data`` holds ``N+1`` points; the first ``N`` are
    interpolated and the chord slopes stand in for the derivatives.
    """
    idata = _interpolated_data(data, mode)
    mesh = validate(idata)
    params.check_against(mesh)
    alpha = _check_alpha(alpha, mesh)
    fcoef = numerator_coefficients(mesh, idata, params)
    if base_kind == RATIONAL:
        bcoef = _rational_base_coefficients(mesh, idata, params)
        ocoef = fcoef - alpha[:, None] * bcoef
        bases = BaseFunctionFamily(RATIONAL, coefficients=bcoef)
        offset_sup = _ratio_sup(ocoef, params)
    elif base_kind == BUMP:
        if bumps is None:
            raise InvalidArgument("bump base functions need bump amplitudes")
        bumps = np.broadcast_to(np.asarray(bumps, dtype=float), (mesh.n_intervals,)).copy()
        if not np.all(bumps > 0):
            raise NonPositiveBump("bump amplitudes must be strictly positive")
        bumps.setflags(write=False)
        ocoef = None
        bases = BaseFunctionFamily(BUMP, bumps=bumps)
        fsup = sup_bound_classical(idata, params)
        offset_sup = float(np.max(fsup * (1 + np.abs(alpha)) + np.abs(alpha) * bumps))
    else:
        raise InvalidArgument(f"unknown base function kind {base_kind!r}")
    for arr in (fcoef, ocoef):
        if arr is not None:
            arr.setflags(write=False)
    return FractalSplineModel(
        data=idata, mesh=mesh, params=params, alpha=alpha, bases=bases, mode=mode,
        classical_coefficients=fcoef, offset_coefficients=ocoef, offset_sup=offset_sup)


def base_function_strategy(data: InterpolationData, params: ShapeParams, alpha,
                           bumps) -> FractalSplineModel:
    """Fractal spline with ``b_i = f - bump_i``, so that ``f^alpha >= f``.

    Requires ``0 < alpha_i < a_i``.  Any constraint of the form ``f >= p``
    satisfied by the classical spline carries over to ``f^alpha``.
    """
    mesh = validate(data)
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0):
        raise NonPositiveAlpha("the bump strategy needs strictly positive scaling factors")
    bumps = np.broadcast_to(np.asarray(bumps, dtype=float), (mesh.n_intervals,))
    if np.any(bumps <= 0):
        raise NonPositiveBump("bump amplitudes must be strictly positive")
    return build_model(data, params, alpha, HERMITE, BUMP, bumps)


def eval_orbit(model: FractalSplineModel, depth: int,
               max_points: int = MAX_ORBIT_POINTS):
    """Exact graph points after ``depth`` applications of the IFS maps.

    Returns ``(x, values)`` sorted by ``x`` with duplicate abscissae removed.
    """
    if depth < 0:
        raise InvalidArgument("depth must be non-negative")
    m = model.mesh
    n_maps = m.n_intervals
    if m.n * float(n_maps) ** depth > max_points:
        raise DepthTooLarge(f"depth {depth} would produce about "
                            f"{m.n * n_maps ** depth:.3g} points (cap {max_points})")
    xs = m.knots.copy()
    vs = model.data.values.copy()
    for _ in range(depth):
        th = m.theta(xs)
        new_x = [xs]
        new_v = [vs]
        for i in range(n_maps):
            new_x.append(m.knots[i] * (1.0 - th) + m.knots[i + 1] * th)
            new_v.append(model.alpha[i] * vs + model.offset(i, th))
        # previous level first: np.unique keeps the first occurrence, so knot values stay exact
        xs, keep = np.unique(np.concatenate(new_x), return_index=True)
        vs = np.concatenate(new_v)[keep]
    return xs, vs


def default_tolerance(model: FractalSplineModel) -> float:
    return 1e-10 * (1.0 + float(np.max(np.abs(model.data.values))))


def eval_points(model: FractalSplineModel, xhat, tol: Optional[float] = None):
    """Vectorised :func:`eval_point`; returns ``(values, tail_bounds)``."""
    if tol is None:
        tol = default_tolerance(model)
    if not tol > 0:
        raise NonPositiveTolerance("tolerance must be positive")
    m = model.mesh
    x = np.array(xhat, dtype=float, ndmin=1)
    shape = np.shape(xhat)
    x = x.ravel()
    if np.any(~((x >= m.knots[0]) & (x <= m.knots[-1]))):
        raise PointOutsideDomain(f"point(s) outside [{m.knots[0]}, {m.knots[-1]}]")
    B = model.sup_bound
    value = np.zeros_like(x)
    coeff = np.ones_like(x)
    tail = np.zeros_like(x)
    active = np.arange(x.size)
    for _ in range(MAX_EXPANSION_STEPS):
        if active.size == 0:
            break
        xa = x[active]
        k = np.searchsorted(m.knots, xa)
        k = np.minimum(k, m.n - 1)
        at_knot = m.knots[k] == xa
        if np.any(at_knot):
            done = active[at_knot]
            value[done] += coeff[done] * model.data.values[k[at_knot]]
            active = active[~at_knot]
            xa = xa[~at_knot]
        if active.size == 0:
            break
        i = m.locate(xa)
        phi = (xa - m.knots[i]) / m.h[i]
        value[active] += coeff[active] * model.offset(i, phi)
        coeff[active] *= model.alpha[i]
        x[active] = m.knots[0] * (1.0 - phi) + m.knots[-1] * phi
        remaining = np.abs(coeff[active]) * B
        finished = remaining <= tol
        tail[active[finished]] = remaining[finished]
        active = active[~finished]
    else:
        raise RuntimeError("address expansion did not terminate")
    return value.reshape(shape), tail.reshape(shape)


def eval_point(model: FractalSplineModel, xhat: float, tol: Optional[float] = None):
    """Value of ``f^alpha`` at ``xhat`` and a certified bound on the truncation error."""
    v, t = eval_points(model, float(xhat), tol)
    return float(v), float(t)


def sample_uniform(model: FractalSplineModel, n_points: int, tol: Optional[float] = None):
    if n_points < 2:
        raise InvalidArgument("need at least two sample points")
    m = model.mesh
    xs = np.linspace(m.knots[0], m.knots[-1], n_points)
    xs[-1] = m.knots[-1]
    vs, _ = eval_points(model, xs, tol)
    return xs, vs


def base_sup_bound(model: FractalSplineModel) -> float:
    """Bound on ``max_i ||b_i||_inf``."""
    d = model.data
    if model.bases.kind == RATIONAL:
        return float(max(abs(d.values[0]), abs(d.values[-1]))
                     + model.mesh.total_length / 4.0
                     * max(abs(d.derivatives[0]), abs(d.derivatives[-1])))
    return sup_bound_classical(d, model.params) + float(np.max(model.bases.bumps))


def perturbation_bound(model: FractalSplineModel) -> float:
    """Bound on ``||f - f^alpha||_inf`` from the contraction argument."""
    s = model.alpha_sup
    return s / (1.0 - s) * (sup_bound_classical(model.data, model.params) + base_sup_bound(model))
