"""Peano-kernel error constants, error bounds and a convergence harness."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .classical import ShapeParams
from .errors import (
    CoincidentArguments,
    InvalidArgument,
    NegativeDerivativeBound,
    NonPositiveShapeParams,
    PointOutsideSubinterval,
    UnknownGenerator,
)
from .fractal import build_model, eval_orbit
from .mesh import InterpolationData, Mesh, estimate_derivatives, validate


def peano_kernel(mesh: Mesh, params: ShapeParams, i: int, tau: float, xhat: float) -> float:
    """Kernel of the local error functional on interval ``i``.

    The kernel is piecewise constant in ``tau``: one branch for
    ``x_i < tau < xhat`` and another for ``xhat < tau < x_{i+1}``.
    """
    lo, hi = mesh.knots[i], mesh.knots[i + 1]
    if not (lo <= tau <= hi and lo <= xhat <= hi):
        raise PointOutsideSubinterval(f"tau and x must lie in interval {i}")
    if tau == xhat:
        raise CoincidentArguments("kernel is undefined at tau == x")
    r, t = params.r[i], params.t[i]
    phi = (xhat - lo) / mesh.h[i]
    den = (1 - phi) * r + phi * t
    if tau < xhat:
        return (r * (1 - phi) * (1 - phi ** 2) + t * phi * (1 - phi) ** 2) / den
    return -(r * phi ** 2 * (1 - phi) + t * phi ** 2 * (2 - phi)) / den


def error_ratio(r: float, t: float, phi):
    """The function of ``phi`` whose maximum over [0, 1] is ``c_i``."""
    phi = np.asarray(phi, dtype=float)
    num = r * phi * (1 - phi) ** 2 * (1 + 2 * phi) + t * phi ** 2 * (1 - phi) * (3 - 2 * phi)
    return num / (r * (1 - phi) + t * phi)


def local_error_constant(r: float, t: float, grid: int = 10_000) -> float:
    """``c_i`` for shape parameters ``(r, t)``, accurate to about 1e-10.

    Dense grid search followed by golden-section refinement around the best
    grid point.  The objective vanishes at both ends, so the maximiser is
    interior.
    """
    if not (r > 0 and t > 0):
        raise NonPositiveShapeParams("shape parameters must be strictly positive")
    phis = np.linspace(0.0, 1.0, grid + 1)
    vals = error_ratio(r, t, phis)
    k = int(np.clip(np.argmax(vals), 1, grid - 1))
    best = float(vals[k])
    lo, hi = phis[k - 1], phis[k + 1]
    if vals[k] > vals[k - 1] and vals[k] > vals[k + 1]:
        res = optimize.minimize_scalar(lambda p: -error_ratio(r, t, p),
                                       bracket=(lo, phis[k], hi), method="golden",
                                       options={"xtol": 1e-12})
        if lo <= res.x <= hi:
            best = max(best, -float(res.fun))
    return best


def error_constants(params: ShapeParams) -> np.ndarray:
    return np.array([local_error_constant(r, t) for r, t in zip(params.r, params.t)])


def local_error_bound(mesh: Mesh, params: ShapeParams, i: int, phi_prime_sup: float) -> float:
    """``h_i c_i ||Phi'||`` bound on ``|Phi - f|`` over interval ``i``."""
    if phi_prime_sup < 0:
        raise NegativeDerivativeBound("derivative bound must be non-negative")
    return float(mesh.h[i] * local_error_constant(params.r[i], params.t[i]) * phi_prime_sup)


def data_constant(data: InterpolationData) -> float:
    """``|y| + max(|y_1|,|y_N|) + (h |d| + |I| max(|d_1|,|d_N|)) / 4``."""
    mesh = validate(data)
    y, d = data.values, data.derivatives
    return float(np.max(np.abs(y)) + max(abs(y[0]), abs(y[-1]))
                 + 0.25 * (np.max(mesh.h) * np.max(np.abs(d))
                           + mesh.total_length * max(abs(d[0]), abs(d[-1]))))


def total_error_bound(data: InterpolationData, params: ShapeParams, alpha,
                      phi_prime_sup: float) -> float:
    """Uniform bound on ``|Phi - f^alpha|`` for data generated by ``Phi``."""
    if phi_prime_sup < 0:
        raise NegativeDerivativeBound("derivative bound must be non-negative")
    mesh = validate(data)
    s = float(np.max(np.abs(alpha)))
    c = float(np.max(error_constants(params)))
    return s / (1 - s) * data_constant(data) + c * float(np.max(mesh.h)) * phi_prime_sup


@dataclass(frozen=True)
class ErrorReport:
    per_interval_constants: np.ndarray
    global_constant: float
    perturbation_term: float
    total_bound: float
    empirical_sup_error: float


@dataclass(frozen=True)
class Generator:
    name: str
    func: Callable
    deriv_sup: Callable[[float, float], float]
    domain: tuple


def _sin_deriv_sup(a, b):
    k = math.ceil(a / math.pi)
    if k * math.pi <= b:
        return 1.0
    return max(abs(math.cos(a)), abs(math.cos(b)))


GENERATORS = {
    "linear": Generator("linear", lambda x: 2.0 * x + 1.0, lambda a, b: 2.0, (0.0, 1.0)),
    "sin": Generator("sin", np.sin, _sin_deriv_sup, (0.0, math.pi)),
    "exp": Generator("exp", np.exp, lambda a, b: math.exp(b), (0.0, 1.0)),
    "square": Generator("square", lambda x: x * x,
                        lambda a, b: 2.0 * max(abs(a), abs(b)), (-1.0, 1.0)),
}


def get_generator(name: str) -> Generator:
    try:
        return GENERATORS[name]
    except KeyError:
        raise UnknownGenerator(
            f"unknown generator {name!r}; choose from {', '.join(sorted(GENERATORS))}") from None


def _orbit_depth(n: int, per_interval: int) -> int:
    depth = 1
    while n * (n - 1) ** (depth - 1) < per_interval:
        depth += 1
    return depth


def error_report(gen: Generator, domain, n: int, kappa: float,
                 per_interval: int = 1000) -> tuple[ErrorReport, float]:
    """Build the fractal spline of ``gen`` on ``n`` uniform knots and measure it.

    Returns the report and the mesh size ``h``.
    """
    a, b = domain
    x = np.linspace(a, b, n)
    y = gen.func(x)
    data = InterpolationData(x, y)
    data = data.with_derivatives(estimate_derivatives(data))
    mesh = validate(data)
    params = ShapeParams.uniform(mesh.n_intervals)
    alpha = kappa * mesh.a
    model = build_model(data, params, alpha)
    xs, vs = eval_orbit(model, _orbit_depth(n, per_interval))
    err = float(np.max(np.abs(gen.func(xs) - vs)))
    consts = error_constants(params)
    dsup = gen.deriv_sup(a, b)
    s = float(np.max(np.abs(alpha)))
    pert = s / (1 - s) * data_constant(data)
    total = pert + float(np.max(consts)) * float(np.max(mesh.h)) * dsup
    return ErrorReport(consts, float(np.max(consts)), pert, total, err), float(np.max(mesh.h))


@dataclass(frozen=True)
class ConvergenceResult:
    generator: str
    kappa: float
    sizes: tuple
    h: np.ndarray
    errors: np.ndarray
    bounds: np.ndarray
    order: float

    @property
    def exact(self) -> bool:
        return math.isinf(self.order)

    def table(self) -> str:
        lines = [f"{'N':>6} {'h':>12} {'sup error':>14} {'bound':>14}"]
        for n, h, e, bd in zip(self.sizes, self.h, self.errors, self.bounds):
            lines.append(f"{n:>6d} {h:>12.6g} {e:>14.6e} {bd:>14.6e}")
        order = "exact" if self.exact else f"{self.order:.4f}"
        lines.append(f"empirical order: {order}")
        return "\n".join(lines)


# errors this small count as exact reproduction; the slope is then meaningless
EXACT_ERROR = 1e-10


def convergence_experiment(generator: str, sizes: Sequence[int], kappa: float = 0.5,
                           domain=None, per_interval: int = 1000) -> ConvergenceResult:
    """Sup errors on successively refined uniform meshes and the fitted order.

    Scaling factors are tied to the mesh by ``alpha_i = kappa * a_i``.  The
    order is the least-squares slope of ``log(error)`` against ``log(h)``;
    it is reported as ``inf`` when every error is at round-off level.
    """
    gen = get_generator(generator)
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2:
        raise InvalidArgument("need at least two mesh sizes to estimate an order")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InvalidArgument("sizes must be strictly increasing")
    if not 0 <= kappa < 1:
        raise InvalidArgument("kappa must lie in [0, 1)")
    domain = gen.domain if domain is None else tuple(domain)
    hs, errs, bounds = [], [], []
    for n in sizes:
        rep, h = error_report(gen, domain, n, kappa, per_interval)
        hs.append(h)
        errs.append(rep.empirical_sup_error)
        bounds.append(rep.total_bound)
    hs, errs = np.array(hs), np.array(errs)
    if np.all(errs <= EXACT_ERROR):
        order = math.inf
    else:
        order = float(np.polyfit(np.log(hs), np.log(np.maximum(errs, 1e-300)), 1)[0])
    return ConvergenceResult(gen.name, kappa, sizes, hs, errs, np.array(bounds), order)
