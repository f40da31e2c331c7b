"""Parameter selection so that a fractal spline lies above (or below) a bound.

The bound ``p`` is piecewise linear or piecewise quadratic with joints at the
knots.  Writing ``f^alpha - p >= K + f - p`` with ``K <= 0`` from the
perturbation estimate, the constraint reduces per interval to nonnegativity
of a cubic whose four Bernstein coefficients are

    r_i B_i,   r_i A_i + t_i B_i,   r_i C_i + t_i D_i,   t_i C_i

with ``B_i = y_i - p_i + K`` and ``C_i = y_{i+1} - p_{i+1} + K``.  Requiring
all four to be nonnegative is sufficient, not necessary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .classical import ShapeParams
from .error_analysis import data_constant
from .errors import (
    AlphaSupOutOfRange,
    BoundViolatedAtKnot,
    Infeasible,
    InvalidArgument,
    LengthMismatch,
    MissingDerivatives,
    NonPositiveBC,
    WrongBoundKind,
)
from .fractal import FractalSplineModel, eval_orbit
from .mesh import InterpolationData, Mesh, validate

ABOVE = "above"
BELOW = "below"
LINEAR = "linear"
QUADRATIC = "quadratic"


@dataclass(frozen=True)
class BoundPiece:
    """Bound on one interval.

    Linear: ``p_left (1-phi) + p_right phi``.  Quadratic:
    ``p_left (1-phi)^2 + (2 p_left + slope_left h) phi (1-phi) + p_right phi^2``
    where ``slope_left`` is the derivative at the left knot.
    """

    kind: str
    p_left: float
    p_right: float
    slope_left: Optional[float] = None

    def __post_init__(self):
        if self.kind not in (LINEAR, QUADRATIC):
            raise WrongBoundKind(f"unknown piece kind {self.kind!r}")
        if self.kind == QUADRATIC and self.slope_left is None:
            raise WrongBoundKind("quadratic pieces need slope_left")

    def middle(self, h: float) -> float:
        if self.kind == LINEAR:
            return self.p_left + self.p_right
        return 2 * self.p_left + self.slope_left * h

    def negated(self) -> "BoundPiece":
        slope = None if self.slope_left is None else -self.slope_left
        return BoundPiece(self.kind, -self.p_left, -self.p_right, slope)

    def shifted(self, delta: float) -> "BoundPiece":
        return replace(self, p_left=self.p_left + delta, p_right=self.p_right + delta)


@dataclass(frozen=True)
class BoundSpec:
    side: str
    pieces: tuple

    def __post_init__(self):
        if self.side not in (ABOVE, BELOW):
            raise InvalidArgument(f"side must be 'above' or 'below', got {self.side!r}")
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @classmethod
    def polygonal(cls, knot_values, side: str = ABOVE) -> "BoundSpec":
        v = [float(p) for p in knot_values]
        return cls(side, tuple(BoundPiece(LINEAR, a, b) for a, b in zip(v[:-1], v[1:])))

    @property
    def kind(self) -> str:
        kinds = {p.kind for p in self.pieces}
        return kinds.pop() if len(kinds) == 1 else "mixed"

    def check_against(self, mesh: Mesh):
        if len(self.pieces) != mesh.n_intervals:
            raise LengthMismatch(
                f"{len(self.pieces)} bound pieces for {mesh.n_intervals} intervals")

    def quadratic_coefficients(self, mesh: Mesh) -> np.ndarray:
        """Coefficients ``(q0, q1, q2)`` of each piece in ``(1-phi)^2, phi(1-phi), phi^2``."""
        self.check_against(mesh)
        return np.array([(p.p_left, p.middle(h), p.p_right)
                         for p, h in zip(self.pieces, mesh.h)])

    def evaluate(self, mesh: Mesh, x, from_left: bool = False):
        """Bound value at ``x``.

        At an interior knot the piece to the right is used, or the piece to
        the left with ``from_left``.
        """
        x = np.asarray(x, dtype=float)
        i = np.atleast_1d(mesh.locate(x))
        if from_left:
            at_knot = np.isin(np.atleast_1d(x), mesh.knots[1:-1])
            i = np.where(at_knot, i - 1, i)
        q = self.quadratic_coefficients(mesh)[i]
        phi = (np.atleast_1d(x) - mesh.knots[i]) / mesh.h[i]
        out = q[:, 0] * (1 - phi) ** 2 + q[:, 1] * phi * (1 - phi) + q[:, 2] * phi ** 2
        return out.reshape(x.shape)

    def negated(self) -> "BoundSpec":
        return BoundSpec(BELOW if self.side == ABOVE else ABOVE,
                         tuple(p.negated() for p in self.pieces))


def knot_gaps(data: InterpolationData, bound: BoundSpec) -> np.ndarray:
    """Side-signed gaps ``(y_i - p_i, y_{i+1} - p_{i+1})`` per interval.

    Raises if the data are on the wrong side of the bound at any knot.
    """
    mesh = validate(data)
    bound.check_against(mesh)
    y = data.values
    left = np.array([p.p_left for p in bound.pieces])
    right = np.array([p.p_right for p in bound.pieces])
    gaps = np.column_stack([y[:-1] - left, y[1:] - right])
    if bound.side == BELOW:
        gaps = -gaps
    bad = np.argwhere(gaps < 0)
    if bad.size:
        i, end = bad[0]
        k = int(i + end)
        raise BoundViolatedAtKnot(
            f"data lie on the wrong side of the bound at x = {mesh.knots[k]:g} "
            f"(interval {int(i)}, gap {gaps[i, end]:g})")
    return gaps


def mirror_below(data: InterpolationData, bound: BoundSpec):
    """Map a below-problem to the equivalent above-problem (and back).

    The fractal spline is linear in ``(y, d)`` for fixed ``(alpha, r, t)``, so
    ``f^alpha <= p`` for the data is ``(-f)^alpha >= -p`` for the negated data.
    """
    knot_gaps(data, bound)
    if data.derivatives is None:
        raise MissingDerivatives("constraint checks need derivative values")
    return data.negated(), bound.negated()


def compute_M(data: InterpolationData) -> float:
    if data.derivatives is None:
        raise MissingDerivatives("M needs derivative values at the knots")
    return data_constant(data)


def compute_K(M: float, alpha_sup: float) -> float:
    if not 0 <= alpha_sup < 1:
        raise AlphaSupOutOfRange(f"|alpha|_inf = {alpha_sup} not in [0, 1)")
    return M * alpha_sup / (alpha_sup - 1)


def alpha_cap(data: InterpolationData, bound: BoundSpec) -> float:
    """Largest ``|alpha|_inf`` keeping ``y_i - p_i + K >= 0`` at every knot."""
    gaps = knot_gaps(data, bound)
    M = compute_M(data)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = np.where(gaps + M > 0, gaps / (gaps + M), 0.0)
    return float(np.min(ratios))


@dataclass(frozen=True)
class LambdaInterval:
    """Feasible ratios ``lambda = t/r``; ``lo`` is excluded when it is 0."""

    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, lam: float) -> bool:
        if self.empty or not lam > 0:
            return False
        return self.lo <= lam <= self.hi

    def pick(self) -> float:
        """Deterministic representative: the midpoint, or ``max(1, 2 lo)`` if unbounded."""
        if self.empty:
            raise Infeasible("empty lambda interval")
        if math.isinf(self.hi):
            return max(1.0, 2.0 * self.lo)
        return 0.5 * (self.lo + self.hi)


def solve_linear_pair(A: float, B: float, C: float, D: float) -> LambdaInterval:
    """All ``lambda > 0`` with ``A + lambda B >= 0`` and ``C + lambda D >= 0``."""
    lo, hi = 0.0, math.inf
    for a, b in ((A, B), (C, D)):
        if b > 0:
            lo = max(lo, -a / b)
        elif b < 0:
            hi = min(hi, -a / b)
        elif a < 0:
            return LambdaInterval(math.inf, -math.inf)
    if hi <= 0:
        return LambdaInterval(math.inf, -math.inf)
    return LambdaInterval(lo, hi)


def feasibility_lambda(A: float, B: float, C: float, D: float) -> LambdaInterval:
    """Feasible shape-parameter ratios for one interval; needs ``B, C > 0``."""
    if not (B > 0 and C > 0):
        raise NonPositiveBC(f"B = {B} and C = {C} must both be positive")
    return solve_linear_pair(A, B, C, D)


@dataclass(frozen=True)
class ConstraintCertificate:
    side: str
    M: float
    K: float
    alpha_sup: float
    alpha_cap: float
    scaling_ok: bool
    cap_ok: bool
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    residual_ii: np.ndarray
    residual_iii: np.ndarray
    lambda_ranges: tuple = field(default=())

    @property
    def feasible(self) -> bool:
        return bool(self.scaling_ok and self.cap_ok
                    and np.all(self.B >= 0) and np.all(self.C >= 0)
                    and np.all(self.residual_ii >= 0) and np.all(self.residual_iii >= 0))

    def as_dict(self) -> dict:
        return {
            "side": self.side,
            "feasible": self.feasible,
            "M": self.M,
            "K": self.K,
            "alpha_sup": self.alpha_sup,
            "alpha_cap": self.alpha_cap,
            "scaling_ok": self.scaling_ok,
            "cap_ok": self.cap_ok,
            "residual_ii": self.residual_ii.tolist(),
            "residual_iii": self.residual_iii.tolist(),
            "lambda_ranges": [[iv.lo, iv.hi] if not iv.empty else None
                              for iv in self.lambda_ranges],
        }


def cubic_coefficients(cert: ConstraintCertificate, params: ShapeParams) -> np.ndarray:
    r, t = params.r, params.t
    return np.column_stack([r * cert.B, cert.residual_ii, cert.residual_iii, t * cert.C])


def _abcd(data: InterpolationData, mesh: Mesh, bound: BoundSpec, K: float):
    y, d, h = data.values, data.derivatives, mesh.h
    A, B, C, D = (np.empty(mesh.n_intervals) for _ in range(4))
    for i, p in enumerate(bound.pieces):
        pi, pj = p.p_left, p.p_right
        B[i] = y[i] - pi + K
        C[i] = y[i + 1] - pj + K
        if p.kind == LINEAR:
            A[i] = 2 * y[i] - pj - pi + h[i] * d[i] + 2 * K
            D[i] = 2 * y[i + 1] - pj - pi - h[i] * d[i + 1] + 2 * K
        else:
            s = p.slope_left
            A[i] = 2 * y[i] - 2 * pi + h[i] * d[i] - h[i] * s + 2 * K
            D[i] = 2 * y[i + 1] - 2 * pi - h[i] * d[i + 1] - h[i] * s + 2 * K
    return A, B, C, D


def check_conditions(data: InterpolationData, params: ShapeParams, alpha,
                     bound: BoundSpec, K: Optional[float] = None) -> ConstraintCertificate:
    """Evaluate the sufficient conditions for any mix of piece kinds.

    ``K`` defaults to the value implied by ``|alpha|_inf`` of ``alpha``.
    """
    if bound.side == BELOW:
        data, bound = mirror_below(data, bound)
        cert = check_conditions(data, params, alpha, bound, K)
        return replace(cert, side=BELOW)
    if data.derivatives is None:
        raise MissingDerivatives("constraint checks need derivative values")
    mesh = validate(data)
    params.check_against(mesh)
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (mesh.n_intervals,):
        raise LengthMismatch(f"{alpha.size} scaling factors for {mesh.n_intervals} intervals")
    cap = alpha_cap(data, bound)
    M = compute_M(data)
    s = float(np.max(np.abs(alpha)))
    if K is None:
        K = compute_K(M, s)
    A, B, C, D = _abcd(data, mesh, bound, K)
    r, t = params.r, params.t
    return ConstraintCertificate(
        side=ABOVE, M=M, K=K, alpha_sup=s, alpha_cap=cap,
        scaling_ok=bool(np.all(np.abs(alpha) < mesh.a)), cap_ok=s <= cap,
        A=A, B=B, C=C, D=D,
        residual_ii=r * A + t * B, residual_iii=r * C + t * D,
        lambda_ranges=tuple(solve_linear_pair(*abcd) for abcd in zip(A, B, C, D)))


def check_linear_conditions(data, params, alpha, bound: BoundSpec, K=None) -> ConstraintCertificate:
    """Sufficient conditions for a piecewise linear bound."""
    if bound.kind != LINEAR:
        raise WrongBoundKind("expected a piecewise linear bound")
    return check_conditions(data, params, alpha, bound, K)


def check_quadratic_conditions(data, params, alpha, bound: BoundSpec, K=None) -> ConstraintCertificate:
    """Sufficient conditions for a piecewise quadratic bound."""
    if bound.kind != QUADRATIC:
        raise WrongBoundKind("expected a piecewise quadratic bound")
    return check_conditions(data, params, alpha, bound, K)


def solve_params(data: InterpolationData, bound: BoundSpec, slack: float = 1.0):
    """Pick ``alpha``, ``r`` and ``t`` satisfying the sufficient conditions.

    All scaling factors get the same value ``slack * min(cap, min_i a_i)``
    (the latter shrunk by a relative 1e-9 to keep it strictly below ``a_i``).
    Per interval ``r_i = 1`` and ``t_i`` is a representative of the feasible
    ratio interval.

    Returns ``(alpha, params, certificate)``.
    """
    if not 0 <= slack <= 1:
        raise InvalidArgument("slack must lie in [0, 1]")
    if data.derivatives is None:
        raise MissingDerivatives("solve_params needs derivative values")
    side = bound.side
    work_data, work_bound = (mirror_below(data, bound) if side == BELOW else (data, bound))
    mesh = validate(work_data)
    cap = alpha_cap(work_data, work_bound)
    M = compute_M(work_data)
    s = slack * min(cap, float(np.min(mesh.a)) * (1 - 1e-9))
    while True:
        # round-off in K can push B or C a hair below zero at the cap
        K = compute_K(M, s)
        _, B, C, _ = _abcd(work_data, mesh, work_bound, K)
        if (np.all(B >= 0) and np.all(C >= 0)) or s == 0:
            break
        s = float(np.nextafter(s, 0.0))
    A, B, C, D = _abcd(work_data, mesh, work_bound, K)
    lam = np.empty(mesh.n_intervals)
    for i, abcd in enumerate(zip(A, B, C, D)):
        iv = solve_linear_pair(*abcd)
        if iv.empty:
            raise Infeasible(
                f"interval {i} ([{mesh.knots[i]:g}, {mesh.knots[i + 1]:g}]): no positive "
                f"t/r satisfies A + lambda B >= 0 and C + lambda D >= 0 "
                f"(A={abcd[0]:.6g}, B={abcd[1]:.6g}, C={abcd[2]:.6g}, D={abcd[3]:.6g})")
        lam[i] = iv.pick()
    alpha = np.full(mesh.n_intervals, s)
    params = ShapeParams(np.ones(mesh.n_intervals), lam)
    cert = check_conditions(data, params, alpha, bound)
    if not cert.feasible:
        raise Infeasible("selected parameters fail the sufficient conditions (round-off)")
    return alpha, params, cert


def check_empirical(model: FractalSplineModel, bound: BoundSpec, depth: int = 6):
    """Smallest side-signed gap between ``f^alpha`` and the bound on the orbit.

    Returns ``(min_gap, argmin_x)``.  At interior knots both adjacent pieces
    are checked.
    """
    mesh = model.mesh
    bound.check_against(mesh)
    xs, vs = eval_orbit(model, depth)
    sign = 1.0 if bound.side == ABOVE else -1.0
    gap = sign * (vs - bound.evaluate(mesh, xs))
    gap_left = sign * (vs - bound.evaluate(mesh, xs, from_left=True))
    gap = np.minimum(gap, gap_left)
    k = int(np.argmin(gap))
    return float(gap[k]), float(xs[k])


def lower_to_fit(data: InterpolationData, bound: BoundSpec, margin: float = 1.0) -> BoundSpec:
    """Shift every violating piece away from the data by its excess plus ``margin``.

    Pieces that already respect the data at both of their knots are kept.
    """
    mesh = validate(data)
    bound.check_against(mesh)
    y = data.values
    sign = 1.0 if bound.side == ABOVE else -1.0
    pieces = []
    for i, p in enumerate(bound.pieces):
        excess = max(sign * (p.p_left - y[i]), sign * (p.p_right - y[i + 1]))
        pieces.append(p.shifted(-sign * (excess + margin)) if excess > 0 else p)
    return BoundSpec(bound.side, tuple(pieces))
