"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import integrate

from fractal_spline import (
    BoundSpec,
    InterpolationData,
    ShapeParams,
    alpha_cap,
    base_function_strategy,
    build_model,
    check_empirical,
    check_linear_conditions,
    check_quadratic_conditions,
    compute_K,
    compute_M,
    convergence_experiment,
    estimate_derivatives,
    eval_classical,
    eval_orbit,
    eval_points,
    feasibility_lambda,
    local_error_bound,
    local_error_constant,
    lower_to_fit,
    peano_kernel,
    perturbation_bound,
    solve_params,
    validate,
)
from fractal_spline.error_analysis import error_ratio
from fractal_spline.errors import BoundViolatedAtKnot
from fractal_spline.fractal import default_tolerance

from .conftest import (
    BOUND_AT_KNOTS,
    KNOTS,
    POLYGON_ROWS,
    SLOPES,
    VALUES,
    quadratic_with_bad_piece,
    random_data,
    random_params,
)


@contextmanager
def criterion(n, name):
    detail = {}
    try:
        yield detail
    except BaseException:
        print(f"\n[criterion {n:2d}] FAIL  {name}")
        raise
    extra = "  " + ", ".join(f"{k}={v}" for k, v in detail.items()) if detail else ""
    print(f"\n[criterion {n:2d}] PASS  {name}{extra}")


@pytest.fixture
def example():
    return InterpolationData(KNOTS, VALUES, SLOPES)


@pytest.fixture
def polygon():
    return BoundSpec.polygonal(BOUND_AT_KNOTS)


def test_c01_polygon_rows(example, polygon):
    with criterion(1, "polygon rows a-c interpolate and stay above p") as info:
        start = time.perf_counter()
        for row, (alpha, r, t) in POLYGON_ROWS.items():
            model = build_model(example, ShapeParams(r, t), alpha)
            v, _ = eval_points(model, np.array(KNOTS))
            assert np.max(np.abs(v - VALUES)) <= 1e-10
            gap, _ = check_empirical(model, polygon, 6)
            assert gap >= -1e-9
            info[f"min_gap_{row}"] = f"{gap:.6g}"
        elapsed = time.perf_counter() - start
        info["seconds"] = f"{elapsed:.2f}"
        assert elapsed < 5


def test_c02_classical_reduction(example):
    with criterion(2, "alpha = 0 row equals the classical spline") as info:
        alpha, r, t = POLYGON_ROWS["c"]
        params = ShapeParams(r, t)
        xs = np.linspace(0, 15, 10_000)
        got, _ = eval_points(build_model(example, params, alpha), xs)
        err = np.max(np.abs(got - eval_classical(example, params, xs)))
        info["max_diff"] = f"{err:.2e}"
        assert err <= 1e-12


def test_c03_derivative_estimates():
    with criterion(3, "arithmetic mean derivatives round to two decimals") as info:
        d = estimate_derivatives(InterpolationData(KNOTS, VALUES))
        info["d"] = np.array2string(d, precision=4)
        assert [round(v, 2) for v in d] == [-4.02, -1.31, -0.36, 0.2, 4.2]
        np.testing.assert_allclose(d, [-169 / 42, -55 / 42, -5 / 14, 0.2, 4.2], rtol=1e-14)


def test_c04_solver_self_consistency(example, polygon):
    with criterion(4, "solver constants and certified output") as info:
        M = compute_M(example)
        cap = alpha_cap(example, polygon)
        assert abs(cap - 2 / 63) <= 1e-12
        assert abs(M - 61) <= 1e-12
        assert abs(compute_K(M, 2 / 63) + 2) <= 1e-12
        alpha, params, _ = solve_params(example, polygon)
        cert = check_linear_conditions(example, params, alpha, polygon)
        assert cert.feasible
        gap, _ = check_empirical(build_model(example, params, alpha), polygon, 6)
        info.update(M=M, cap=f"{cap:.12f}", t=np.array2string(params.t, precision=4), min_gap=f"{gap:.6g}")
        assert gap >= 0


def test_c05_peano_constant():
    with criterion(5, "c(r = t) = 1/2 and the kernel-integral identity") as info:
        rng = np.random.default_rng(5)
        for s in rng.uniform(1e-2, 1e2, 10):
            assert abs(local_error_constant(s, s) - 0.5) <= 1e-9
        worst = 0.0
        mesh = validate(InterpolationData([0.0, 2.0, 3.0], [0, 0, 0]))
        for _ in range(5):
            r, t = rng.uniform(0.05, 20, 2)
            params = ShapeParams([r, 1], [t, 1])
            for x in rng.uniform(0.01, 1.99, 20):
                left, _ = integrate.quad(lambda s: peano_kernel(mesh, params, 0, s, x), 0.0, x)
                right, _ = integrate.quad(lambda s: peano_kernel(mesh, params, 0, s, x), x, 2.0)
                worst = max(worst, abs(left - right - 2.0 * error_ratio(r, t, x / 2.0)))
        info["identity_residual"] = f"{worst:.2e}"
        assert worst <= 1e-8


def test_c06_local_error_bound():
    with criterion(6, "local error bound for sin with estimated derivatives") as info:
        x = np.linspace(0, np.pi, 9)
        data = InterpolationData(x, np.sin(x))
        data = data.with_derivatives(estimate_derivatives(data))
        mesh = validate(data)
        params = ShapeParams.uniform(mesh.n_intervals)
        ratios = []
        for i in range(mesh.n_intervals):
            xs = np.linspace(x[i], x[i + 1], 1000)
            err = np.max(np.abs(np.sin(xs) - eval_classical(data, params, xs)))
            bound = local_error_bound(mesh, params, i, 1.0)
            ratios.append(err / bound)
        info["worst_err_over_bound"] = f"{max(ratios):.3g}"
        assert max(ratios) <= 1


def test_c07_convergence_order():
    with criterion(7, "O(h) convergence for sin") as info:
        start = time.perf_counter()
        res = convergence_experiment("sin", [5, 9, 17, 33], kappa=0.5)
        elapsed = time.perf_counter() - start
        info.update(order=f"{res.order:.4f}", seconds=f"{elapsed:.2f}")
        assert res.order >= 0.9
        assert elapsed < 10


def test_c08_perturbation_bound(example):
    with criterion(8, "sup |f - f^alpha| within the perturbation bound") as info:
        rng = np.random.default_rng(8)
        mesh = validate(example)
        params = ShapeParams.uniform(4)
        worst = 0.0
        for _ in range(50):
            alpha = rng.uniform(-1, 1, 4) * mesh.a * 0.999
            model = build_model(example, params, alpha)
            xs, vs = eval_orbit(model, 5)
            ratio = np.max(np.abs(vs - model.classical(xs))) / perturbation_bound(model)
            worst = max(worst, ratio)
        model = build_model(example, params, np.full(4, 2 / 63))
        pb = perturbation_bound(model)
        info.update(worst_ratio=f"{worst:.3g}", bound_at_cap=f"{pb:.12g}")
        assert worst <= 1
        assert abs(pb - 2.0) <= 1e-9


def test_c09_evaluator_cross_check():
    with criterion(9, "point evaluator agrees with the orbit") as info:
        rng = np.random.default_rng(9)
        worst = -np.inf
        for _ in range(20):
            data = random_data(rng)
            mesh = validate(data)
            alpha = rng.uniform(-0.99, 0.99, mesh.n_intervals) * mesh.a
            model = build_model(data, random_params(rng, mesh.n_intervals), alpha)
            xs, vs = eval_orbit(model, 4)
            tol = default_tolerance(model)
            got, _ = eval_points(model, xs, tol)
            excess = np.max(np.abs(got - vs)) - tol
            worst = max(worst, excess)
            assert excess <= 1e-12
        info["max(diff - tol)"] = f"{worst:.2e}"


def test_c10_feasibility_oracle():
    with criterion(10, "feasible ratio intervals match a log-grid scan") as info:
        rng = np.random.default_rng(10)
        lam = np.logspace(-4, 4, 10_000)
        mismatches = 0
        for _ in range(1000):
            A, D = rng.uniform(-10, 10, 2)
            B, C = rng.uniform(0.01, 10, 2)
            iv = feasibility_lambda(A, B, C, D)
            scan = (A + lam * B >= 0) & (C + lam * D >= 0)
            claimed = (lam >= iv.lo) & (lam <= iv.hi)
            mismatches += int(np.any(scan != claimed))
        info["mismatches"] = mismatches
        assert mismatches == 0


def test_c11_bump_strategy(example):
    with criterion(11, "bump base functions keep f^alpha above f") as info:
        rng = np.random.default_rng(11)
        mesh = validate(example)
        worst = np.inf
        for _ in range(50):
            alpha = rng.uniform(0.01, 0.99, 4) * mesh.a
            params = random_params(rng, 4)
            model = base_function_strategy(example, params, alpha, rng.uniform(0.1, 10, 4))
            xs, vs = eval_orbit(model, 5)
            worst = min(worst, float(np.min(vs - eval_classical(example, params, xs))))
        info["min(f^alpha - f)"] = f"{worst:.3g}"
        assert worst >= -1e-9


def test_c12_quadratic_bound(example):
    with criterion(12, "quadratic with a bad piece rejected at x = 10, lowered version certified") as info:
        bad = quadratic_with_bad_piece()
        with pytest.raises(BoundViolatedAtKnot, match="x = 10"):
            check_quadratic_conditions(example, ShapeParams.uniform(4), np.zeros(4), bad)
        fixed = lower_to_fit(example, bad)
        alpha, params, _ = solve_params(example, fixed)
        cert = check_quadratic_conditions(example, params, alpha, fixed)
        assert cert.feasible
        gap, where = check_empirical(build_model(example, params, alpha), fixed, 6)
        info.update(alpha=f"{alpha[0]:.6g}", min_gap=f"{gap:.6g}", at=where,
                    piece3=f"({fixed.pieces[2].p_left:g}, {fixed.pieces[2].p_right:g})")
        assert gap >= 0
        assert not math.isnan(gap)
