"""
Curves above a piecewise linear bound
=====================================

Three parameter sets on the five-point data, all lying above the polygon
through (0,12), (3,4), (7,10), (10,4), (15,11).  The sufficient conditions
certify only small scaling factors; the first row uses a larger one and is
checked on the sampled graph instead.
"""
import numpy as np
from _common import data, polygon, save

from fractal_spline import (
    ShapeParams,
    build_model,
    check_empirical,
    check_linear_conditions,
    eval_orbit,
)
from fractal_spline.svg import render

rows = {
    "a": ([0.010, 0.020, 0.030, 0.333], [1, 1, 1, 1], [3.35, 1, 1, 1]),
    "b": ([0.027, 0.027, 0.027, 0.024], [1, 1, 1, 1], [3.35, 1, 1, 1]),
    "c": ([0.0, 0.0, 0.0, 0.0], [1, 1, 1, 1], [3.35, 1, 1, 1]),
}

curves = []
for name, (alpha, r, t) in rows.items():
    params = ShapeParams(r, t)
    model = build_model(data, params, alpha)
    cert = check_linear_conditions(data, params, alpha, polygon)
    gap, where = check_empirical(model, polygon, 6)
    print(f"row {name}: |alpha| = {cert.alpha_sup:.3f} (cap {cert.alpha_cap:.4f}), "
          f"certified = {cert.feasible}, min gap {gap:.3f} at x = {where:g}")
    xs, vs = eval_orbit(model, 6)
    curves.append((f"row {name}", xs, vs))

mesh = build_model(data, ShapeParams.uniform(4), np.zeros(4)).mesh
bx = np.linspace(0, 15, 512)
save("above_polygon.svg", render(curves, ("bound", bx, polygon.evaluate(mesh, bx))))
