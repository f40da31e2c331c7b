"""
Choosing the parameters automatically
=====================================

``solve_params`` fixes a common scaling factor (``slack`` times the largest
certified value) and then picks the ratio t/r on each interval from its
feasible range.  A bound above the data works by mirroring.
"""
import numpy as np
from _common import data, polygon, save, y

from fractal_spline import (
    BoundSpec,
    build_model,
    check_empirical,
    eval_orbit,
    solve_params,
)
from fractal_spline.errors import Infeasible
from fractal_spline.svg import render

curves = []
for slack in (1.0, 0.5, 0.0):
    alpha, params, cert = solve_params(data, polygon, slack)
    model = build_model(data, params, alpha)
    gap, _ = check_empirical(model, polygon, 6)
    print(f"slack {slack}: alpha = {alpha[0]:.5f}, t = {np.round(params.t, 3)}, "
          f"K = {cert.K:.3f}, min gap {gap:.3f}")
    curves.append((f"slack {slack}", *eval_orbit(model, 6)))

ceiling = BoundSpec.polygonal(y + 3, side="below")
try:
    solve_params(data, ceiling)
except Infeasible as exc:
    print("at the cap:", exc)
alpha, params, cert = solve_params(data, ceiling, slack=0.9)
gap, _ = check_empirical(build_model(data, params, alpha), ceiling, 6)
print(f"below y + 3 with slack 0.9: alpha = {alpha[0]:.5f}, min gap {gap:.3f}")

mesh = build_model(data, params, np.zeros(4)).mesh
bx = np.linspace(0, 15, 512)
save("solver.svg", render(curves, ("bound", bx, polygon.evaluate(mesh, bx))))
