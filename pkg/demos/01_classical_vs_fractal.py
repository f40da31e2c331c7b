"""
Classical rational spline vs. its fractal perturbations
=======================================================

The same five points and slopes, with growing scaling factors.  alpha = 0 is
the smooth rational cubic; larger alpha adds self-similar detail while the
curve still passes through every point.
"""
import numpy as np
from _common import data, save

from fractal_spline import ShapeParams, build_model, eval_orbit
from fractal_spline.svg import render

params = ShapeParams.uniform(4)
a = build_model(data, params, np.zeros(4)).mesh.a
print("contraction ratios a_i:", np.round(a, 4))

curves = []
for kappa in (0.0, 0.5, 0.95):
    model = build_model(data, params, kappa * a)
    xs, vs = eval_orbit(model, 6)
    wiggle = np.max(np.abs(vs - model.classical(xs)))
    print(f"alpha = {kappa:.2f} a: {xs.size} graph points, max |f^alpha - f| = {wiggle:.4f}")
    curves.append((f"alpha = {kappa} a", xs, vs))

# the shape parameters change tension: large t pulls the curve towards the chord
for t in (1.0, 10.0, 100.0):
    model = build_model(data, ShapeParams.uniform(4, 1.0, t), np.zeros(4))
    xs, vs = eval_orbit(model, 6)
    print(f"r = 1, t = {t:>5}: min value {vs.min():.4f}")

save("classical_vs_fractal.svg", render(curves))
