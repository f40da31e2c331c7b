"""
Staying above the classical spline
==================================

With base functions b_i = f - beta_i * bump and positive scaling factors the
fractal spline never dips below f, so any lower bound f already respects is
inherited, whatever the size of alpha.
"""
import numpy as np
from _common import data, polygon, save

from fractal_spline import (
    ShapeParams,
    base_function_strategy,
    check_empirical,
    eval_orbit,
)
from fractal_spline.svg import render

params = ShapeParams.uniform(4)
curves = []
for beta in (1.0, 5.0, 20.0):
    model = base_function_strategy(data, params, 0.9 * np.array([0.2, 4 / 15, 0.2, 1 / 3]), beta)
    xs, vs = eval_orbit(model, 6)
    lift = vs - model.classical(xs)
    gap, _ = check_empirical(model, polygon, 6)
    print(f"beta = {beta:>4}: min(f^alpha - f) = {lift.min():.2e}, max = {lift.max():.3f}, "
          f"gap to polygon {gap:.3f}")
    curves.append((f"beta = {beta}", xs, vs))

curves.append(("classical", xs, model.classical(xs)))
save("bump_strategy.svg", render(curves))
