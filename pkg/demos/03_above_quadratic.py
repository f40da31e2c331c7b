"""
Curves above a piecewise quadratic bound
========================================

The quadratic bound in ``_common`` sits at 19 just left of x = 10, where the
data value is 9, so it is rejected.  Shifting the offending piece down by its
excess plus one gives a valid bound; the solver then picks the parameters.
"""
import numpy as np
from _common import data, quadratic, save

from fractal_spline import (
    build_model,
    check_empirical,
    eval_orbit,
    lower_to_fit,
    solve_params,
)
from fractal_spline.errors import BoundViolatedAtKnot
from fractal_spline.svg import render

try:
    solve_params(data, quadratic)
except BoundViolatedAtKnot as exc:
    print("rejected:", exc)

bound = lower_to_fit(data, quadratic)
for old, new in zip(quadratic.pieces, bound.pieces):
    if old != new:
        print(f"piece ({old.p_left:g}, {old.p_right:g}) lowered to ({new.p_left:g}, {new.p_right:g})")

alpha, params, cert = solve_params(data, bound)
print("alpha:", alpha, " t:", params.t, " certified:", cert.feasible)
model = build_model(data, params, alpha)
gap, where = check_empirical(model, bound, 6)
print(f"min gap {gap:.4f} at x = {where:g}")

xs, vs = eval_orbit(model, 6)
bx = np.linspace(0, 15, 512)
save("above_quadratic.svg", render([("solved", xs, vs)], ("bound", bx, bound.evaluate(model.mesh, bx))))
