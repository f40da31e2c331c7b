"""
Convergence on refined meshes
=============================

sin on [0, pi] with derivatives estimated from the data and scaling factors
tied to the mesh (alpha_i = kappa a_i).  The sup error shrinks like h.
"""
from fractal_spline import convergence_experiment

for kappa in (0.0, 0.5, 0.9):
    res = convergence_experiment("sin", [5, 9, 17, 33, 65], kappa=kappa)
    print(f"kappa = {kappa}")
    print(res.table())
    print()

print(convergence_experiment("linear", [3, 5, 9], kappa=0.5).table())
