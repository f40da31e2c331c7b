"""Shared fixtures for the demo scripts."""
from pathlib import Path

import numpy as np

from fractal_spline import BoundPiece, BoundSpec, InterpolationData

OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

x = np.array([0.0, 3.0, 7.0, 10.0, 15.0])
y = np.array([18.0, 10.0, 12.0, 9.0, 20.0])
d = np.array([-4.02, -1.31, -0.36, 0.2, 4.2])

data = InterpolationData(x, y, d)
polygon = BoundSpec.polygonal([12.0, 4.0, 10.0, 4.0, 11.0])

# a piecewise quadratic lower bound, one piece per interval:
# (value at left knot, value at right knot, slope at left knot)
quadratic = BoundSpec("above", (
    BoundPiece("quadratic", 10.0, 4.0, -3.5),
    BoundPiece("quadratic", 4.0, 10.0, -0.5),
    BoundPiece("quadratic", 10.0, 19.0, 3.5),
    BoundPiece("quadratic", 4.0, 10.0, -7.5),
))


def save(name, svg):
    path = OUT / name
    path.write_text(svg)
    print(f"wrote {path}")
