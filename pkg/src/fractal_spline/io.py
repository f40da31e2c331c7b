"""Problem files (JSON) and curve files (CSV)."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .classical import ShapeParams
from .constraints import BoundPiece, BoundSpec
from .errors import EmptyCurve, FractalSplineError, ParseError
from .fractal import HERMITE, VALUES_ONLY
from .mesh import InterpolationData

PROBLEM_FIELDS = ("knots", "values", "derivatives", "shape_r", "shape_t", "alpha", "mode", "bound")
BOUND_FIELDS = ("side", "pieces")
PIECE_FIELDS = ("kind", "p_left", "p_right", "slope_left")
CURVE_HEADER = "x,value"


@dataclass(frozen=True)
class Problem:
    data: InterpolationData
    mode: str = HERMITE
    params: Optional[ShapeParams] = None
    alpha: Optional[np.ndarray] = None
    bound: Optional[BoundSpec] = None

    @property
    def n_intervals(self) -> int:
        n = self.data.n
        return n - 2 if self.mode == VALUES_ONLY else n - 1


def _number_list(obj, path: str, length: Optional[int] = None) -> list:
    if not isinstance(obj, list):
        raise ParseError(f"{path}: expected an array of numbers")
    out = []
    for k, v in enumerate(obj):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ParseError(f"{path}[{k}]: expected a finite number, got {v!r}")
        out.append(float(v))
    if length is not None and len(out) != length:
        raise ParseError(f"{path}: expected {length} entries, got {len(out)}")
    return out


def _number(obj, path: str) -> float:
    return _number_list([obj], path)[0]


def _reject_unknown(obj: dict, allowed, path: str):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ParseError(f"{path}: unknown field(s) {', '.join(extra)}")


def parse_bound(obj, n_intervals: int, path: str = "bound") -> BoundSpec:
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object")
    _reject_unknown(obj, BOUND_FIELDS, path)
    for key in BOUND_FIELDS:
        if key not in obj:
            raise ParseError(f"{path}.{key}: missing")
    side = obj["side"]
    if side not in ("above", "below"):
        raise ParseError(f"{path}.side: expected 'above' or 'below', got {side!r}")
    pieces = obj["pieces"]
    if not isinstance(pieces, list) or len(pieces) != n_intervals:
        raise ParseError(f"{path}.pieces: expected an array of {n_intervals} pieces")
    out = []
    for k, piece in enumerate(pieces):
        ppath = f"{path}.pieces[{k}]"
        if not isinstance(piece, dict):
            raise ParseError(f"{ppath}: expected an object")
        _reject_unknown(piece, PIECE_FIELDS, ppath)
        kind = piece.get("kind")
        if kind not in ("linear", "quadratic"):
            raise ParseError(f"{ppath}.kind: expected 'linear' or 'quadratic', got {kind!r}")
        for key in ("p_left", "p_right"):
            if key not in piece:
                raise ParseError(f"{ppath}.{key}: missing")
        slope = piece.get("slope_left")
        if kind == "quadratic":
            if slope is None:
                raise ParseError(f"{ppath}.slope_left: required for quadratic pieces")
            slope = _number(slope, f"{ppath}.slope_left")
        elif slope is not None:
            raise ParseError(f"{ppath}.slope_left: only allowed for quadratic pieces")
        out.append(BoundPiece(kind, _number(piece["p_left"], f"{ppath}.p_left"),
                              _number(piece["p_right"], f"{ppath}.p_right"), slope))
    return BoundSpec(side, tuple(out))


def parse_problem(obj) -> Problem:
    if not isinstance(obj, dict):
        raise ParseError("<root>: expected a JSON object")
    _reject_unknown(obj, PROBLEM_FIELDS, "<root>")
    for key in ("knots", "values"):
        if key not in obj:
            raise ParseError(f"{key}: missing")
    knots = _number_list(obj["knots"], "knots")
    n = len(knots)
    values = _number_list(obj["values"], "values", n)
    derivs = obj.get("derivatives")
    if derivs is not None:
        derivs = _number_list(derivs, "derivatives", n)
    mode = obj.get("mode", HERMITE)
    if mode not in (HERMITE, VALUES_ONLY):
        raise ParseError(f"mode: expected 'hermite' or 'values-only', got {mode!r}")
    n_int = n - 2 if mode == VALUES_ONLY else n - 1
    params = None
    if "shape_r" in obj or "shape_t" in obj:
        r = _number_list(obj.get("shape_r"), "shape_r", n_int)
        t = _number_list(obj.get("shape_t"), "shape_t", n_int)
        try:
            params = ShapeParams(r, t)
        except FractalSplineError as exc:
            raise ParseError(f"shape_r/shape_t: {exc}") from None
    alpha = None
    if obj.get("alpha") is not None:
        alpha = np.array(_number_list(obj["alpha"], "alpha", n_int))
    bound = None
    if obj.get("bound") is not None:
        bound = parse_bound(obj["bound"], n_int)
    return Problem(InterpolationData(knots, values, derivs), mode, params, alpha, bound)


def load_problem(path) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    if not text.strip():
        raise ParseError(f"{path}: empty file")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_problem(obj)


def bound_to_dict(bound: BoundSpec) -> dict:
    pieces = []
    for p in bound.pieces:
        d = {"kind": p.kind, "p_left": float(p.p_left), "p_right": float(p.p_right)}
        if p.kind == "quadratic":
            d["slope_left"] = float(p.slope_left)
        pieces.append(d)
    return {"side": bound.side, "pieces": pieces}


def problem_to_dict(problem: Problem) -> dict:
    d = problem.data
    out = {"knots": d.knots.tolist(), "values": d.values.tolist()}
    if d.derivatives is not None:
        out["derivatives"] = d.derivatives.tolist()
    if problem.params is not None:
        out["shape_r"] = problem.params.r.tolist()
        out["shape_t"] = problem.params.t.tolist()
    if problem.alpha is not None:
        out["alpha"] = np.asarray(problem.alpha, dtype=float).tolist()
    out["mode"] = problem.mode
    if problem.bound is not None:
        out["bound"] = bound_to_dict(problem.bound)
    return out


def dump_problem(problem: Problem, path):
    Path(path).write_text(json.dumps(problem_to_dict(problem), indent=2) + "\n")


def format_curve(xs, vs) -> str:
    xs = np.asarray(xs, dtype=float)
    if xs.size > 1 and np.any(np.diff(xs) <= 0):
        raise ValueError("curve abscissae must be strictly increasing")
    lines = [CURVE_HEADER]
    lines += [f"{x:.17g},{v:.17g}" for x, v in zip(xs, np.asarray(vs, dtype=float))]
    return "\n".join(lines) + "\n"


def write_curve(path, xs, vs):
    Path(path).write_text(format_curve(xs, vs))


def read_curve(path):
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    if not lines or lines[0].strip() != CURVE_HEADER:
        raise ParseError(f"{path}: line 1: expected header {CURVE_HEADER!r}")
    xs, vs = [], []
    for k, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        try:
            if len(parts) != 2:
                raise ValueError
            xs.append(float(parts[0]))
            vs.append(float(parts[1]))
        except ValueError:
            raise ParseError(f"{path}: line {k}: expected 'x,value', got {line!r}") from None
    if not xs:
        raise EmptyCurve(f"{path}: no data rows")
    return np.array(xs), np.array(vs)
