"""Command line front end: ``fractal-spline <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constraints import check_conditions, check_empirical, solve_params
from .error_analysis import convergence_experiment
from .errors import FractalSplineError, InvalidArgument, ParseError
from .fractal import (
    build_model,
    eval_orbit,
    perturbation_bound,
    sample_uniform,
)
from .io import Problem, dump_problem, format_curve, load_problem, read_curve
from .mesh import InterpolationData, estimate_derivatives, validate
from .svg import render

BOUND_SAMPLES = 512


def _with_derivatives(problem: Problem, notes: list) -> Problem:
    if problem.mode == "hermite" and problem.data.derivatives is None:
        d = estimate_derivatives(problem.data)
        notes.append("derivatives estimated by the arithmetic mean method")
        return Problem(problem.data.with_derivatives(d), problem.mode,
                       problem.params, problem.alpha, problem.bound)
    return problem


def _require(problem: Problem, *fields):
    for f in fields:
        if getattr(problem, f) is None:
            name = {"params": "shape_r/shape_t"}.get(f, f)
            raise ParseError(f"{name}: missing")


def _model(problem: Problem):
    _require(problem, "params", "alpha")
    return build_model(problem.data, problem.params, problem.alpha, problem.mode)


def _fmt(v) -> str:
    return "(" + ", ".join(f"{x:.4f}" for x in np.asarray(v, dtype=float)) + ")"


def cmd_fit(args) -> int:
    notes = []
    problem = _with_derivatives(load_problem(args.input), notes)
    model = _model(problem)
    m = model.mesh
    lines = [
        f"points: {m.n}  intervals: {m.n_intervals}  mode: {model.mode}",
        f"knots: {_fmt(m.knots)}",
        f"h: {_fmt(m.h)}",
        f"a: {_fmt(m.a)}",
        f"alpha: {_fmt(model.alpha)}",
        "alpha admissible: yes (|alpha_i| < a_i for all i)",
        f"|alpha|_inf: {model.alpha_sup:.6g}",
        f"perturbation bound: {perturbation_bound(model):.6g}",
    ]
    lines += [f"note: {n}" for n in notes]
    print("\n".join(lines))
    if args.out:
        # hermite problems are written back with their (possibly estimated) derivatives
        dump_problem(problem, args.out)
    return 0


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    problem = _with_derivatives(load_problem(args.input), [])
    model = _model(problem)
    if args.grid is not None:
        if args.grid < 2:
            raise InvalidArgument("--grid needs at least 2 points")
        xs, vs = sample_uniform(model, args.grid, args.tol)
    else:
        if args.orbit < 0:
            raise InvalidArgument("--orbit depth must be non-negative")
        xs, vs = eval_orbit(model, args.orbit)
    _emit(format_curve(xs, vs), args.out)
    return 0


def cmd_check(args) -> int:
    problem = _with_derivatives(load_problem(args.input), [])
    _require(problem, "bound")
    model = _model(problem)
    cert = check_conditions(model.data, model.params, model.alpha, problem.bound)
    gap, where = check_empirical(model, problem.bound, args.depth)
    report = cert.as_dict()
    report.update({"depth": args.depth, "min_gap": gap, "argmin_x": where})
    print(json.dumps(report, indent=2))
    return 0


def cmd_solve(args) -> int:
    problem = _with_derivatives(load_problem(args.input), [])
    _require(problem, "bound")
    if problem.mode != "hermite":
        raise InvalidArgument("solve works on hermite-mode problems")
    alpha, params, cert = solve_params(problem.data, problem.bound, args.slack)
    solved = Problem(problem.data, problem.mode, params, alpha, problem.bound)
    if args.out:
        dump_problem(solved, args.out)
    report = cert.as_dict()
    report.update({"alpha": alpha.tolist(), "shape_r": params.r.tolist(),
                   "shape_t": params.t.tolist()})
    print(json.dumps(report, indent=2))
    return 0


def cmd_converge(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise InvalidArgument("--sizes: expected a comma separated list of integers") from None
    result = convergence_experiment(args.generator, sizes, args.kappa)
    print(f"generator: {result.generator}  kappa: {result.kappa}")
    print(result.table())
    return 0


def cmd_plot(args) -> int:
    curves = []
    for path in args.curves:
        xs, vs = read_curve(path)
        curves.append((Path(path).name, xs, vs))
    bound = None
    if args.bound:
        problem = load_problem(args.bound)
        _require(problem, "bound")
        keep = problem.n_intervals + 1
        d = problem.data
        mesh = validate(InterpolationData(d.knots[:keep], d.values[:keep]))
        xs = np.linspace(mesh.knots[0], mesh.knots[-1], BOUND_SAMPLES)
        bound = (f"bound ({problem.bound.side})", xs, problem.bound.evaluate(mesh, xs))
    svg = render(curves, bound)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractal-spline",
        description="Rational cubic fractal interpolation with constraint selection.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="validate a problem file and summarise the model")
    p.add_argument("input")
    p.add_argument("--out", help="write the normalised problem file here")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("eval", help="sample the fractal spline to a CSV curve")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--grid", type=int, help="number of uniform sample points")
    g.add_argument("--orbit", type=int, help="orbit depth (exact graph points)")
    p.add_argument("--tol", type=float, default=None, help="truncation tolerance for --grid")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="certificate and empirical gap against the bound")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="choose alpha, r, t so the spline respects the bound")
    p.add_argument("input")
    p.add_argument("--slack", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("converge", help="empirical convergence order on refined meshes")
    p.add_argument("--generator", default="sin")
    p.add_argument("--sizes", default="5,9,17,33")
    p.add_argument("--kappa", type=float, default=0.5)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("plot", help="render curve files (and a bound) to SVG")
    p.add_argument("curves", nargs="+")
    p.add_argument("--bound", help="problem file holding the bound")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FractalSplineError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
