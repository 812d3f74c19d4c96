"""Command line: ``halfeig <command> [options]``.

Exit codes: 0 success (including an empty solution search), 1 failed
verification, 2 invalid input, 3 internal enumeration failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from .errors import (BranchLost, BranchMismatch, ConditionFails, IncompleteSpectrum,
                     InvalidProblem, NotSplitInterval, RootCountMismatch)
from .residual import ConeStatus, ProblemSpec, dirichlet

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(v):
    """Deterministic cell text: ints as-is, floats to 17 significant digits."""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def load_problem(path, allow_outside_cone=False):
    """Parse a JSON problem file; ``None`` gives the Dirichlet problem."""
    if path is None:
        return dirichlet()
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read problem file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("problem file must hold a JSON object")
    data = dict(data)
    if allow_outside_cone:
        data["allow_outside_cone"] = True
    spec = ProblemSpec.from_dict(data)
    if spec.cone_status is ConeStatus.OUTSIDE:
        raise InvalidProblem("sum of |alpha| must be < 1 on each side")
    return spec


def _positive(name, v):
    if v is None:
        raise UsageError(f"--{name} is required")
    if not (math.isfinite(v) and v > 0):
        raise UsageError(f"--{name} must be positive and finite")
    return v


def _parse_nodal(text):
    try:
        k_txt, nu_txt = text.split(",")
        k = int(k_txt)
        nu = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}[nu_txt.strip()]
    except (ValueError, KeyError) as exc:
        raise UsageError(f"--nodal expects k,+ or k,- (got {text!r})") from exc
    if k < 1:
        raise UsageError("--nodal index must be >= 1")
    return k, nu


def cmd_spectrum(args):
    from .spectrum import half_eigenvalues

    spec = load_problem(args.problem, args.allow_outside_cone)
    a, b = _positive("a", args.a), _positive("b", args.b)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    recs = sorted(half_eigenvalues(spec, a, b, args.kmax), key=lambda r: (r.lam, r.k, -r.nu))
    rows = [(r.k, r.nu, r.lam, r.s, r.delta, r.residual) for r in recs]
    emit(csv_text(["k", "nu", "lambda", "s", "delta", "residual"], rows), args.out)
    return EXIT_OK


def cmd_fucik(args):
    from .fucik import default_theta_grid, trace_curve
    from .spectrum import linear_eigenvalues
    from .svgplot import write_curves

    spec = load_problem(args.problem, args.allow_outside_cone)
    if args.grid < 3:
        raise UsageError("--grid must be >= 3")
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    thetas = default_theta_grid(args.grid)
    rows, curves = [], {}
    for k in range(1, args.kmax + 1):
        for nu in (1, -1):
            samples = trace_curve(spec, k, nu, thetas)
            rows += [(k, nu, q.theta, q.lam, q.a, q.b) for q in samples]
            curves[f"({k},{'+' if nu > 0 else '-'})"] = (
                [q.a for q in samples], [q.b for q in samples])
    emit(csv_text(["k", "nu", "theta", "lambda", "a", "b"], rows), args.out)
    if args.svg:
        top = 2.5 * linear_eigenvalues(spec, args.kmax)[-1]
        write_curves(args.svg, curves, (0.0, top), (0.0, top),
                     title="Fucik curves", diagonal=True)
    return EXIT_OK


def cmd_classify(args):
    from .solvability import SPLIT, classify_lambda, nonsolvable_forcing

    spec = load_problem(args.problem, args.allow_outside_cone)
    a, b = _positive("a", args.a), _positive("b", args.b)
    if args.lam is None or not math.isfinite(args.lam):
        raise UsageError("--lambda is required and must be finite")
    cls = classify_lambda(spec, a, b, args.lam)
    out = cls.to_dict()
    if cls.kind == SPLIT:
        out["forcing"] = nonsolvable_forcing(spec, a, b, args.lam).to_dict()
    sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    return EXIT_OK


def _write_solutions(outdir, spec, trajs, meta):
    from .bvp_shoot.shooting import shooting_state

    os.makedirs(outdir, exist_ok=True)
    sols = []
    for i, tr in enumerate(trajs):
        name = f"solution_{i:03d}.csv"
        rows = zip(tr.grid, tr.values, tr.derivatives)
        emit(csv_text(["x", "u", "du"], rows), os.path.join(outdir, name))
        st = shooting_state(spec, tr)
        k, nu = tr.nodal_class()
        sols.append({"file": name, "c": st.c, "d": st.d, "amplitude": tr.amplitude,
                     "residual_minus": st.residual_minus,
                     "residual_plus": st.residual_plus,
                     "nodal_class": None if k is None else [k, nu]})
    summary = dict(meta, count=len(sols), solutions=sols,
                   status="found" if sols else "search_exhausted")
    emit(json.dumps(summary, indent=2, sort_keys=True) + "\n",
         os.path.join(outdir, "summary.json"))
    if not sols:
        print(f"no solution found over the {meta['lattice']}x{meta['lattice']} "
              "start lattice (search exhausted, not an error)", file=sys.stderr)


def cmd_solve(args):
    from .bvp_shoot import (find_nodal, lattice, parse_forcing, parse_nonlinearity,
                            solve_halflinear, solve_nonlinear)

    spec = load_problem(args.problem, args.allow_outside_cone)
    if args.out is None:
        raise UsageError("--out (output directory) is required")
    h = parse_forcing(args.h)
    starts = lattice(args.lattice)
    meta = {"mode": args.mode, "h": args.h, "lattice": args.lattice, "step": args.step,
            "problem": spec.to_dict()}
    if args.mode == "halflinear":
        a, b = _positive("a", args.a), _positive("b", args.b)
        if args.lam is None or not math.isfinite(args.lam):
            raise UsageError("--lambda is required and must be finite")
        meta.update(a=a, b=b, **{"lambda": args.lam})
        trajs = solve_halflinear(spec, a, b, args.lam, h, starts, args.step)
    else:
        if args.f is None:
            raise UsageError("--f is required in nonlinear mode")
        nl = parse_nonlinearity(args.f)
        meta["f"] = args.f
        if args.nodal:
            if args.h not in ("zero",):
                raise UsageError("--nodal solves the unforced problem; use --h zero")
            k, nu = _parse_nodal(args.nodal)
            meta["nodal"] = [k, nu]
            trajs = [find_nodal(spec, nl, k, nu, step=args.step)]
        else:
            trajs = solve_nonlinear(spec, nl, h, starts, args.step)
    _write_solutions(args.out, spec, trajs, meta)
    return EXIT_OK


def cmd_branch(args):
    from .bvp_shoot import continue_branch, parse_nonlinearity

    spec = load_problem(args.problem, args.allow_outside_cone)
    if args.f is None or args.nodal is None:
        raise UsageError("--f and --nodal are required")
    nl = parse_nonlinearity(args.f)
    k, nu = _parse_nodal(args.nodal)
    pts = continue_branch(spec, nl, k, nu, max_steps=args.max_steps, step=args.step)
    rows = [(q.lam, q.amplitude, q.c, q.d) for q in pts]
    emit(csv_text(["lambda", "amplitude", "c", "d"], rows), args.out)
    return EXIT_OK


def cmd_verify_examples(args):
    from .golden import run_all

    checks = run_all()
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="halfeig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--problem", help="JSON boundary data (default: Dirichlet)")
        p.add_argument("--allow-outside-cone", action="store_true",
                       help="accept negative coefficients")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("spectrum", help="half-eigenvalues up to index kmax")
    common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("fucik", help="Fucik curves as CSV (and SVG)")
    common(p)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--svg", help="also write a plot to this path")
    p.set_defaults(func=cmd_fucik)

    p = sub.add_parser("classify", help="gap or split interval containing lambda")
    common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="multistart shooting for forced problems")
    common(p)
    p.add_argument("--mode", choices=["halflinear", "nonlinear"], default="halflinear")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--f", help="linear:c | rational_bump:f0,finf | atan_shift:fp,fm[,c]")
    p.add_argument("--h", default="zero", help="zero | one | step:x0[,level] | samples:path")
    p.add_argument("--nodal", help="k,+ or k,- (nonlinear mode, unforced)")
    p.add_argument("--lattice", type=int, default=21)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("branch", help="continue a bifurcating branch")
    common(p)
    p.add_argument("--f")
    p.add_argument("--nodal")
    p.add_argument("--max-steps", type=int, default=200)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("verify-examples", help="golden checks of two worked examples")
    p.set_defaults(func=cmd_verify_examples)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidProblem, NotSplitInterval, ConditionFails, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IncompleteSpectrum, RootCountMismatch, BranchMismatch, BranchLost) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
