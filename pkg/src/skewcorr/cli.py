"""Command-line front end: ``skewcorr {compute,sweep,validate,figures}``.

Exit codes: 0 ok, 1 validation-suite failure, 2 parse error,
3 state-validation error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .jad import JadOptions
from .linalg import DensityMatrix, StateValidationError
from .measure import MethodError, quantum_correlation
from .oracle import analytic_isotropic, analytic_ppt, analytic_werner
from .states import FamilySpec, isotropic, ppt_family, werner
from .validation import run_suites

EXIT_OK, EXIT_SUITE, EXIT_PARSE, EXIT_STATE, EXIT_USAGE = 0, 1, 2, 3, 4

SWEEP_FAMILIES = {
    "werner": (werner, analytic_werner, (-1.0, 1.0)),
    "isotropic": (isotropic, analytic_isotropic, (0.0, 1.0)),
    "ppt": (lambda m, a: ppt_family(a), lambda m, a: analytic_ppt(a), (2.0, 5.0)),
}
CSV_HEADER = "param,q_computed,q_analytic,abs_gap,method,sweeps_used"
METHOD_FLAGS = {"auto": "auto", "jad": "jad", "qubit": "qubit", "pure": "pure"}


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- state files -------------------------------------------------------------


def read_state_file(path) -> DensityMatrix:
    """Load ``{"m": int, "n": int, "rho": [[[re, im], ...], ...]}``."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        m, n = int(doc["m"]), int(doc["n"])
        arr = np.asarray(doc["rho"], dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 2:
            raise ValueError("rho must be a matrix of [re, im] pairs")
        mat = arr[..., 0] + 1j * arr[..., 1]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"cannot parse state file {path}: {exc}", EXIT_PARSE) from exc
    try:
        return DensityMatrix(mat, m, n)
    except (StateValidationError, ValueError) as exc:
        raise CliError(f"invalid state in {path}: {exc}", EXIT_STATE) from exc


def write_state_file(path, rho: DensityMatrix):
    pairs = np.stack([rho.mat.real, rho.mat.imag], axis=-1).tolist()
    doc = {"m": rho.m, "n": rho.n, "rho": pairs}
    Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")


def _family_state(text: str) -> DensityMatrix:
    try:
        if text.lstrip().startswith("{"):
            spec = FamilySpec.from_dict(json.loads(text))
        else:
            spec = FamilySpec.parse(text)
    except (ValueError, TypeError) as exc:
        raise CliError(f"bad family spec {text!r}: {exc}", EXIT_PARSE) from exc
    try:
        return spec.build()
    except StateValidationError as exc:
        raise CliError(str(exc), EXIT_STATE) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


# --- helpers -----------------------------------------------------------------


def _default_seed() -> int:
    return int(os.environ.get("SKEWCORR_SEED", "0"))


def _options(args) -> JadOptions:
    try:
        return JadOptions(
            rotation_tolerance=args.tol,
            max_sweeps=args.max_sweeps,
            restarts=args.restarts,
            seed=args.seed,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _fmt(value) -> str:
    return "" if value is None else repr(float(value))


def _metadata(opts: JadOptions, **extra) -> list[str]:
    items = dict(extra)
    items.update(
        rotation_tolerance=opts.rotation_tolerance,
        max_sweeps=opts.max_sweeps,
        restarts=opts.restarts,
        seed=opts.seed,
    )
    return [f"# {k}={v}" for k, v in items.items()]


def sweep_rows(family, m, params, opts, method="jad", threads=1):
    """Evaluate one family over ``params``; rows come back in input order."""
    build, exact, _ = SWEEP_FAMILIES[family]

    def row(p):
        res = quantum_correlation(build(m, p), opts, method)
        ref = exact(m, p)
        sweeps = res.diagnostics.sweeps_used if res.diagnostics is not None else 0
        return (p, res.q, ref, abs(res.q - ref), res.method, sweeps)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, params))
    return [row(p) for p in params]


def write_csv(path, rows, metadata):
    lines = list(metadata) + [CSV_HEADER]
    for p, q, ref, gap, method, sweeps in rows:
        lines.append(",".join([_fmt(p), _fmt(q), _fmt(ref), _fmt(gap), method, str(sweeps)]))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _grid(lo, hi, steps):
    if steps < 1:
        raise CliError("--steps must be positive", EXIT_USAGE)
    return [float(v) for v in np.linspace(lo, hi, steps)]


# --- commands ----------------------------------------------------------------


def cmd_compute(args) -> int:
    if (args.input is None) == (args.family is None):
        raise CliError("give exactly one of --input / --family", EXIT_USAGE)
    rho = read_state_file(args.input) if args.input else _family_state(args.family)
    opts = _options(args)
    try:
        res = quantum_correlation(rho, opts, METHOD_FLAGS[args.method])
    except MethodError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    diag = res.diagnostics
    sweeps = diag.sweeps_used if diag else 0
    rotations = diag.rotations_used if diag else 0
    if args.json:
        doc = {
            "q": res.q,
            "method": res.method,
            "m": rho.m,
            "n": rho.n,
            "sweeps_used": sweeps,
            "rotations_used": rotations,
            "converged": diag.converged if diag else True,
            "optimal_basis": [
                [[float(z.real), float(z.imag)] for z in col] for col in res.optimal_basis.T
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"q={res.q:.6f}")
        print(f"method={res.method}")
        print(f"sweeps={sweeps} rotations={rotations}")
        for k, col in enumerate(res.optimal_basis.T):
            entries = " ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in col)
            print(f"basis[{k}]= {entries}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.family not in SWEEP_FAMILIES:
        raise CliError(f"unknown sweep family {args.family!r}", EXIT_USAGE)
    lo_default, hi_default = SWEEP_FAMILIES[args.family][2]
    lo = lo_default if args.start is None else args.start
    hi = hi_default if args.stop is None else args.stop
    opts = _options(args)
    try:
        rows = sweep_rows(args.family, args.m, _grid(lo, hi, args.steps), opts,
                          METHOD_FLAGS[args.method], args.threads)
    except MethodError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    meta = _metadata(opts, family=args.family, m=args.m if args.family != "ppt" else 3)
    write_csv(args.out, rows, meta)
    gap = max(r[3] for r in rows)
    print(f"wrote {len(rows)} rows to {args.out}; max abs_gap={gap:.3e}")
    return EXIT_OK


FIGURES = {
    "fig1": [("ppt", 3, 301, "fig1_ppt.csv")],
    "fig2a": [("werner", m, 101, f"fig2a_werner_m{m}.csv") for m in range(2, 11)],
    "fig2b": [("isotropic", m, 101, f"fig2b_isotropic_m{m}.csv") for m in range(2, 11)],
}


def cmd_figures(args) -> int:
    which = list(FIGURES) if args.which == "all" else [args.which]
    if any(w not in FIGURES for w in which):
        raise CliError(f"unknown figure {args.which!r}", EXIT_USAGE)
    opts = _options(args)
    out = Path(args.out)
    for fig in which:
        for family, m, steps, name in FIGURES[fig]:
            lo, hi = SWEEP_FAMILIES[family][2]
            rows = sweep_rows(family, m, _grid(lo, hi, steps), opts, "jad", args.threads)
            write_csv(out / name, rows, _metadata(opts, figure=fig, family=family, m=m))
            gap = max(r[3] for r in rows)
            print(f"{fig}: {name} max abs_gap={gap:.3e}")
    return EXIT_OK


def cmd_validate(args) -> int:
    extra = [read_state_file(path) for path in args.input or []]
    reports = run_suites(args.suite, args.seed, args.cases, _options(args), extra)
    for rep in reports:
        print(rep.line())
    return EXIT_OK if all(r.ok for r in reports) else EXIT_SUITE


def _add_jad_flags(p):
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-12, help="rotation tolerance")
    p.add_argument("--max-sweeps", type=int, default=100)
    p.add_argument("--seed", type=int, default=None,
                   help="default: $SKEWCORR_SEED or 0")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="correlation of one state")
    p.add_argument("--input", help="state file (JSON)")
    p.add_argument("--family", help='family spec, e.g. "werner:m=3,x=0.2"')
    p.add_argument("--method", choices=sorted(METHOD_FLAGS), default="auto")
    p.add_argument("--json", action="store_true")
    _add_jad_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="parameter sweep of an analytic family to CSV")
    p.add_argument("--family", required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=sorted(METHOD_FLAGS), default="jad")
    _add_jad_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the seeded consistency suites")
    p.add_argument("--suite", choices=("oracle", "properties", "all"), default="all")
    p.add_argument("--cases", type=int, default=50)
    p.add_argument("--input", action="append", help="extra state file to include")
    _add_jad_flags(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("figures", help="CSV data for the reference curves")
    p.add_argument("--which", default="all", help="fig1, fig2a, fig2b or all")
    p.add_argument("--out", required=True)
    _add_jad_flags(p)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.seed is None:
        args.seed = _default_seed()
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except StateValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATE


if __name__ == "__main__":
    sys.exit(main())
