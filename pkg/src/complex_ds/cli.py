"""Command-line entry point: ``complex-ds {combine,surface,predict,fit,report}``.

Exit codes: 0 success, 2 bad arguments or unparsable input, 3 a CBBA fails
validation or frames differ, 4 total conflict.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings

from . import documents as docs
from .evidence import (
    CBBA,
    BadGridStep,
    CBBAConstraintWarning,
    FrameMismatch,
    TotalConflict,
    combine,
    conflict,
    conflict_surface,
)
from .complex_scalar import ZERO
from .fitting import FitConfig, evaluate_report, fit_alone, fit_ctd
from .quantum import CategoryWeights, HamiltonianParams, ModelConfig, ModelError, predict_alone, predict_ctd
from .reference import REFERENCE_DATASETS

EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_CONFLICT = 4

REFERENCE_FIXTURES = ("busemeyer2009.json", "wang_exp1.json", "wang_exp2.json", "wang_exp3.json")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _underscore(value: str) -> str:
    return value.replace("-", "_")


def _model_config(args) -> ModelConfig:
    return ModelConfig(t=args.t, scaling=_underscore(args.scaling),
                       alone_measure=_underscore(args.alone_measure))


def cmd_combine(args) -> int:
    loaded = []
    for path in args.inputs:
        try:
            loaded.append(docs.load_cbba(path))
        except docs.ValidationFailed as exc:
            raise CliError(str(exc), EXIT_INVALID)
        except docs.DocumentError as exc:
            raise CliError(str(exc), EXIT_USAGE)
    fused, tolerance = loaded[0]
    print(f"input: {args.inputs[0]}")
    if len(loaded) == 1:
        print(f"K = {docs.fmt_complex(ZERO)}  |K| = {docs.fmt(0.0)}")
    for path, (m, tol) in zip(args.inputs[1:], loaded[1:]):
        try:
            report = conflict(fused, m)
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", CBBAConstraintWarning)
                fused = combine(fused, m)
        except FrameMismatch as exc:
            raise CliError(str(exc), EXIT_INVALID)
        except TotalConflict as exc:
            raise CliError(f"total conflict combining {path}: {exc}", EXIT_CONFLICT)
        tolerance = max(tolerance, tol)
        print(f"combine with: {path}")
        print(f"K = {docs.fmt_complex(report.k)}  |K| = {docs.fmt(report.k_abs)}")
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    for labels, value in fused.labelled().items():
        print(f"m({{{','.join(labels)}}}) = {docs.fmt_complex(value)}")
    document = docs.dumps_cbba(fused, tolerance)
    if args.output:
        docs.atomic_write(args.output, document)
    else:
        print()
        sys.stdout.write(document)
    return 0


def cmd_surface(args) -> int:
    try:
        rows = conflict_surface(args.grid_step)
    except BadGridStep as exc:
        raise CliError(str(exc), EXIT_USAGE)
    text = docs.surface_csv(rows)
    if args.output:
        docs.atomic_write(args.output, text)
        print(f"wrote {len(rows)} rows to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_predict(args) -> int:
    p_b = args.p_b if args.p_b is not None else 1.0 - args.p_g - args.p_u
    try:
        model = _model_config(args)
        weights = CategoryWeights(args.p_g, p_b, args.p_u)
        params = HamiltonianParams(args.h_g, args.h_b, args.h_u)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.condition == "c-then-d":
                pred = predict_ctd(params, weights, model)
                lines = [f"P(A|G) = {pred.p_a_given_g:.4f}",
                         f"P(A|B) = {pred.p_a_given_b:.4f}",
                         f"P_T(A) = {pred.p_t:.4f}"]
            else:
                lines = [f"P(A) = {predict_alone(params, weights, model):.4f}"]
    except ModelError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    print("\n".join(lines))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return 0


def _fit_config(args) -> FitConfig:
    try:
        return FitConfig(bounds=tuple(args.bounds), starts=args.starts, tol=args.tol,
                         max_iters=args.max_iters, model=_model_config(args))
    except (ValueError, ModelError) as exc:
        raise CliError(str(exc), EXIT_USAGE)


def _print_fit(result) -> None:
    p = result.params
    names = "h_G, h_B, h_U" if result.condition == "c_then_d" else "h_G, h_B"
    values = p.as_tuple() if result.condition == "c_then_d" else p.as_tuple()[:2]
    print(f"[{result.condition}] {names} = " + ", ".join(f"{v:.6f}" for v in values))
    print(f"  SSE = {result.sse:.3e}  start = {result.start_index}"
          + ("" if result.converged else "  NO CONVERGENCE (best so far)"))


def cmd_fit(args) -> int:
    try:
        obs = docs.load_dataset(args.dataset)
    except docs.DocumentError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    cfg = _fit_config(args)
    ctd = fit_ctd(obs, cfg) if args.condition in ("c-then-d", "both") else None
    alone = fit_alone(obs, cfg) if args.condition in ("d-alone", "both") else None
    print(f"dataset: {obs.name}")
    for result in (ctd, alone):
        if result is not None:
            _print_fit(result)
    nan = float("nan")
    row = (obs.p_g,
           ctd.predictions.p_a_given_g if ctd else nan,
           obs.p_b,
           ctd.predictions.p_a_given_b if ctd else nan,
           ctd.predictions.p_t if ctd else nan,
           alone.predictions.p_a if alone else nan)
    header = ("P(G)", "P(A|G)", "P(B)", "P(A|B)", "P_T", "P(A)")
    cells = ["  --  " if math.isnan(v) else f"{v:.4f}" for v in row]
    print("  ".join(h.rjust(6) for h in header))
    print("  ".join(c.rjust(6) for c in cells))
    if args.report:
        csv = ",".join(("dataset",) + header) + "\n" + ",".join([obs.name] + [
            "" if math.isnan(v) else docs.fmt(v, 6) for v in row]) + "\n"
        docs.atomic_write(args.report, csv)
    return 0


def cmd_report(args) -> int:
    paths = args.datasets or [str(docs.fixture_path(f)) for f in REFERENCE_FIXTURES]
    try:
        datasets = [docs.load_dataset(p) for p in paths]
    except docs.DocumentError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    report = evaluate_report(datasets, _fit_config(args))
    sys.stdout.write(docs.report_text(report, with_reference=not args.no_reference))
    if args.csv:
        docs.atomic_write(args.csv, docs.report_csv(report))
    return 0


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, default=math.pi / 2, help="evolution time (default pi/2)")
    p.add_argument("--scaling", choices=("paper-literal", "unit-spectrum"), default="paper-literal")
    p.add_argument("--alone-measure", choices=("paper-literal", "attack-consistent"),
                   default="attack-consistent")


def _add_fit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--bounds", type=float, nargs=2, metavar=("LO", "HI"), default=(-10.0, 10.0))
    _add_model_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complex-ds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("combine", help="fuse CBBA documents left to right")
    p.add_argument("inputs", nargs="+", help="CBBA JSON documents")
    p.add_argument("--output", help="write the fused CBBA document here instead of stdout")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("surface", help="|K| grid for the two-element conflict example as CSV")
    p.add_argument("--grid-step", type=float, default=0.05)
    p.add_argument("--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("predict", help="model predictions for given parameters")
    for flag in ("--h-g", "--h-b", "--h-u"):
        p.add_argument(flag, type=float, default=0.0)
    p.add_argument("--p-g", type=float, required=True)
    p.add_argument("--p-b", type=float, default=None, help="default 1 - p_g - p_u")
    p.add_argument("--p-u", type=float, default=0.0)
    p.add_argument("--condition", choices=("c-then-d", "d-alone"), default="c-then-d")
    _add_model_flags(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("fit", help="fit h parameters to an observed dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--condition", choices=("c-then-d", "d-alone", "both"), default="both")
    p.add_argument("--report", help="CSV path for the prediction row")
    _add_fit_flags(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("report", help="fit every dataset and tabulate against published rows")
    p.add_argument("datasets", nargs="*", help=f"dataset documents (default: {', '.join(REFERENCE_DATASETS)})")
    p.add_argument("--csv", help="also write the table as CSV")
    p.add_argument("--no-reference", action="store_true", help="omit published comparison rows")
    _add_fit_flags(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
