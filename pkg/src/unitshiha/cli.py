"""Command-line interface.

Subcommands: ``datasets`` (list bundled data), ``dist`` (evaluate the unit
Shiha distribution), ``fit`` (maximum-likelihood estimates), ``gof`` (fits
plus goodness-of-fit table), ``analyze`` (full report incl. plot data),
``simulate`` (estimator-quality study).

Exit codes: 0 success, 2 usage error, 3 data ingestion error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import families, fitting, gof, report, simulation
from .core import ConvergenceError, StressStrengthInput, UShParams
from .core import (ush_cdf, ush_entropy, ush_hazard, ush_moment_summary,
                   ush_pdf, ush_quantile, ush_stress_strength)
from .datasets import BUNDLED_DATASETS, IngestionError, load_dataset

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INGESTION = 3
EXIT_NUMERICAL = 4


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitshiha",
        description="Unit Shiha distribution: evaluation, fitting, "
                    "goodness-of-fit benchmarking, and simulation studies.",
    )
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")
    parser.add_argument("--precision", type=int, default=None,
                        help="digits in numeric output (default: 6 significant "
                             "for dist, 4 decimals in tables)")
    parser.add_argument("--out", default=None, help="write output to this path")
    parser.add_argument("--format", choices=["text", "structured", "plot-data"],
                        default="text", help="output format for reports")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("datasets", help="list bundled datasets")

    p_dist = sub.add_parser("dist", help="evaluate the unit Shiha distribution")
    p_dist.add_argument("what", choices=["pdf", "cdf", "quantile", "hazard",
                                         "moments", "entropy", "stress-strength"])
    p_dist.add_argument("--omega", type=float, required=True)
    p_dist.add_argument("--eta", type=float, required=True)
    p_dist.add_argument("--x", type=float, nargs="+", help="evaluation points")
    p_dist.add_argument("--p", type=float, nargs="+", help="probabilities")
    p_dist.add_argument("--omega2", type=float, help="stress omega")
    p_dist.add_argument("--eta2", type=float, help="stress eta")

    for name, help_text in [("fit", "maximum-likelihood fits"),
                            ("gof", "fits plus information criteria and KS test"),
                            ("analyze", "full analysis report with plot data")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("dataset", help="bundled name (data1..data4) or file path")
        p.add_argument("--family", action="append", default=None,
                       help="family tag or 'all' (repeatable; default all)")
        p.add_argument("--divide-by", type=float, default=None,
                       help="divide observations by this before analysis")

    p_sim = sub.add_parser("simulate", help="estimator-quality study")
    p_sim.add_argument("--preset", choices=["desk", "paper"], default=None,
                       help="desk: M=200, B=50; paper: publication-scale M=1000, B=100")
    p_sim.add_argument("--M", type=int, default=None, help="replications")
    p_sim.add_argument("--B", type=int, default=None, help="bootstrap resamples")
    p_sim.add_argument("--cell", action="append", default=None,
                       metavar="OMEGA,ETA",
                       help="parameter point (repeatable; default: benchmark grid)")
    p_sim.add_argument("--sizes", default=None,
                       help="comma-separated sample sizes (default 30,60,100,150,200)")
    p_sim.add_argument("--sampler", choices=["mixture", "rejection"],
                       default="mixture")
    p_sim.add_argument("--no-coverage", action="store_true",
                       help="skip bootstrap coverage (much faster)")
    return parser


def _params(args) -> UShParams:
    try:
        return UShParams(args.omega, args.eta, allow_boundary=True)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _sig(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


def _cmd_dist(args, out) -> int:
    digits = args.precision if args.precision is not None else 6
    p = _params(args)
    what = args.what
    if what in ("pdf", "cdf", "hazard"):
        if not args.x:
            raise _UsageError(f"dist {what} requires --x")
        fn = {"pdf": ush_pdf, "cdf": ush_cdf, "hazard": ush_hazard}[what]
        for x in args.x:
            out.write(_sig(float(fn(x, p)), digits) + "\n")
    elif what == "quantile":
        if not args.p:
            raise _UsageError("dist quantile requires --p")
        if any(not 0.0 < q < 1.0 for q in args.p):
            raise _UsageError("quantile probabilities must lie strictly in (0, 1)")
        for q in args.p:
            out.write(_sig(float(ush_quantile(q, p)), digits) + "\n")
    elif what == "moments":
        m = ush_moment_summary(p)
        for label, v in [("mean", m.mean), ("variance", m.variance),
                         ("skewness", m.skewness), ("kurtosis", m.kurtosis),
                         ("mu1", m.raw_moments[0]), ("mu2", m.raw_moments[1]),
                         ("mu3", m.raw_moments[2]), ("mu4", m.raw_moments[3])]:
            out.write(f"{label} {_sig(v, digits)}\n")
    elif what == "entropy":
        out.write(_sig(ush_entropy(p), digits) + "\n")
    elif what == "stress-strength":
        if args.omega2 is None or args.eta2 is None:
            raise _UsageError("stress-strength requires --omega2 and --eta2")
        stress = UShParams(args.omega2, args.eta2, allow_boundary=True)
        r = ush_stress_strength(StressStrengthInput(strength=p, stress=stress))
        out.write(_sig(r, digits) + "\n")
    return EXIT_OK


def _families_arg(args):
    if args.family is None or "all" in args.family:
        return "all"
    return args.family


def _cmd_fit(args, out) -> int:
    digits = args.precision if args.precision is not None else 4
    sample = load_dataset(args.dataset, divisor=args.divide_by)
    which = _families_arg(args)
    tags = (list(families.FAMILY_ORDER) if which == "all"
            else [families.get_family(f).tag for f in which])
    any_ok = False
    for tag in tags:
        fit = fitting.fit_mle(sample, tag)
        if not fit.converged:
            out.write(f"{tag}: FAILED ({fit.message})\n")
            continue
        any_ok = True
        est = ", ".join(f"{name}={v:.{digits}f}" + (" [at bound]" if ab else "")
                        for name, v, ab in zip(fit.family.param_names,
                                               fit.estimates.values, fit.at_bound))
        out.write(f"{tag}: {est}  loglik={fit.log_lik:.{digits}f}  "
                  f"iterations={fit.iterations}\n")
    if not any_ok:
        raise ConvergenceError("no family could be fitted")
    return EXIT_OK


def _cmd_gof(args, out) -> int:
    digits = args.precision if args.precision is not None else 4
    sample = load_dataset(args.dataset, divisor=args.divide_by)
    rep = report.analyze_dataset(sample, _families_arg(args))
    out.write(report.render_gof_table(rep.reports, digits) + "\n")
    for tag, msg in sorted(rep.failures.items()):
        out.write(f"[failed] {tag}: {msg}\n")
    return EXIT_OK


def _cmd_analyze(args, out) -> int:
    digits = args.precision if args.precision is not None else 4
    sample = load_dataset(args.dataset, divisor=args.divide_by)
    rep = report.analyze_dataset(sample, _families_arg(args))
    if args.format == "plot-data":
        if args.out is None:
            raise _UsageError("--format plot-data requires --out DIRECTORY")
        report.emit_report(rep, "plot-data", args.out)
        out.write(f"plot data written to {args.out}\n")
        return EXIT_OK
    rendered = report.emit_report(rep, args.format, args.out, precision=digits)
    if rendered is not None:
        out.write(rendered + ("\n" if not rendered.endswith("\n") else ""))
    return EXIT_OK


def _parse_cells(args):
    if not args.cell:
        return [UShParams(w, e) for w, e in simulation.TABLE_POINTS]
    points = []
    for spec_str in args.cell:
        try:
            w, e = (float(t) for t in spec_str.split(","))
            points.append(UShParams(w, e, allow_boundary=True))
        except ValueError as exc:
            raise _UsageError(f"bad --cell {spec_str!r}: expected OMEGA,ETA") from exc
    return points


def _cmd_simulate(args, out) -> int:
    digits = args.precision if args.precision is not None else 4
    m, b = args.M, args.B
    if args.preset == "desk":
        m = m or 200
        b = b or 50
    elif args.preset == "paper":
        m = m or 1000
        b = b or 100
    if m is None or b is None:
        raise _UsageError("simulate requires --preset or both --M and --B")
    sizes = (tuple(int(t) for t in args.sizes.split(","))
             if args.sizes else simulation.TABLE_SIZES)
    config = simulation.SimConfig(
        true_params=tuple(_parse_cells(args)),
        sample_sizes=sizes, replications=m, bootstrap_resamples=b,
        seed=args.seed, sampler=args.sampler,
    )
    results = simulation.run_study(config, with_coverage=not args.no_coverage)
    out.write(report.render_simulation_table(results, digits) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK

    writer = sys.stdout
    close = False
    if args.out is not None and args.command not in ("analyze",):
        writer = open(args.out, "w", encoding="utf-8")
        close = True
    try:
        if args.command == "datasets":
            for name, spec in sorted(BUNDLED_DATASETS.items()):
                sample = load_dataset(name)
                writer.write(
                    f"{name}: n={spec.n}, divisor={spec.divisor or 1}, "
                    f"range=[{sample.values.min():.4f}, {sample.values.max():.4f}]"
                    f"  ({spec.title})\n")
            return EXIT_OK
        handler = {
            "dist": _cmd_dist, "fit": _cmd_fit, "gof": _cmd_gof,
            "analyze": _cmd_analyze, "simulate": _cmd_simulate,
        }[args.command]
        return handler(args, writer)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IngestionError as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return EXIT_INGESTION
    except (ConvergenceError, FloatingPointError, np.linalg.LinAlgError,
            RuntimeError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if close:
            writer.close()


if __name__ == "__main__":
    sys.exit(main())
