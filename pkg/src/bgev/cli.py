"""Command-line interface.

Subcommands: ``eval`` (pointwise pdf/cdf/quantile), ``sample`` (seeded
draws), ``gof`` (KS/AD/Ljung-Box of a file against given parameters),
``fit`` (block-maxima pipeline with BGEV-vs-GEV comparison and plot data)
and ``sim`` (Monte Carlo study suite from a config file).

Exit codes: 0 success, 2 input error, 3 fit non-convergence, 4 internal
numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .data import BUNDLED, bundled_path
from .distribution import cdf, pdf, quantile, sample
from .gof import ad_statistic, ks_statistic, ljung_box
from .mle import InfeasibleStartError
from .params import BgevParams, ParameterError
from .pipeline import (
    START_PRESETS,
    InputDataError,
    block_maxima,
    comparison_to_csv,
    comparison_to_text,
    emit_plot_data,
    fit_and_compare,
    ingest,
    standardize,
)
from .sim import load_suite_config, reports_to_csv, reports_to_table, run_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NONCONVERGENCE = 3
EXIT_NUMERICAL = 4


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--xi", type=float, required=True, help="shape (nonzero)")
    p.add_argument("--mu", type=float, required=True, help="location")
    p.add_argument("--sigma", type=float, required=True, help="transform scale (> 0)")
    p.add_argument("--delta", type=float, required=True, help="bimodality shape (> -1)")


def _params_from(args) -> BgevParams:
    return BgevParams(xi=args.xi, mu=args.mu, sigma=args.sigma, delta=args.delta)


def _resolve_input(spec: str) -> str:
    if spec.startswith("bundled:"):
        return str(bundled_path(spec.split(":", 1)[1]))
    return spec


def cmd_eval(args) -> int:
    p = _params_from(args)
    out = sys.stdout
    if args.x is not None:
        out.write("x,pdf,cdf\n")
        for v in args.x:
            out.write(f"{_fmt(v)},{_fmt(float(pdf(v, p)))},{_fmt(float(cdf(v, p)))}\n")
    if args.q is not None:
        out.write("q,quantile\n")
        for v in args.q:
            out.write(f"{_fmt(v)},{_fmt(float(quantile(v, p)))}\n")
    if args.x is None and args.q is None:
        raise InputDataError("nothing to evaluate: pass --x and/or --q")
    return EXIT_OK


def cmd_sample(args) -> int:
    p = _params_from(args)
    draws = sample(args.n, p, args.seed)
    lines = "\n".join(_fmt(v) for v in draws) + "\n"
    if args.out:
        Path(args.out).write_text(lines, encoding="utf-8")
    else:
        sys.stdout.write(lines)
    return EXIT_OK


def cmd_gof(args) -> int:
    p = _params_from(args)
    series = ingest(_resolve_input(args.input), value_column=args.value_col, time_column=args.time_col)
    x = series.values
    ks = ks_statistic(x, lambda v: cdf(v, p))
    ad = ad_statistic(x, lambda v: cdf(v, p))
    lb = ljung_box(x, lags=args.ljung_box_lags)
    sys.stdout.write(f"n,{x.size}\n")
    sys.stdout.write(f"ks,{_fmt(ks)}\n")
    sys.stdout.write(f"ad,{_fmt(ad)}\n")
    sys.stdout.write(f"ljung_box_statistic,{_fmt(lb.statistic)}\n")
    sys.stdout.write(f"ljung_box_lags,{lb.lags}\n")
    sys.stdout.write(f"ljung_box_p_value,{_fmt(lb.p_value)}\n")
    return EXIT_OK


def cmd_fit(args) -> int:
    series = ingest(
        _resolve_input(args.input),
        value_column=args.value_col,
        time_column=args.time_col,
        missing=args.missing,
    )
    b = block_maxima(series, args.block_size)
    if b.dropped:
        print(f"note: dropped {b.dropped} trailing observations (partial block)", file=sys.stderr)
    if args.standardize:
        b = standardize(b)

    lb = ljung_box(b.maxima, lags=args.ljung_box_lags)
    start = None if args.start_preset == "auto" else START_PRESETS[args.start_preset]
    report = fit_and_compare(b, bgev_start=start)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    text = comparison_to_text(report)
    header = (
        f"blocks,{report.n}\n"
        f"block_size,{b.block_size}\n"
        f"standardized,{b.standardized}\n"
        f"ljung_box_statistic,{_fmt(lb.statistic)}\n"
        f"ljung_box_p_value,{_fmt(lb.p_value)}\n"
    )
    (out_dir / "report.txt").write_text(header + text, encoding="utf-8")
    (out_dir / "comparison.csv").write_text(comparison_to_csv(report), encoding="utf-8")
    emit_plot_data(report, b, out_dir, bins=args.bins)

    sys.stdout.write(header)
    sys.stdout.write(text)
    if lb.p_value < 0.01:
        print("warning: serial independence rejected at the 1% level", file=sys.stderr)
    if not (report.bgev.converged and report.gev.converged):
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def cmd_sim(args) -> int:
    cells = load_suite_config(args.config)
    reports, errors = run_suite(cells, parallelism=args.parallelism)
    csv_text = reports_to_csv(reports)
    table = reports_to_table(reports)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "results.csv").write_text(csv_text, encoding="utf-8")
    (out_dir / "table.txt").write_text(table, encoding="utf-8")
    sys.stdout.write(table)
    for idx, msg in errors:
        print(f"cell {idx} failed: {msg}", file=sys.stderr)
    return EXIT_NONCONVERGENCE if errors else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bgev", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate pdf/cdf/quantile at given points")
    _add_param_flags(p_eval)
    p_eval.add_argument("--x", type=float, nargs="+", help="points for pdf/cdf")
    p_eval.add_argument("--q", type=float, nargs="+", help="levels in (0,1) for quantiles")
    p_eval.set_defaults(func=cmd_eval)

    p_sample = sub.add_parser("sample", help="seeded draws")
    _add_param_flags(p_sample)
    p_sample.add_argument("-n", type=int, required=True, help="number of draws")
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--out", help="write draws here instead of stdout")
    p_sample.set_defaults(func=cmd_sample)

    p_gof = sub.add_parser("gof", help="goodness of fit of a file against given parameters")
    _add_param_flags(p_gof)
    p_gof.add_argument("--input", required=True, help="delimited file or bundled:<name>")
    p_gof.add_argument("--value-col", default=None, help="value column name or index")
    p_gof.add_argument("--time-col", default=None, help="time column name or index")
    p_gof.add_argument("--ljung-box-lags", type=int, default=10)
    p_gof.set_defaults(func=cmd_gof)

    p_fit = sub.add_parser("fit", help="block-maxima pipeline and BGEV-vs-GEV comparison")
    p_fit.add_argument("--input", required=True, help=f"delimited file or bundled:<name> ({'/'.join(BUNDLED)})")
    p_fit.add_argument("--value-col", default=None)
    p_fit.add_argument("--time-col", default=None)
    p_fit.add_argument("--missing", choices=("skip", "fail"), default="skip")
    p_fit.add_argument("--block-size", type=int, default=24)
    p_fit.add_argument("--standardize", action=argparse.BooleanOptionalAction, default=True)
    p_fit.add_argument("--ljung-box-lags", type=int, default=10)
    p_fit.add_argument("--start-preset", choices=("auto", *START_PRESETS), default="auto")
    p_fit.add_argument("--out-dir", default="bgev_out")
    p_fit.add_argument("--bins", type=int, default=None, help="histogram bin count override")
    p_fit.set_defaults(func=cmd_fit)

    p_sim = sub.add_parser("sim", help="Monte Carlo estimator study from a config file")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--parallelism", type=int, default=1)
    p_sim.add_argument("--out-dir", default="bgev_sim_out")
    p_sim.set_defaults(func=cmd_sim)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cols = [getattr(args, name, None) for name in ("value_col", "time_col")]
        for i, c in enumerate(cols):
            if isinstance(c, str) and c.lstrip("-").isdigit():
                setattr(args, ("value_col", "time_col")[i], int(c))
        return args.func(args)
    except (InputDataError, FileNotFoundError, KeyError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleStartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
