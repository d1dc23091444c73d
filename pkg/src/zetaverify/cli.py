"""Command-line surface.

Subcommands: enumerate (zero cache), verify (rectangle verification report
plus figure), multiplicity (one shrinking-circle count), plot-data
(columnar samples of Z / theta / |xi| plus figure).

Exit codes: 0 verified/ok, 1 discrepancy or incomplete run or unstable
scan, 2 usage or configuration error.  No other codes.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time

import numpy as np

from . import contours
from .config import ConfigError, RunConfig, apply_config_file
from .decide import (
    VERDICT_VERIFIED,
    off_line_index_set,
    verify_range,
    zeros_for_range,
)
from .reporting import (
    atomic_write_text,
    build_report,
    read_zero_cache,
    render_series_figure,
    render_verification_figure,
    report_to_csv,
    report_to_json,
    write_zero_cache,
)
from .siegel import theta_exact, z_reference
from .special import EvalAccuracy, XiEvaluator, xi
from .zeros import UnstableScan, enumerate_zeros


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaverify",
        description="Critical-line zero enumeration and argument-principle "
        "rectangle verification for the Riemann zeta function.",
    )
    parser.add_argument("--config", help="key=value defaults file")
    parser.add_argument("--cache", help="zero cache CSV path")
    parser.add_argument("--tol", type=float, help="zero refinement tolerance")
    parser.add_argument("--oversample", type=int, help="scan oversampling factor")
    parser.add_argument("--em-terms", type=int, help="Euler-Maclaurin cutoff floor")
    parser.add_argument("--em-order", type=int, help="Bernoulli correction terms")
    parser.add_argument("--quad-nodes", type=int, help="Gauss-Legendre nodes per panel")
    parser.add_argument("--xi-floor", type=float, help="contour magnitude floor")

    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="enumerate zeros up to a height")
    p_enum.add_argument("--tmax", type=float, required=True)

    p_ver = sub.add_parser("verify", help="verify rectangles 1..N")
    p_ver.add_argument("--nmax", type=int, required=True)
    p_ver.add_argument("--format", choices=["json", "csv"], default="json")
    p_ver.add_argument("--out", help="report path (default report.<format>)")
    p_ver.add_argument("--no-figure", action="store_true",
                       help="skip the PNG next to the report")
    p_ver.add_argument(
        "--inject-zero",
        metavar="RE:IM",
        help="test-only: plant a synthetic off-line zero at re+im*i",
    )

    p_mult = sub.add_parser("multiplicity", help="multiplicity of one zero")
    p_mult.add_argument("--index", type=int, required=True)

    p_plot = sub.add_parser("plot-data", help="sample a function to a file")
    p_plot.add_argument("--what", choices=["Z", "theta", "xi_abs"], required=True)
    p_plot.add_argument("--range", dest="range_", metavar="A:B", required=True)
    p_plot.add_argument("--step", type=float, required=True)
    p_plot.add_argument("--out", help="output stem (default plot_<what>)")
    p_plot.add_argument("--no-figure", action="store_true")
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        apply_config_file(cfg, args.config)
    for key, attr in [
        ("tol", "tol"),
        ("oversample", "oversample"),
        ("em_terms", "em_terms"),
        ("em_order", "em_order"),
        ("quad_nodes", "quad_nodes"),
        ("xi_floor", "xi_floor"),
    ]:
        v = getattr(args, attr, None)
        if v is not None:
            setattr(cfg, key, v)
    if args.cache:
        cfg.cache_path = args.cache
    if args.command == "enumerate":
        cfg.t_max = args.tmax
        cfg.validate(need="t_max")
    elif args.command == "verify":
        cfg.n_max = args.nmax
        cfg.report_format = args.format
        if args.inject_zero:
            cfg.injected_zero = _parse_point(args.inject_zero)
        cfg.validate(need="n_max")
    else:
        cfg.validate()
    return cfg


def _parse_point(text: str) -> complex:
    try:
        re_, im_ = text.split(":")
        return complex(float(re_), float(im_))
    except ValueError as exc:
        raise ConfigError(f"expected RE:IM, got {text!r}") from exc


def _accuracy(cfg: RunConfig) -> EvalAccuracy:
    return EvalAccuracy(em_terms=cfg.em_terms, em_order=cfg.em_order)


def _load_or_build_zeros(cfg: RunConfig, n_needed: int):
    """Reuse the cache when it already covers the request, else rebuild."""
    path = cfg.resolved_cache_path()
    if os.path.exists(path):
        zeros = read_zero_cache(path)
        if len(zeros) >= n_needed:
            return zeros
    zeros = zeros_for_range(n_needed - 1, cfg.tol, cfg.oversample, _accuracy(cfg))
    write_zero_cache(path, zeros)
    return zeros


def _cmd_enumerate(cfg: RunConfig) -> int:
    try:
        zeros = enumerate_zeros(
            cfg.t_max, cfg.tol, cfg.oversample, _accuracy(cfg)
        ) if cfg.t_max > 2.0 else []
    except UnstableScan as exc:
        print(f"unstable scan: {exc}", file=sys.stderr)
        return 1
    write_zero_cache(cfg.resolved_cache_path(), zeros)
    print(f"{len(zeros)} zeros <= {cfg.t_max:g}")
    return 0


def _cmd_verify(cfg: RunConfig, args) -> int:
    t0 = time.perf_counter()
    injected = [cfg.injected_zero] if cfg.injected_zero is not None else []
    ev = XiEvaluator(_accuracy(cfg), cfg.xi_floor, injected)
    zeros = _load_or_build_zeros(cfg, cfg.n_max + 1) if cfg.n_max > 0 else []
    run = verify_range(cfg.n_max, zeros, ev, cfg.quad_nodes)
    report = build_report(run, zeros, cfg.snapshot(), time.perf_counter() - t0)
    out = args.out or f"report.{cfg.report_format}"
    text = report_to_json(report) if cfg.report_format == "json" else report_to_csv(report)
    atomic_write_text(out, text)
    if not args.no_figure and run.records:
        render_verification_figure(os.path.splitext(out)[0] + ".png", report)
    print(f"verdict: {run.verdict} (report: {out})")
    if run.verdict != VERDICT_VERIFIED:
        suspects = sorted(
            r.n for r in run.records if r.status == "off_line_suspected"
        )
        if suspects:
            print(f"suspect rectangles: {suspects}", file=sys.stderr)
        return 1
    return 0


def _cmd_multiplicity(cfg: RunConfig, args) -> int:
    if args.index < 1:
        raise ConfigError("--index must be >= 1")
    ev = XiEvaluator(_accuracy(cfg), cfg.xi_floor)
    zeros = _load_or_build_zeros(cfg, args.index + 1)
    value, counts, j0 = contours.shrinking_circle_counts(
        args.index, zeros, ev, cfg.quad_nodes
    )
    gamma = zeros[args.index - 1].ordinate
    print(
        f"n={args.index} gamma={gamma:.12f} multiplicity={value} "
        f"j0={j0} counts={counts}"
    )
    return 0


def _cmd_plot_data(cfg: RunConfig, args) -> int:
    a, _, b = args.range_.partition(":")
    try:
        a, b = float(a), float(b)
    except ValueError:
        raise ConfigError(f"bad --range {args.range_!r}, expected A:B")
    h = args.step
    if b < a or h <= 0:
        raise ConfigError("need range A <= B and step > 0")
    n_rows = int(math.floor((b - a) / h + 1e-9)) + 1
    if n_rows > 10 ** 7:
        raise ConfigError(f"{n_rows} rows exceeds the 1e7 cap")
    ts = a + h * np.arange(n_rows)
    acc = _accuracy(cfg)
    if args.what == "Z":
        values = [z_reference(t, acc).value for t in ts]
    elif args.what == "theta":
        values = [theta_exact(t) for t in ts]
    else:  # |xi| on the critical line, reflected so it is even in t
        values = [abs(xi(0.5 + 1j * abs(t), acc)) for t in ts]
    stem = args.out or f"plot_{args.what}"
    if stem.endswith(".dat"):
        stem = stem[:-4]
    lines = [f"# what={args.what} range={a:g}:{b:g} step={h:g} rows={n_rows}"]
    lines += [f"{t:.10f} {v:.12e}" for t, v in zip(ts, values)]
    atomic_write_text(stem + ".dat", "\n".join(lines) + "\n")
    if not args.no_figure:
        render_series_figure(stem + ".png", args.what, ts, values)
    print(f"{n_rows} rows -> {stem}.dat")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _config_from_args(args)
        if args.command == "enumerate":
            return _cmd_enumerate(cfg)
        if args.command == "verify":
            return _cmd_verify(cfg, args)
        if args.command == "multiplicity":
            return _cmd_multiplicity(cfg, args)
        return _cmd_plot_data(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except UnstableScan as exc:
        print(f"unstable scan: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
