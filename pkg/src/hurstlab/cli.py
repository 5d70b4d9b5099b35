"""Command-line front end.

Subcommands: gen, estimate, study, converge, slide, ingest, serve.
Every command is deterministic given its flags (seeds are always explicit).
Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 estimation or
numerical error.
"""

import argparse
import json
import os
import sys

from .convergence import ConvergenceConfig, WindowConfig, converge, converge_mean, sliding_window, track_to_csv, track_to_json
from .errors import HurstLabError, InvalidArgumentError
from .estimators import EstimatorId, estimate
from .ingestion import BinningSpec, bin_trace, parse_trace
from .seriesio import atomic_write_text, dumps_series, read_series
from .study import StudyConfig, run_study
from .synthesis import FgnSpec, derive_seed, generate_batch

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ESTIMATION = 3

_METHOD_CHOICES = [m.value for m in EstimatorId]


class _CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for data."""

    def error(self, message):
        raise _CliError(EXIT_USAGE, f"{self.prog}: error: {message}")


def _read_series_file(path):
    try:
        return read_series(path)
    except OSError as exc:
        raise _CliError(EXIT_DATA, f"{path}: {exc}") from exc
    except HurstLabError as exc:
        raise _CliError(EXIT_DATA, f"{path}: {exc}") from exc


def _build_parser():
    parser = _Parser(prog="hurstlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="synthesize exact fGn series files")
    gen.add_argument("--hurst", type=float, required=True)
    gen.add_argument("--length", type=int, required=True)
    gen.add_argument("--variance", type=float, default=1.0)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--out", required=True, help="output path prefix (suffix -000, -001, ...)")

    est = sub.add_parser("estimate", help="estimate H from series files")
    grp = est.add_mutually_exclusive_group(required=True)
    grp.add_argument("--method", choices=_METHOD_CHOICES)
    grp.add_argument("--all", action="store_true", help="run every estimator")
    est.add_argument("inputs", nargs="+", metavar="SERIES")

    study = sub.add_parser("study", help="run the Monte-Carlo accuracy study")
    study.add_argument("--config", help="JSON file with study settings (flags override)")
    study.add_argument("--h", type=float, nargs="+", dest="h_grid")
    study.add_argument("--exp", type=int, nargs="+", dest="length_exponents")
    study.add_argument("--replicates", type=int)
    study.add_argument("--estimators", nargs="+", choices=_METHOD_CHOICES + ["all"])
    study.add_argument("--seed", type=int, dest="base_seed")
    study.add_argument("--jobs", type=int, default=None)
    study.add_argument("--out-dir", required=True)

    conv = sub.add_parser("converge", help="growing-prefix convergence track")
    conv.add_argument("--method", choices=_METHOD_CHOICES, required=True)
    conv.add_argument("--tau0", type=int, default=64)
    conv.add_argument("--tau-u", type=int, default=200, dest="tau_u")
    conv.add_argument("--jobs", type=int, default=None)
    conv.add_argument("--out", help="track CSV path (stdout when omitted)")
    conv.add_argument("--json-out", help="also write the JSON track variant here")
    conv.add_argument("inputs", nargs="+", metavar="SERIES")

    slide = sub.add_parser("slide", help="sliding-window track over one series")
    slide.add_argument("--method", choices=_METHOD_CHOICES, required=True)
    slide.add_argument("--window", type=int, required=True)
    slide.add_argument("--step", type=int, default=None, help="defaults to --window")
    slide.add_argument("--out", help="track CSV path (stdout when omitted)")
    slide.add_argument("--json-out")
    slide.add_argument("input", metavar="SERIES")

    ingest = sub.add_parser("ingest", help="bin a packet trace into a series file")
    ingest.add_argument("--bin-width", type=float, default=0.01)
    ingest.add_argument("--value", choices=["packet_count", "byte_count"], default="packet_count")
    ingest.add_argument("--out", required=True)
    ingest.add_argument("trace", metavar="TRACE")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _cmd_gen(args):
    try:
        spec = FgnSpec(args.hurst, args.length, args.variance, 0)
        if args.count < 1:
            raise InvalidArgumentError("--count must be >= 1")
        if args.seed < 0:
            raise InvalidArgumentError("--seed must be non-negative")
        batch = generate_batch(spec, args.count, args.seed)
    except InvalidArgumentError as exc:
        raise _CliError(EXIT_USAGE, f"hurstlab gen: {exc}") from exc
    print("# hurstlab-manifest v1")
    print("file,length,seed")
    for i, series in enumerate(batch):
        path = f"{args.out}-{i:03d}"
        atomic_write_text(path, dumps_series(series))
        print(f"{path},{len(series)},{derive_seed(args.seed, i)}")
    return EXIT_OK


def _cmd_estimate(args):
    methods = list(EstimatorId) if args.all else [EstimatorId(args.method)]
    print("# hurstlab-estimates v1")
    print("file,method,h_hat,flags")
    failed = False
    for path in args.inputs:
        series = _read_series_file(path)
        for method in methods:
            try:
                result = estimate(method, series)
            except HurstLabError as exc:
                failed = True
                print(f"{path},{method.value},,error:{exc.code}")
                continue
            print(f"{path},{method.value},{result.h_hat!r},{';'.join(result.flags)}")
    return EXIT_ESTIMATION if failed else EXIT_OK


def _load_study_config(args):
    settings = {}
    if args.config:
        try:
            with open(args.config) as fh:
                settings.update(json.load(fh))
        except OSError as exc:
            raise _CliError(EXIT_DATA, f"{args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise _CliError(EXIT_DATA, f"{args.config}: invalid JSON: {exc}") from exc
    for key in ("h_grid", "length_exponents", "replicates", "base_seed"):
        if getattr(args, key, None) is not None:
            settings[key] = getattr(args, key)
    if args.estimators is not None:
        settings["estimators"] = args.estimators
    if settings.get("estimators") in (None, ["all"], "all"):
        settings.pop("estimators", None)
    allowed = {"h_grid", "length_exponents", "replicates", "estimators", "base_seed"}
    unknown = set(settings) - allowed
    if unknown:
        raise _CliError(EXIT_USAGE, f"hurstlab study: unknown config keys {sorted(unknown)}")
    try:
        return StudyConfig(**settings)
    except (InvalidArgumentError, ValueError, TypeError) as exc:
        raise _CliError(EXIT_USAGE, f"hurstlab study: {exc}") from exc


def _cmd_study(args):
    config = _load_study_config(args)
    report = run_study(config, jobs=args.jobs)
    os.makedirs(args.out_dir, exist_ok=True)
    atomic_write_text(os.path.join(args.out_dir, "cells.csv"), report.to_cells_csv())
    atomic_write_text(os.path.join(args.out_dir, "nmin.csv"), report.to_nmin_csv())
    atomic_write_text(os.path.join(args.out_dir, "report.json"), report.to_json())
    sys.stdout.write(report.to_nmin_csv())
    return EXIT_OK


def _emit_track(args, track):
    csv_text = track_to_csv(track)
    if args.out:
        atomic_write_text(args.out, csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.json_out:
        atomic_write_text(args.json_out, track_to_json(track))
    return EXIT_ESTIMATION if track.gap_count else EXIT_OK


def _cmd_converge(args):
    try:
        cfg = ConvergenceConfig(args.method, args.tau0, args.tau_u)
    except InvalidArgumentError as exc:
        raise _CliError(EXIT_USAGE, f"hurstlab converge: {exc}") from exc
    series = [_read_series_file(p) for p in args.inputs]
    try:
        if len(series) == 1:
            track = converge(series[0], cfg)
        else:
            track = converge_mean(series, cfg, jobs=args.jobs)
    except HurstLabError as exc:
        raise _CliError(EXIT_ESTIMATION, f"hurstlab converge: {exc}") from exc
    return _emit_track(args, track)


def _cmd_slide(args):
    try:
        cfg = WindowConfig(args.method, args.window, args.step if args.step is not None else args.window)
    except InvalidArgumentError as exc:
        raise _CliError(EXIT_USAGE, f"hurstlab slide: {exc}") from exc
    series = _read_series_file(args.input)
    try:
        track = sliding_window(series, cfg)
    except HurstLabError as exc:
        raise _CliError(EXIT_ESTIMATION, f"hurstlab slide: {exc}") from exc
    return _emit_track(args, track)


def _cmd_ingest(args):
    try:
        spec = BinningSpec(args.bin_width, args.value)
    except InvalidArgumentError as exc:
        raise _CliError(EXIT_USAGE, f"hurstlab ingest: {exc}") from exc
    try:
        with open(args.trace, "rb") as fh:
            records = parse_trace(fh.read())
        series = bin_trace(records, spec)
    except OSError as exc:
        raise _CliError(EXIT_DATA, f"{args.trace}: {exc}") from exc
    except HurstLabError as exc:
        raise _CliError(EXIT_DATA, f"{args.trace}: {exc}") from exc
    atomic_write_text(args.out, dumps_series(series))
    duration = records[-1].timestamp - records[0].timestamp
    print("# hurstlab-ingest v1")
    print("records,duration,length")
    print(f"{len(records)},{duration!r},{len(series)}")
    return EXIT_OK


def _cmd_serve(args):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "estimate": _cmd_estimate,
    "study": _cmd_study,
    "converge": _cmd_converge,
    "slide": _cmd_slide,
    "ingest": _cmd_ingest,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
