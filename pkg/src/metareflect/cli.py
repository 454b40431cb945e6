"""Command-line driver: ``metareflect {sweep-length,sweep-tx,point,validate}``.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 compute error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from . import experiments as ex
from .analytic import NetworkConfig
from .errors import MetareflectError
from .geometry import Point2
from .montecarlo import DEFAULT_SAMPLES, SampleSpec
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

log = logging.getLogger("metareflect")

# Per-subcommand defaults; a config file and then flags override these.
DEFAULTS = {
    "sweep-length": {"rnet": 30.0, "tx": (0.0, 3.0), "rx": (20.0, 20.0), "lengths": list(ex.DEFAULT_LENGTHS)},
    "sweep-tx": {"rnet": 30.0, "rx": (0.0, 0.0), "txx": list(ex.DEFAULT_TX_X), "ty": ex.SWEEP_TX_Y, "length": 5.0},
    "point": {"rnet": 30.0, "tx": (0.0, 3.0), "rx": (20.0, 20.0), "length": 5.0},
    "validate": {"rnet": 30.0, "length": 5.0, "configs": 100},
}
COMMON = {"samples": DEFAULT_SAMPLES, "seed": 0, "tol": 1e-9, "workers": 1, "out": None, "json": False}


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    return x, y


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metareflect", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "sweep-length": "analytic and MC probabilities versus object length",
        "sweep-tx": "probabilities versus transmitter abscissa, Tx=(x, ty), Rx fixed",
        "point": "one configuration, one length",
        "validate": "cross-check analytic results against MC on random configurations",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", help="JSON file of option defaults (flags win)")
        p.add_argument("--show-config", action="store_true", help="print effective options and exit")
        p.add_argument("--rnet", type=float, help="network radius [m]")
        p.add_argument("--samples", type=int, help="Monte Carlo samples per row")
        p.add_argument("--seed", type=int, help="base seed; row i uses seed+i")
        p.add_argument("--tol", type=float, help="relative quadrature tolerance")
        p.add_argument("--workers", type=int, help="threads for Monte Carlo")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--json", action="store_true", default=None, help="write JSON records instead of CSV")
        if name in ("sweep-length", "point"):
            p.add_argument("--tx", type=_pair, help="transmitter 'x,y'")
        if name != "validate":
            p.add_argument("--rx", type=_pair, help="receiver 'x,y'")
        if name == "sweep-length":
            p.add_argument("--lengths", type=_floats, help="object lengths, comma separated")
        else:
            p.add_argument("--length", type=float, help="object length [m]")
        if name == "sweep-tx":
            p.add_argument("--txx", type=_floats, help="transmitter abscissae, comma separated")
            p.add_argument("--ty", type=float, help="transmitter ordinate")
        if name == "validate":
            p.add_argument("--configs", type=int, help="number of random configurations")
    return parser


def effective_options(args: argparse.Namespace) -> dict:
    opts = dict(COMMON)
    opts.update(DEFAULTS[args.command])
    if args.config:
        try:
            with open(args.config) as fh:
                file_opts = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}") from exc
        unknown = set(file_opts) - set(opts)
        if unknown:
            raise UsageError(f"unknown keys in config file: {sorted(unknown)}")
        opts.update(file_opts)
    for key in opts:
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    return opts


def make_spec(command: str, opts: dict) -> ex.ExperimentSpec:
    try:
        samples = SampleSpec(int(opts["samples"]), int(opts["seed"]), int(opts["workers"]))
        quad = QuadratureSpec(rel_tol=float(opts["tol"]))
        rnet = float(opts["rnet"])
        if command == "validate":
            cfg = replace(ex.REFERENCE_CONFIG, r_net=rnet)
        elif command == "sweep-tx":
            # Tx moves per row; ExperimentSpec.cfg holds the first row's geometry.
            if not opts["txx"]:
                raise UsageError("--txx needs at least one value")
            cfg = NetworkConfig(rnet, Point2(float(opts["txx"][0]), float(opts["ty"])), Point2(*opts["rx"]))
        else:
            cfg = NetworkConfig(rnet, Point2(*opts["tx"]), Point2(*opts["rx"]))
        return ex.ExperimentSpec(
            mode=ex.Mode(command),
            cfg=cfg,
            lengths=tuple(float(v) for v in opts.get("lengths", ex.DEFAULT_LENGTHS)),
            tx_x_values=tuple(float(v) for v in opts.get("txx", ex.DEFAULT_TX_X)),
            sample_spec=samples,
            quad=quad,
            output_path=opts["out"],
            length=float(opts.get("length", 5.0)),
            tx_y=float(opts.get("ty", ex.SWEEP_TX_Y)),
            n_configs=int(opts.get("configs", 100)),
        )
    except MetareflectError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opts = effective_options(args)
        if args.show_config:
            print(json.dumps(opts, indent=2, sort_keys=True))
            return EXIT_OK
        spec = make_spec(args.command, opts)
        if spec.mode is ex.Mode.SWEEP_TX:
            ex.sweep_tx_configs(spec)
    except (UsageError, MetareflectError) as exc:
        print(f"metareflect {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    fmt = ex.rows_to_json if opts["json"] else ex.rows_to_csv
    try:
        if spec.mode is ex.Mode.VALIDATE:
            summary = ex.run_validate(spec)
            for line in summary.lines():
                print(line)
            if spec.output_path is not None:
                _emit(fmt(summary.rows), spec.output_path)
            return EXIT_OK if summary.passed else EXIT_VALIDATION
        runner = {
            ex.Mode.SWEEP_LENGTH: ex.run_sweep_length,
            ex.Mode.SWEEP_TX: ex.run_sweep_tx,
            ex.Mode.POINT: ex.run_point,
        }[spec.mode]
        rows = runner(spec)
    except MetareflectError as exc:
        print(f"metareflect {args.command}: compute error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    try:
        _emit(fmt(rows), spec.output_path)
    except OSError as exc:
        print(f"metareflect {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
