"""Command-line experiment runner.

Subcommands reproduce the protocol study as plain CSV (one header row,
full double precision): ``ideal`` and ``noisy`` emit per-step traces,
``sweep`` scans the noise strength, ``table1`` solves the tolerable noise
threshold for every channel, and ``verify`` runs the consistency checks.
Every value flag can also be supplied through ``--config FILE`` holding
``key=value`` lines; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from qpanoise import qpa, verify
from qpanoise.channels import ChannelKind, channel_kind_from_name, make_channel
from qpanoise.qpa import (
    NoiseConfig,
    ProtocolTrace,
    PurificationAborted,
    ThresholdError,
    WIRE_NAMES,
    Wire,
    wire_from_name,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VERIFICATION = 3

TRACE_HEADER = ("n", "F", "one_minus_F", "p", "P", "xi")
SWEEP_HEADER = ("theta", "one_minus_F")
TABLE_HEADER = ("channel", "theta")

#: the nine channels of the threshold table, in report order
TABLE_KINDS = (
    ChannelKind.ROTATION_X,
    ChannelKind.ROTATION_Y,
    ChannelKind.ROTATION_Z,
    ChannelKind.BIT_FLIP,
    ChannelKind.BIT_PHASE_FLIP,
    ChannelKind.PHASE_FLIP,
    ChannelKind.DISPLACE_X,
    ChannelKind.DISPLACE_Y,
    ChannelKind.DISPLACE_Z_PLUS,
)

_CONFIG_KEYS = {
    "f-alpha": float,
    "channel": str,
    "theta": float,
    "steps": int,
    "location": str,
    "theta-min": float,
    "theta-max": float,
    "theta-count": int,
    "target": float,
    "out": str,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qpanoise", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, channel=False, theta=False, grid=False, target=False):
        p.add_argument("--f-alpha", type=float, default=None, help="intrusion level in [0, 1]")
        p.add_argument("--steps", type=int, default=None, help="number of purification steps")
        if channel:
            p.add_argument("--channel", default=None, help="channel name (see README)")
            p.add_argument(
                "--location",
                default=None,
                help="wire the noise acts on: " + ", ".join(WIRE_NAMES.values()),
            )
        if theta:
            p.add_argument("--theta", type=float, default=None, help="noise strength")
        if grid:
            p.add_argument("--theta-min", type=float, default=None)
            p.add_argument("--theta-max", type=float, default=None)
            p.add_argument("--theta-count", type=int, default=None)
        if target:
            p.add_argument("--target", type=float, default=None, help="target deviation 1-F")
        p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
        p.add_argument("--config", default=None, help="key=value file providing flag defaults")
        p.add_argument(
            "--plot",
            action="store_true",
            help="also render a figure next to the CSV (requires --out)",
        )

    add_common(sub.add_parser("ideal", help="noiseless purification trace"))
    add_common(sub.add_parser("noisy", help="purification trace under one noise channel"),
               channel=True, theta=True)
    add_common(sub.add_parser("sweep", help="final deviation versus noise strength"),
               channel=True, grid=True)
    add_common(sub.add_parser("table1", help="tolerable noise threshold for all channels"),
               target=True)
    p_verify = sub.add_parser("verify", help="run the consistency checks")
    p_verify.add_argument("--corrupt-kraus", action="store_true", help=argparse.SUPPRESS)
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if getattr(args, "config", None) is None:
        return
    path = Path(args.config)
    if not path.is_file():
        raise _UsageError(f"config file not found: {path}")
    for line_no, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{line_no}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise _UsageError(f"{path}:{line_no}: unknown config key {key!r}")
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            continue  # key belongs to a different subcommand
        if getattr(args, dest) is None:
            try:
                setattr(args, dest, _CONFIG_KEYS[key](value))
            except ValueError:
                raise _UsageError(f"{path}:{line_no}: bad value for {key}: {value!r}") from None


def _default(args: argparse.Namespace, dest: str, value):
    if getattr(args, dest) is None:
        setattr(args, dest, value)


def _require(args: argparse.Namespace, dest: str, flag: str):
    if getattr(args, dest) is None:
        raise _UsageError(f"{args.command} requires {flag}")


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_rows(out: str | None, header, rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _render(args: argparse.Namespace, rows, kind: str, title: str) -> None:
    if not args.plot:
        return
    if args.out is None:
        raise _UsageError("--plot requires --out")
    from qpanoise import plotting

    figure_path = str(Path(args.out).with_suffix(".png"))
    if kind == "trace":
        plotting.save_trace_figure(rows, figure_path, title)
    elif kind == "sweep":
        plotting.save_sweep_figure(rows, figure_path, title)
    else:
        plotting.save_threshold_figure(rows, figure_path, title)


def _trace_rows(trace: ProtocolTrace):
    return [
        (
            i,
            trace.fidelity[i],
            1.0 - trace.fidelity[i],
            trace.step_prob[i],
            trace.survival[i],
            trace.efficiency[i],
        )
        for i in range(trace.n_steps + 1)
    ]


def _noise_config(args: argparse.Namespace, theta: float) -> NoiseConfig:
    kind = channel_kind_from_name(args.channel)
    wire = wire_from_name(args.location)
    return NoiseConfig(make_channel(kind, theta), wire)


def _cmd_ideal(args) -> int:
    _default(args, "f_alpha", 0.95)
    _default(args, "steps", 10)
    trace = qpa.run_ideal(args.f_alpha, args.steps)
    rows = _trace_rows(trace)
    _write_rows(args.out, TRACE_HEADER, rows)
    _render(args, rows, "trace", f"ideal protocol, f_alpha={args.f_alpha:g}")
    return EXIT_OK


def _cmd_noisy(args) -> int:
    _default(args, "f_alpha", 0.95)
    _default(args, "steps", 10)
    _default(args, "location", WIRE_NAMES[Wire.ALICE_CONTROL])
    _require(args, "channel", "--channel")
    if args.channel.strip() == "none":
        trace = qpa.run_ideal(args.f_alpha, args.steps)
        title = f"noiseless run, f_alpha={args.f_alpha:g}"
    else:
        _require(args, "theta", "--theta")
        trace = qpa.run_noisy(args.f_alpha, _noise_config(args, args.theta), args.steps)
        title = f"{args.channel} at theta={args.theta:g}, f_alpha={args.f_alpha:g}"
    rows = _trace_rows(trace)
    _write_rows(args.out, TRACE_HEADER, rows)
    _render(args, rows, "trace", title)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    _default(args, "f_alpha", 0.95)
    _default(args, "steps", 5)
    _default(args, "theta_min", 0.0)
    _default(args, "theta_count", 33)
    _default(args, "location", WIRE_NAMES[Wire.ALICE_CONTROL])
    _require(args, "channel", "--channel")
    _require(args, "theta_max", "--theta-max")
    if args.theta_count < 2:
        raise _UsageError("--theta-count must be at least 2")
    if not args.theta_max > args.theta_min:
        raise _UsageError("--theta-max must exceed --theta-min")
    rows = []
    for theta in np.linspace(args.theta_min, args.theta_max, args.theta_count):
        trace = qpa.run_noisy(args.f_alpha, _noise_config(args, float(theta)), args.steps)
        rows.append((float(theta), 1.0 - trace.fidelity[-1]))
    _write_rows(args.out, SWEEP_HEADER, rows)
    _render(args, rows, "sweep",
            f"{args.channel}, n={args.steps}, f_alpha={args.f_alpha:g}")
    return EXIT_OK


def _cmd_table1(args) -> int:
    _default(args, "f_alpha", 0.95)
    _default(args, "steps", 5)
    _default(args, "target", 1e-4)
    rows = []
    for kind in TABLE_KINDS:
        theta = qpa.threshold_theta(kind, args.f_alpha, args.steps, args.target)
        rows.append((kind.value, theta))
    _write_rows(args.out, TABLE_HEADER, rows)
    _render(args, rows, "table",
            f"theta with 1-F={args.target:g} after n={args.steps}, f_alpha={args.f_alpha:g}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = verify.run_verification(corrupt_kraus=args.corrupt_kraus)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{status}  {result.name}: max deviation {result.max_deviation:.3e} "
            f"(tolerance {result.tolerance:.0e})"
        )
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"verification failed: {failed[0].name}", file=sys.stderr)
        return EXIT_VERIFICATION
    print("all checks passed")
    return EXIT_OK


_HANDLERS = {
    "ideal": _cmd_ideal,
    "noisy": _cmd_noisy,
    "sweep": _cmd_sweep,
    "table1": _cmd_table1,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args)
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PurificationAborted, ThresholdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
