"""Command-line interface.

Subcommands: baseline (build a profile from a log), simulate (generate a
synthetic operator log), replay (run the pipeline offline over a log),
report (per-segment entropy statistics from a trace), serve (live session
service). Exit code 0 on success, 1 on faults, with the fault message on
stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .baseline import MIN_BASELINE_ERRORS, run_baseline
from .dpu import ProfileUpdate
from .entropy import EntropyConfig, EntropyConfigError
from .profile import BaselineError, ProfileDocument, ProfileError, default_profile, load_profile, save_profile
from .replay import run_session
from .report import SegmentSpec, format_table, segment_stats
from .session import EntropyTick, SessionConfig, WaisConfig
from .simulate import DriverModel, ScheduleSegment, SimulationError, simulate_log
from .telemetry import TelemetryError, read_log, write_log
from .trace import TraceFormatError, read_trace, write_trace
from .wais import TransitionEvent


class CliError(Exception):
    """A fault the CLI reports as message + exit code 1."""


def _parse_schedule(text: str) -> tuple[ScheduleSegment, ...]:
    """Parse "duration:multiplier,duration:multiplier,..." (seconds)."""
    segments = []
    for part in text.split(","):
        try:
            duration_s, multiplier = part.split(":")
            segments.append(ScheduleSegment(float(duration_s), float(multiplier)))
        except ValueError as exc:
            raise CliError(f"bad schedule segment {part!r}: expected DURATION:MULTIPLIER") from exc
    return tuple(segments)


def _parse_segments(text: str) -> list[SegmentSpec]:
    """Parse "label:duration,label:duration,..." (seconds)."""
    specs = []
    for part in text.split(","):
        try:
            label, duration_s = part.rsplit(":", 1)
            specs.append(SegmentSpec(label, float(duration_s)))
        except ValueError as exc:
            raise CliError(f"bad segment {part!r}: expected LABEL:DURATION") from exc
    return specs


def _add_session_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--period", type=float, default=2.5, help="entropy period in seconds")
    parser.add_argument(
        "--weights",
        type=float,
        nargs=2,
        default=(0.5, 0.5),
        metavar=("W_LIN", "W_ANG"),
        help="per-dimension entropy weights",
    )
    parser.add_argument("--threshold", type=float, default=0.6, help="WAIS threshold")
    parser.add_argument("--wais-window", type=int, default=5, help="WAIS moving-average window")
    parser.add_argument("--hysteresis", type=float, default=0.0, help="WAIS hysteresis band")
    parser.add_argument("--no-dpu", action="store_true", help="disable profile adaptation")


def _build_config(args: argparse.Namespace) -> SessionConfig:
    try:
        return SessionConfig(
            entropy=EntropyConfig(period_s=args.period, weights=tuple(args.weights)),
            wais=WaisConfig(
                threshold=args.threshold,
                window=args.wais_window,
                hysteresis=args.hysteresis,
            ),
            dpu_enabled=not args.no_dpu,
        )
    except (EntropyConfigError, ValueError) as exc:
        raise CliError(str(exc)) from exc


def _add_profile_args(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--profile", type=Path, help="profile JSON from a baseline run")
    source.add_argument(
        "--baseline-log", type=Path, help="build the profile inline from this log"
    )
    source.add_argument(
        "--default-profile",
        action="store_true",
        help="skip the baseline: default alphas, infinite adaptation thresholds",
    )


def _build_profile_doc(args: argparse.Namespace, config: SessionConfig) -> ProfileDocument:
    if args.profile is not None:
        return load_profile(args.profile)
    if args.baseline_log is not None:
        return run_baseline(read_log(args.baseline_log), entropy_config=config.entropy)
    return default_profile()


def _cmd_baseline(args: argparse.Namespace) -> int:
    config = _build_config(args)
    if args.skip:
        doc = default_profile()
    else:
        if args.log is None:
            raise CliError("baseline requires --log (or --skip for defaults)")
        samples = read_log(args.log)
        doc = run_baseline(
            samples, entropy_config=config.entropy, min_errors=args.min_errors
        )
    save_profile(args.out, doc)
    print(
        f"profile written to {args.out}: alpha_lin={doc.profile.alpha_lin!r} "
        f"alpha_ang={doc.profile.alpha_ang!r}"
    )
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    try:
        model = DriverModel(
            noise_sigma_lin=args.sigma_lin,
            noise_sigma_ang=args.sigma_ang,
            schedule=_parse_schedule(args.schedule) if args.schedule else (),
            seed=args.seed,
            speed_cap_multiplier=args.speed_cap_multiplier,
        )
        samples = simulate_log(model, args.duration)
    except SimulationError as exc:
        raise CliError(str(exc)) from exc
    count = write_log(args.out, samples)
    print(f"{count} commands written to {args.out}")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    config = _build_config(args)
    samples = read_log(args.log)
    doc = _build_profile_doc(args, config)
    result = run_session(samples, config, doc)
    rows = write_trace(args.trace, config, result.events)
    if not samples:
        print("warning: empty log, empty trace", file=sys.stderr)
    transitions = sum(isinstance(e, TransitionEvent) for e in result.events)
    updates = sum(isinstance(e, ProfileUpdate) for e in result.events)
    print(
        f"{rows} computations, {transitions} indication transitions, "
        f"{updates} profile updates -> {args.trace}"
    )
    if args.profile_out is not None:
        save_profile(args.profile_out, result.session.profile_document())
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    rows = read_trace(args.trace)
    stats = segment_stats(
        ((r.t_ms, r.total) for r in rows), _parse_segments(args.segments)
    )
    print(format_table(stats))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config = _build_config(args)
    doc = _build_profile_doc(args, config)
    app = create_app(
        config,
        doc,
        trace_path=args.trace,
        capture_log_path=args.capture_log,
        profile_out_path=args.profile_out,
        ui_dir=args.ui,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrowatch",
        description="Operator workload estimation from teleoperation command entropy",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baseline", help="build a driving profile from a baseline log")
    p.add_argument("--log", type=Path, help="baseline telemetry log (JSONL)")
    p.add_argument("--out", type=Path, required=True, help="profile JSON output path")
    p.add_argument("--min-errors", type=int, default=MIN_BASELINE_ERRORS)
    p.add_argument("--skip", action="store_true", help="write the default profile instead")
    _add_session_args(p)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("simulate", help="generate a synthetic operator log")
    p.add_argument("--out", type=Path, required=True, help="telemetry log output path")
    p.add_argument("--duration", type=float, default=600.0, help="seconds of session time")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma-lin", type=float, default=0.06, help="linear jerk-noise scale (m/s)")
    p.add_argument("--sigma-ang", type=float, default=0.12, help="angular jerk-noise scale (rad/s)")
    p.add_argument(
        "--schedule",
        help="noise multipliers over time: DURATION:MULT,DURATION:MULT,... (seconds)",
    )
    p.add_argument(
        "--speed-cap-multiplier",
        type=float,
        default=1.0,
        help="scales the linear speed cap (doubled-speed condition = 2.0)",
    )
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("replay", help="run the pipeline offline over a log")
    p.add_argument("--log", type=Path, required=True)
    p.add_argument("--trace", type=Path, required=True, help="trace CSV output path")
    p.add_argument("--profile-out", type=Path, help="write the final profile JSON here")
    _add_profile_args(p)
    _add_session_args(p)
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("report", help="per-segment entropy statistics from a trace")
    p.add_argument("--trace", type=Path, required=True)
    p.add_argument(
        "--segments",
        required=True,
        help="LABEL:DURATION,LABEL:DURATION,... (seconds, from session start)",
    )
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="run the live session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--trace", type=Path, help="trace CSV output path")
    p.add_argument("--capture-log", type=Path, help="capture the command stream here")
    p.add_argument("--profile-out", type=Path, help="write the final profile JSON here")
    p.add_argument("--ui", type=Path, help="serve this directory as the web UI")
    _add_profile_args(p)
    _add_session_args(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        TelemetryError,
        TraceFormatError,
        BaselineError,
        ProfileError,
        SimulationError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
