"""Trace files: one CSV row per entropy computation.

Line 1 is a version header that also embeds the session configuration, so a
trace is self-describing; line 2 is the column header. Floats are written
with repr (shortest round-trip), which makes traces byte-identical across
runs given identical inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from .session import EntropyTick, SessionConfig, SessionEvent

TRACE_FORMAT = "entrowatch-trace"
TRACE_VERSION = 1

COLUMNS = (
    "t_ms",
    "hp_lin",
    "hp_ang",
    "total",
    "wais_avg",
    "indication",
    "alpha_lin",
    "alpha_ang",
    "profile_revision",
)


def config_fingerprint(config: SessionConfig) -> dict:
    """The session parameters that determine trace content, as plain JSON."""
    return {
        "period_s": config.entropy.period_s,
        "weights": list(config.entropy.weights),
        "wais_threshold": config.wais.threshold,
        "wais_window": config.wais.window,
        "wais_hysteresis": config.wais.hysteresis,
        "dpu_enabled": config.dpu_enabled,
    }


def header_lines(config: SessionConfig) -> list[str]:
    meta = json.dumps(
        {"format": TRACE_FORMAT, "version": TRACE_VERSION, "config": config_fingerprint(config)},
        sort_keys=True,
    )
    return [f"# {meta}", ",".join(COLUMNS)]


def tick_row(tick: EntropyTick) -> str:
    c = tick.computation
    p = tick.profile
    return ",".join(
        (
            str(c.t_ms),
            repr(c.hp_lin),
            repr(c.hp_ang),
            repr(c.total),
            repr(tick.wais_avg),
            tick.indication,
            repr(p.alpha_lin),
            repr(p.alpha_ang),
            str(p.revision),
        )
    )


class TraceWriter:
    """Streams trace rows as entropy ticks arrive; ignores other events."""

    def __init__(self, fh: TextIO, config: SessionConfig) -> None:
        self._fh = fh
        self.rows = 0
        for line in header_lines(config):
            fh.write(line + "\n")

    def write_event(self, event: SessionEvent) -> None:
        if isinstance(event, EntropyTick):
            self._fh.write(tick_row(event) + "\n")
            self.rows += 1

    def flush(self) -> None:
        self._fh.flush()


def write_trace(path: str | Path, config: SessionConfig, events: Iterable[SessionEvent]) -> int:
    """Write a whole trace at once; returns the number of rows."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = TraceWriter(fh, config)
        for event in events:
            writer.write_event(event)
    return writer.rows


@dataclass(frozen=True)
class TraceRow:
    t_ms: int
    hp_lin: float
    hp_ang: float
    total: float
    wais_avg: float
    indication: str
    alpha_lin: float
    alpha_ang: float
    profile_revision: int


class TraceFormatError(ValueError):
    """A trace file failed structural validation."""


def read_trace(path: str | Path) -> list[TraceRow]:
    """Parse a trace file back into rows; faults name the offending line."""
    rows: list[TraceRow] = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("# "):
        raise TraceFormatError("line 1: missing trace header")
    meta = json.loads(lines[0][2:])
    if meta.get("format") != TRACE_FORMAT:
        raise TraceFormatError(f"line 1: unsupported format {meta.get('format')!r}")
    if len(lines) < 2 or lines[1] != ",".join(COLUMNS):
        raise TraceFormatError("line 2: missing column header")
    for lineno, line in enumerate(lines[2:], start=3):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(COLUMNS):
            raise TraceFormatError(f"line {lineno}: expected {len(COLUMNS)} columns")
        try:
            rows.append(
                TraceRow(
                    t_ms=int(parts[0]),
                    hp_lin=float(parts[1]),
                    hp_ang=float(parts[2]),
                    total=float(parts[3]),
                    wais_avg=float(parts[4]),
                    indication=parts[5],
                    alpha_lin=float(parts[6]),
                    alpha_ang=float(parts[7]),
                    profile_revision=int(parts[8]),
                )
            )
        except ValueError as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from exc
    return rows
