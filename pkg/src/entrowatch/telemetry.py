"""Telemetry logs: the raw command stream as JSON Lines on disk.

One object per record: {"t_ms": int, "lin": float, "ang": float}. Files
start with a version header object so future format changes stay readable;
readers accept headerless files too.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, TextIO

from .estimator import CommandSample

LOG_FORMAT = "entrowatch-telemetry"
LOG_VERSION = 1


class TelemetryError(ValueError):
    """A telemetry log line failed validation; message names the line."""


def _header_line() -> str:
    return json.dumps({"format": LOG_FORMAT, "version": LOG_VERSION})


def sample_to_json(sample: CommandSample) -> str:
    return json.dumps({"t_ms": sample.t_ms, "lin": sample.lin, "ang": sample.ang})


def write_log(path: str | Path, samples: Iterable[CommandSample]) -> int:
    """Write a full log; returns the number of records written."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header_line() + "\n")
        for sample in samples:
            fh.write(sample_to_json(sample) + "\n")
            count += 1
    return count


class LogWriter:
    """Incremental log writer for live capture."""

    def __init__(self, fh: TextIO) -> None:
        self._fh = fh
        self._fh.write(_header_line() + "\n")

    def append(self, sample: CommandSample) -> None:
        self._fh.write(sample_to_json(sample) + "\n")

    def flush(self) -> None:
        self._fh.flush()


def _parse_record(line: str, lineno: int, last_t_ms: int | None) -> CommandSample:
    try:
        obj = json.loads(line)
        t_ms = obj["t_ms"]
        lin = obj["lin"]
        ang = obj["ang"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise TelemetryError(f"line {lineno}: malformed record: {exc}") from exc
    if not isinstance(t_ms, int) or isinstance(t_ms, bool):
        raise TelemetryError(f"line {lineno}: t_ms must be an integer, got {t_ms!r}")
    if t_ms < 0:
        raise TelemetryError(f"line {lineno}: negative timestamp {t_ms}")
    if last_t_ms is not None and t_ms <= last_t_ms:
        raise TelemetryError(
            f"line {lineno}: timestamp regression {t_ms} ms after {last_t_ms} ms"
        )
    try:
        lin_f = float(lin)
        ang_f = float(ang)
    except (TypeError, ValueError) as exc:
        raise TelemetryError(f"line {lineno}: non-numeric command: {exc}") from exc
    if not (math.isfinite(lin_f) and math.isfinite(ang_f)):
        raise TelemetryError(f"line {lineno}: non-finite command")
    return CommandSample(t_ms=t_ms, lin=lin_f, ang=ang_f)


def read_log(path: str | Path) -> list[CommandSample]:
    """Read and validate a full log; faults name the offending line."""
    samples: list[CommandSample] = []
    last_t_ms: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if lineno == 1 and '"format"' in line:
                try:
                    header = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise TelemetryError(f"line 1: malformed header: {exc}") from exc
                if header.get("format") != LOG_FORMAT:
                    raise TelemetryError(
                        f"line 1: unsupported log format {header.get('format')!r}"
                    )
                continue
            sample = _parse_record(line, lineno, last_t_ms)
            last_t_ms = sample.t_ms
            samples.append(sample)
    return samples
