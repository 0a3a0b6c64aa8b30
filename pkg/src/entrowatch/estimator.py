"""Front end of the pipeline: raw velocity commands in, estimation errors out.

The raw 20 Hz command stream is decimated with a non-overlapping 3-sample
block average (one filtered sample per 3 raw samples, so 20 Hz -> 6.67 Hz).
Each filtered sample is then predicted from the previous three by a
second-order extrapolation, and the difference measured - predicted is the
estimation error that all downstream entropy math consumes.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

BLOCK_SIZE = 3

# Nominal command cadence and the filtered cadence it implies.
RAW_PERIOD_MS = 50
FILTER_PERIOD_MS = BLOCK_SIZE * RAW_PERIOD_MS


class StreamIntegrityError(ValueError):
    """A sample violated the stream contract (timestamps, finiteness)."""


@dataclass(frozen=True)
class CommandSample:
    """One raw operator command: session-relative time plus lin/ang velocity."""

    t_ms: int
    lin: float
    ang: float


@dataclass(frozen=True)
class FilteredSample:
    """Block-averaged command; t_ms is the last raw timestamp in the block."""

    t_ms: int
    lin: float
    ang: float


@dataclass(frozen=True)
class ErrorPair:
    """Per-dimension estimation error (measured minus predicted) at t_ms."""

    t_ms: int
    err_lin: float
    err_ang: float


def predict_next(x3: float, x2: float, x1: float) -> float:
    """One-step-ahead extrapolation from the last three values (x3 oldest).

    The next value is the latest one advanced by the latest first difference
    plus the sum of the two most recent first differences. Kept in this
    exact summation shape so closed forms (constant -> 0 error, ramp k*n ->
    -2k error) hold bit-exactly.
    """
    d1 = x1 - x2
    d2 = x2 - x3
    return x1 + d1 + (d1 + d2)


class BlockAverageFilter:
    """Decimating 3-sample mean; emits once per completed block.

    Single writer per session: ingest() must not be called concurrently.
    """

    def __init__(self) -> None:
        self._lin_acc: list[float] = []
        self._ang_acc: list[float] = []
        self._last_t_ms: int | None = None

    def ingest(self, sample: CommandSample) -> FilteredSample | None:
        if self._last_t_ms is not None and sample.t_ms <= self._last_t_ms:
            raise StreamIntegrityError(
                f"non-monotonic timestamp: {sample.t_ms} ms after {self._last_t_ms} ms"
            )
        if sample.t_ms < 0:
            raise StreamIntegrityError(f"negative timestamp: {sample.t_ms} ms")
        if not (math.isfinite(sample.lin) and math.isfinite(sample.ang)):
            raise StreamIntegrityError(f"non-finite command at {sample.t_ms} ms")
        self._last_t_ms = sample.t_ms
        self._lin_acc.append(sample.lin)
        self._ang_acc.append(sample.ang)
        if len(self._lin_acc) < BLOCK_SIZE:
            return None
        out = FilteredSample(
            t_ms=sample.t_ms,
            lin=sum(self._lin_acc) / BLOCK_SIZE,
            ang=sum(self._ang_acc) / BLOCK_SIZE,
        )
        self._lin_acc.clear()
        self._ang_acc.clear()
        return out


class ErrorStream:
    """Filter + predictor + error, as one stream stage.

    The predictor consumes previous *measured* filtered values, never its own
    predictions. Warm-up: the first three filtered samples produce no error.
    """

    def __init__(self) -> None:
        self._filter = BlockAverageFilter()
        self._window: deque[FilteredSample] = deque(maxlen=BLOCK_SIZE)

    def ingest(self, sample: CommandSample) -> ErrorPair | None:
        filt = self._filter.ingest(sample)
        if filt is None:
            return None
        return self.ingest_filtered(filt)

    def ingest_filtered(self, filt: FilteredSample) -> ErrorPair | None:
        """Feed an already-filtered sample; used by the baseline builder."""
        error: ErrorPair | None = None
        if len(self._window) == 3:
            w = self._window
            pred_lin = predict_next(w[0].lin, w[1].lin, w[2].lin)
            pred_ang = predict_next(w[0].ang, w[1].ang, w[2].ang)
            error = ErrorPair(
                t_ms=filt.t_ms,
                err_lin=filt.lin - pred_lin,
                err_ang=filt.ang - pred_ang,
            )
        self._window.append(filt)
        return error
