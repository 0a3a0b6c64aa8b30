"""Entropy of prediction-error batches over the 9-bin profile histogram.

Errors are collected into fixed wall-clock windows (default 2.5 s). Each
closed window becomes one entropy sample: the errors are binned against the
profile boundaries and the bin distribution's base-9 entropy is reported per
dimension, then combined as a weighted sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .estimator import FILTER_PERIOD_MS, ErrorPair
from .profile import NUM_BINS, bin_index

_LOG9 = math.log(9.0)

MIN_PERIOD_S = 2.5
MAX_PERIOD_S = 5.0

DEFAULT_WEIGHTS = (0.5, 0.5)


class EntropyConfigError(ValueError):
    """Entropy windowing configuration is out of range."""


@dataclass(frozen=True)
class EntropyConfig:
    """Windowing and combination parameters for entropy batching."""

    period_s: float = 2.5
    weights: tuple[float, float] = DEFAULT_WEIGHTS
    error_interval_s: float = 0.15

    def __post_init__(self) -> None:
        if not (MIN_PERIOD_S <= self.period_s <= MAX_PERIOD_S):
            raise EntropyConfigError(
                f"period_s must be within [{MIN_PERIOD_S}, {MAX_PERIOD_S}] s, "
                f"got {self.period_s}"
            )
        if len(self.weights) != 2 or any(w < 0.0 for w in self.weights):
            raise EntropyConfigError(f"weights must be two non-negatives: {self.weights}")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise EntropyConfigError(f"weights must sum to 1: {self.weights}")
        if self.error_interval_s <= 0.0:
            raise EntropyConfigError("error_interval_s must be positive")

    @property
    def period_ms(self) -> int:
        return int(round(self.period_s * 1000.0))

    @property
    def expected_batch_size(self) -> int:
        """Nominal errors per window; advisory, jitter changes actual counts."""
        return int(round(self.period_s / self.error_interval_s))


def expected_batch_size(period_s: float) -> int:
    """Nominal number of errors per window at the filtered sample rate."""
    return int(round(period_s * 1000.0 / FILTER_PERIOD_MS))


def histogram(values: Sequence[float], boundaries: Sequence[float]) -> list[int]:
    """Counts per bin, 9 bins; every finite value lands in exactly one bin."""
    counts = [0] * NUM_BINS
    for v in values:
        counts[bin_index(v, boundaries) - 1] += 1
    return counts


def entropy_of(frequencies: Sequence[float]) -> float:
    """Base-9 Shannon entropy of a bin-frequency vector.

    Empty bins contribute zero (the p*log p limit), so the value is always
    finite and lies in [0, 1] for 9 bins.
    """
    if any(p < 0.0 for p in frequencies):
        raise ValueError(f"negative frequency in {frequencies}")
    if abs(sum(frequencies) - 1.0) > 1e-9:
        raise ValueError(f"frequencies must sum to 1, got {sum(frequencies)!r}")
    hp = 0.0
    for p in frequencies:
        if p == 0.0:
            continue
        hp -= p * math.log(p) / _LOG9
    return hp


def entropy_from_counts(counts: Sequence[int]) -> float:
    """Base-9 entropy of a bin-count histogram."""
    total = sum(counts)
    if total == 0:
        raise ValueError("cannot compute entropy of an empty batch")
    return entropy_of([c / total for c in counts])


def batch_entropy(values: Sequence[float], boundaries: Sequence[float]) -> float:
    return entropy_from_counts(histogram(values, boundaries))


def total_entropy(
    hp_lin: float, hp_ang: float, weights: tuple[float, float] = DEFAULT_WEIGHTS
) -> float:
    return weights[0] * hp_lin + weights[1] * hp_ang


@dataclass(frozen=True)
class EntropyComputation:
    """One entropy sample: per-dimension values and their weighted total."""

    t_ms: int
    hp_lin: float
    hp_ang: float
    total: float
    batch_size: int


@dataclass(frozen=True)
class Batch:
    """One closed entropy window: its end boundary and the errors inside."""

    window_end_ms: int
    errors: tuple[ErrorPair, ...]

    def lin(self) -> tuple[float, ...]:
        return tuple(e.err_lin for e in self.errors)

    def ang(self) -> tuple[float, ...]:
        return tuple(e.err_ang for e in self.errors)


@dataclass
class EntropyBatcher:
    """Groups errors into aligned wall-clock windows and closes them in order.

    Window k spans [k*P, (k+1)*P) ms. A window closes when an error with a
    timestamp at or past its end boundary arrives, or on flush(). Windows
    emit a Batch only if they collected at least one error and saw at least
    one non-idle command; quiet stretches produce no entropy samples at all.
    """

    period_ms: int
    _window: int | None = None
    _pending: list[ErrorPair] = field(default_factory=list)
    _active: set[int] = field(default_factory=set)

    def note_command(self, t_ms: int, moving: bool) -> None:
        """Mark the window containing t_ms as active if the command moves."""
        if moving:
            self._active.add(t_ms // self.period_ms)

    def feed(self, error: ErrorPair) -> list[Batch]:
        """Add one error; returns the batches of any windows this closes."""
        w = error.t_ms // self.period_ms
        closed: list[Batch] = []
        if self._window is None:
            self._window = w
        elif w > self._window:
            closed.extend(self._close())
            self._window = w
        elif w < self._window:
            raise ValueError(
                f"error timestamp {error.t_ms} ms precedes the open window"
            )
        self._pending.append(error)
        return closed

    def flush(self) -> list[Batch]:
        """Close the partially filled window at end of stream."""
        closed = self._close()
        self._window = None
        return closed

    def _close(self) -> list[Batch]:
        w = self._window
        batches: list[Batch] = []
        if w is not None and self._pending and w in self._active:
            batches.append(
                Batch(
                    window_end_ms=(w + 1) * self.period_ms,
                    errors=tuple(self._pending),
                )
            )
        self._pending = []
        if w is not None:
            self._active = {i for i in self._active if i > w}
        return batches
