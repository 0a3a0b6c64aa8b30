"""Workload indication: smoothed total entropy against a fixed threshold.

The last few total-entropy samples (default 5) are averaged; when the
average strictly exceeds the threshold (default 0.6) the indication flips
to HIGH and an audio ping is requested. An optional hysteresis band keeps
the indication from chattering around the threshold.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from statistics import fmean
from typing import Literal

DEFAULT_WINDOW = 5
DEFAULT_THRESHOLD = 0.6

Indication = Literal["NORMAL", "HIGH"]


@dataclass(frozen=True)
class TransitionEvent:
    """Emitted only when the indication changes state."""

    t_ms: int
    indication: Indication
    play_ping: bool


@dataclass(frozen=True)
class WaisUpdate:
    """Result of folding one total-entropy sample into the indicator."""

    t_ms: int
    average: float
    indication: Indication
    transition: TransitionEvent | None


class WorkloadIndicator:
    """Moving-average threshold detector over total entropy samples.

    Until the window fills, the average is taken over however many samples
    exist, so the very first sample can already trip the indication. HIGH
    requires average > threshold strictly: an average exactly at the
    threshold stays NORMAL.
    """

    def __init__(
        self,
        threshold: float = DEFAULT_THRESHOLD,
        window: int = DEFAULT_WINDOW,
        hysteresis: float = 0.0,
    ) -> None:
        if window < 1:
            raise ValueError("window must be >= 1")
        if hysteresis < 0.0:
            raise ValueError("hysteresis must be >= 0")
        self.threshold = threshold
        self.hysteresis = hysteresis
        self._totals: deque[float] = deque(maxlen=window)
        self._indication: Indication = "NORMAL"
        self._average = 0.0

    @property
    def indication(self) -> Indication:
        return self._indication

    @property
    def average(self) -> float:
        return self._average

    def update(self, t_ms: int, total: float) -> WaisUpdate:
        self._totals.append(total)
        self._average = fmean(self._totals)
        transition: TransitionEvent | None = None
        if self._indication == "NORMAL":
            if self._average > self.threshold:
                self._indication = "HIGH"
                transition = TransitionEvent(t_ms, "HIGH", play_ping=True)
        else:
            if self._average <= self.threshold - self.hysteresis:
                self._indication = "NORMAL"
                transition = TransitionEvent(t_ms, "NORMAL", play_ping=False)
        return WaisUpdate(t_ms, self._average, self._indication, transition)
