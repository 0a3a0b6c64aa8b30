"""Session orchestration: one command stream in, ordered pipeline events out.

A Session owns a single operator's full pipeline (filter, predictor, entropy
batching, workload indication, profile adaptation) and serializes every
mutation: feed() and finalize() must be called from one logical writer.
Events come out in a fixed order per entropy window (entropy tick, then any
indication transition, then any profile update), which makes traces and wire
streams reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .dpu import DPU_WINDOW, DpuState, ProfileUpdate, dpu_step
from .entropy import (
    Batch,
    EntropyBatcher,
    EntropyComputation,
    EntropyConfig,
    batch_entropy,
    total_entropy,
)
from .estimator import CommandSample, ErrorStream
from .profile import DriverProfile, ErrorHistory, ProfileDocument
from .wais import DEFAULT_THRESHOLD, DEFAULT_WINDOW, Indication, TransitionEvent, WorkloadIndicator

# Off-nominal command cadence: outside half to double the nominal 20 Hz.
NOMINAL_DT_MS = 50
MIN_DT_MS = 25
MAX_DT_MS = 100
RATE_SUSTAIN_MS = 5000


@dataclass(frozen=True)
class WaisConfig:
    threshold: float = DEFAULT_THRESHOLD
    window: int = DEFAULT_WINDOW
    hysteresis: float = 0.0


@dataclass(frozen=True)
class SessionConfig:
    entropy: EntropyConfig = field(default_factory=EntropyConfig)
    wais: WaisConfig = field(default_factory=WaisConfig)
    dpu_enabled: bool = True


@dataclass(frozen=True)
class EntropyTick:
    """One entropy computation with the indication context alongside it.

    profile is the profile the computation was binned with; a profile update
    triggered by this same window appears as a separate following event.
    """

    computation: EntropyComputation
    wais_avg: float
    indication: Indication
    profile: DriverProfile


@dataclass(frozen=True)
class RateWarning:
    """The command cadence was off-nominal for a sustained stretch."""

    t_ms: int
    off_nominal_ms: int


SessionEvent = Union[EntropyTick, TransitionEvent, ProfileUpdate, RateWarning]


class RateMonitor:
    """Flags sustained off-nominal command cadence from timestamps alone.

    Works purely on t_ms gaps so live and replayed runs agree. Consecutive
    off-nominal gaps accumulate; a single nominal gap resets the run. One
    warning fires per accumulated 5 s, then the accumulator restarts.
    """

    def __init__(self) -> None:
        self._last_t_ms: int | None = None
        self._span_ms = 0

    def observe(self, t_ms: int) -> RateWarning | None:
        warning: RateWarning | None = None
        if self._last_t_ms is not None:
            dt = t_ms - self._last_t_ms
            if dt < MIN_DT_MS or dt > MAX_DT_MS:
                self._span_ms += dt
                if self._span_ms >= RATE_SUSTAIN_MS:
                    warning = RateWarning(t_ms=t_ms, off_nominal_ms=self._span_ms)
                    self._span_ms = 0
            else:
                self._span_ms = 0
        self._last_t_ms = t_ms
        return warning


class Session:
    """Full pipeline for one operator stream."""

    def __init__(self, config: SessionConfig, profile_doc: ProfileDocument) -> None:
        self.config = config
        self.profile = profile_doc.profile
        self._stream = ErrorStream()
        self._batcher = EntropyBatcher(period_ms=config.entropy.period_ms)
        self._wais = WorkloadIndicator(
            threshold=config.wais.threshold,
            window=config.wais.window,
            hysteresis=config.wais.hysteresis,
        )
        self._dpu: DpuState | None = None
        if config.dpu_enabled:
            self._dpu = DpuState(
                avg_threshold=profile_doc.dpu_avg,
                std_threshold=profile_doc.dpu_std,
            )
        # DPU sees only errors that reached an entropy batch, so idle-window
        # zeros can never collapse alpha during an update.
        self._errors = ErrorHistory(DPU_WINDOW)
        self._rate = RateMonitor()

    @property
    def indication(self) -> Indication:
        return self._wais.indication

    def profile_document(self) -> ProfileDocument:
        """Snapshot of the current profile and adaptation thresholds."""
        if self._dpu is None:
            return ProfileDocument(self.profile, float("inf"), float("inf"))
        return ProfileDocument(
            self.profile, self._dpu.avg_threshold, self._dpu.std_threshold
        )

    def feed(self, sample: CommandSample) -> list[SessionEvent]:
        """Ingest one raw command; returns the events it caused, in order."""
        events: list[SessionEvent] = []
        warning = self._rate.observe(sample.t_ms)
        if warning is not None:
            events.append(warning)
        moving = sample.lin != 0.0 or sample.ang != 0.0
        self._batcher.note_command(sample.t_ms, moving)
        error = self._stream.ingest(sample)
        if error is not None:
            for batch in self._batcher.feed(error):
                events.extend(self._process_batch(batch))
        return events

    def finalize(self) -> list[SessionEvent]:
        """Close the open entropy window at end of stream."""
        events: list[SessionEvent] = []
        for batch in self._batcher.flush():
            events.extend(self._process_batch(batch))
        return events

    def _process_batch(self, batch: Batch) -> list[SessionEvent]:
        for error in batch.errors:
            self._errors.append(error)
        hp_lin = batch_entropy(batch.lin(), self.profile.boundaries_lin)
        hp_ang = batch_entropy(batch.ang(), self.profile.boundaries_ang)
        total = total_entropy(hp_lin, hp_ang, self.config.entropy.weights)
        computation = EntropyComputation(
            t_ms=batch.window_end_ms,
            hp_lin=hp_lin,
            hp_ang=hp_ang,
            total=total,
            batch_size=len(batch.errors),
        )
        wais = self._wais.update(computation.t_ms, total)
        events: list[SessionEvent] = [
            EntropyTick(
                computation=computation,
                wais_avg=wais.average,
                indication=wais.indication,
                profile=self.profile,
            )
        ]
        if wais.transition is not None:
            events.append(wais.transition)
        if self._dpu is not None:
            update = dpu_step(
                self._dpu,
                computation.t_ms,
                total,
                self._errors.lin(),
                self._errors.ang(),
                next_revision=self.profile.revision + 1,
            )
            if update is not None:
                self.profile = update.profile
                events.append(update)
        return events
