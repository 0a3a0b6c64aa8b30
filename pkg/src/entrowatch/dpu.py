"""Online profile adaptation from the recent entropy record.

Once 100 entropy samples have accrued since the last accepted update, every
new sample re-checks the trigger: if the last 100 totals have both a lower
mean and a lower population standard deviation than the stored thresholds
(strictly), the last 100 estimation errors per dimension are promoted to the
new baseline, alpha and the bins are recomputed from them, and the
thresholds tighten to the statistics that just beat them. Adaptation only
ever tightens; there is no re-widening path for a degrading operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from statistics import fmean, pstdev
from typing import Sequence

from .profile import DriverProfile, compute_alpha

DPU_WINDOW = 100


def seed_thresholds(history: Sequence[float] | None) -> tuple[float, float]:
    """Initial trigger thresholds from a baseline entropy history.

    With no history the thresholds are infinite, so the first window that
    satisfies the precondition triggers an update unconditionally.
    """
    if not history:
        return (math.inf, math.inf)
    return (fmean(history), pstdev(history))


@dataclass(frozen=True)
class ProfileUpdate:
    """An accepted adaptation: the replacement profile plus new thresholds."""

    t_ms: int
    profile: DriverProfile
    avg_threshold: float
    std_threshold: float


@dataclass
class DpuState:
    """Trigger thresholds plus the entropy and error histories they guard."""

    avg_threshold: float
    std_threshold: float
    window: int = DPU_WINDOW
    entropy_history: list[float] = field(default_factory=list)
    error_history_lin: tuple[float, ...] = ()
    error_history_ang: tuple[float, ...] = ()
    samples_since_update: int = 0

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.avg_threshold < 0.0 or self.std_threshold < 0.0:
            raise ValueError("thresholds must be non-negative")


def dpu_step(
    state: DpuState,
    t_ms: int,
    total: float,
    recent_lin: Sequence[float],
    recent_ang: Sequence[float],
    next_revision: int,
) -> ProfileUpdate | None:
    """Fold one total-entropy sample into the state; maybe emit an update.

    recent_lin/recent_ang are the most recent estimation errors per
    dimension (the session's rolling record); only the last `window` of each
    are consumed, and both must hold at least `window` entries for an update
    to be accepted.
    """
    state.entropy_history.append(total)
    state.samples_since_update += 1
    if state.samples_since_update < state.window:
        return None
    recent = state.entropy_history[-state.window :]
    avg = fmean(recent)
    std = pstdev(recent)
    if not (avg < state.avg_threshold and std < state.std_threshold):
        return None
    if len(recent_lin) < state.window or len(recent_ang) < state.window:
        return None
    state.error_history_lin = tuple(recent_lin[-state.window :])
    state.error_history_ang = tuple(recent_ang[-state.window :])
    state.avg_threshold = avg
    state.std_threshold = std
    state.samples_since_update = 0
    profile = DriverProfile.from_alphas(
        compute_alpha(state.error_history_lin),
        compute_alpha(state.error_history_ang),
        created_at_ms=t_ms,
        revision=next_revision,
    )
    return ProfileUpdate(
        t_ms=t_ms, profile=profile, avg_threshold=avg, std_threshold=std
    )
