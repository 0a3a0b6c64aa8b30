"""Synthetic operators: scripted waypoint followers with seeded jerk noise.

The driver follows a closed polygon circuit with a rate-limited P-controller
and injects additive Gaussian noise on top of the smooth command, scaled by
a time-segmented workload schedule. Workload is therefore modeled as noise
scale: more workload, more abrupt corrective commands. All randomness comes
from one seeded generator, so a (model, duration) pair fully determines the
log, byte for byte.

In closed-loop mode the driver also reacts to HIGH workload indications by
shrinking its noise scale after a reaction delay, emulating an operator who
calms their driving when warned.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .estimator import RAW_PERIOD_MS, CommandSample
from .session import Session, SessionEvent
from .wais import TransitionEvent

TICK_MS = RAW_PERIOD_MS
TICK_S = TICK_MS / 1000.0

# Controller shape. Gains are deliberately gentle: the smooth part of the
# command must stay well inside the noise floor of the estimation errors,
# otherwise controller transients would dominate the 90th percentile.
K_ANG = 0.8
K_TURN = 0.8
TURN_ENTER_RAD = 0.7
TURN_EXIT_RAD = 0.1
ANG_DEADBAND_RAD = 0.002
SWITCH_RADIUS_M = 2.0


class SimulationError(ValueError):
    """The driver model or arena cannot produce a valid run."""


@dataclass(frozen=True)
class ScheduleSegment:
    """A stretch of session time with a noise-scale multiplier."""

    duration_s: float
    multiplier: float


@dataclass(frozen=True)
class WarningResponse:
    """Closed-loop reaction to HIGH workload indications."""

    enabled: bool = False
    recovery_factor: float = 0.3
    reaction_delay_s: float = 1.0


@dataclass(frozen=True)
class DriverModel:
    """Parameters of one synthetic operator."""

    noise_sigma_lin: float = 0.06
    noise_sigma_ang: float = 0.12
    schedule: tuple[ScheduleSegment, ...] = ()
    warning_response: WarningResponse = field(default_factory=WarningResponse)
    seed: int = 0
    max_lin: float = 0.8
    max_ang: float = 1.2
    accel_lin: float = 0.01
    accel_ang: float = 0.008
    speed_cap_multiplier: float = 1.0

    def __post_init__(self) -> None:
        if self.noise_sigma_lin < 0.0 or self.noise_sigma_ang < 0.0:
            raise SimulationError("noise scales must be non-negative")
        if self.max_lin <= 0.0 or self.max_ang <= 0.0:
            raise SimulationError("speed caps must be positive")
        if self.accel_lin <= 0.0 or self.accel_ang <= 0.0:
            raise SimulationError("rate limits must be positive")
        if self.speed_cap_multiplier <= 0.0:
            raise SimulationError("speed cap multiplier must be positive")
        for seg in self.schedule:
            if seg.duration_s <= 0.0 or seg.multiplier < 0.0:
                raise SimulationError(f"bad schedule segment: {seg}")

    def multiplier_at(self, t_ms: int) -> float:
        """Schedule lookup; past the end the last multiplier holds."""
        if not self.schedule:
            return 1.0
        t_s = t_ms / 1000.0
        elapsed = 0.0
        for seg in self.schedule:
            elapsed += seg.duration_s
            if t_s < elapsed:
                return seg.multiplier
        return self.schedule[-1].multiplier


def regular_polygon(sides: int = 12, radius_m: float = 6.0) -> tuple[tuple[float, float], ...]:
    """Waypoint circuit: a regular polygon around the origin."""
    return tuple(
        (radius_m * math.cos(2.0 * math.pi * i / sides), radius_m * math.sin(2.0 * math.pi * i / sides))
        for i in range(sides)
    )


def _wrap_angle(a: float) -> float:
    return math.atan2(math.sin(a), math.cos(a))


def _clamp(v: float, limit: float) -> float:
    return max(-limit, min(limit, v))


@dataclass
class ArenaState:
    """Unicycle kinematics stepped at the command rate."""

    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0

    def step(self, lin: float, ang: float, dt_s: float = TICK_S) -> None:
        self.x += lin * math.cos(self.heading) * dt_s
        self.y += lin * math.sin(self.heading) * dt_s
        self.heading = _wrap_angle(self.heading + ang * dt_s)


class SyntheticDriver:
    """Deterministic waypoint follower emitting one command per 50 ms.

    Structure per tick: pick targets from the pose, rate-limit the smooth
    command toward them, then add seeded Gaussian jerk noise. The noise is
    never fed back into the rate limiter, so the smooth trajectory stays
    smooth and the noise is purely additive on the wire.
    """

    def __init__(
        self, model: DriverModel, waypoints: Sequence[tuple[float, float]] | None = None
    ) -> None:
        self.model = model
        self.waypoints = tuple(waypoints) if waypoints is not None else regular_polygon()
        if len(set(self.waypoints)) < 2:
            raise SimulationError("need at least two distinct waypoints")
        sides = len(self.waypoints)
        min_side = min(
            math.dist(self.waypoints[i], self.waypoints[(i + 1) % sides])
            for i in range(sides)
        )
        if min_side <= SWITCH_RADIUS_M:
            raise SimulationError(
                f"waypoints closer than the switch radius ({min_side:.2f} m <= "
                f"{SWITCH_RADIUS_M} m): circuit unreachable"
            )
        self._rng = random.Random(model.seed)
        self.arena = ArenaState(x=self.waypoints[0][0], y=self.waypoints[0][1])
        self._target = 1
        self.arena.heading = self._bearing()
        self._lin_cmd = 0.0
        self._ang_cmd = 0.0
        self._turning = False
        self._high_since_ms: int | None = None

    def _bearing(self) -> float:
        tx, ty = self.waypoints[self._target]
        return math.atan2(ty - self.arena.y, tx - self.arena.x)

    def notify(self, events: Sequence[SessionEvent]) -> None:
        """Closed-loop hook: track HIGH/NORMAL transitions from the session."""
        for event in events:
            if isinstance(event, TransitionEvent):
                self._high_since_ms = event.t_ms if event.indication == "HIGH" else None

    def _sigma(self, t_ms: int) -> tuple[float, float]:
        mult = self.model.multiplier_at(t_ms)
        sigma_lin = self.model.noise_sigma_lin * mult
        sigma_ang = self.model.noise_sigma_ang * mult
        wr = self.model.warning_response
        if (
            wr.enabled
            and self._high_since_ms is not None
            and t_ms - self._high_since_ms >= wr.reaction_delay_s * 1000.0
        ):
            sigma_lin *= wr.recovery_factor
            sigma_ang *= wr.recovery_factor
        return sigma_lin, sigma_ang

    def _targets(self) -> tuple[float, float]:
        tx, ty = self.waypoints[self._target]
        if math.dist((self.arena.x, self.arena.y), (tx, ty)) <= SWITCH_RADIUS_M:
            self._target = (self._target + 1) % len(self.waypoints)
        err = _wrap_angle(self._bearing() - self.arena.heading)
        if self._turning:
            if abs(err) <= TURN_EXIT_RAD:
                self._turning = False
        elif abs(err) > TURN_ENTER_RAD:
            self._turning = True
        if self._turning:
            return 0.0, _clamp(K_TURN * err, self.model.max_ang)
        ang = 0.0 if abs(err) <= ANG_DEADBAND_RAD else _clamp(K_ANG * err, self.model.max_ang)
        return self.model.max_lin * self.model.speed_cap_multiplier, ang

    def step(self, t_ms: int) -> CommandSample:
        """Produce the command for this tick and advance the arena with it."""
        lin_target, ang_target = self._targets()
        self._lin_cmd += _clamp(lin_target - self._lin_cmd, self.model.accel_lin)
        self._ang_cmd += _clamp(ang_target - self._ang_cmd, self.model.accel_ang)
        sigma_lin, sigma_ang = self._sigma(t_ms)
        lin = self._lin_cmd + sigma_lin * self._rng.gauss(0.0, 1.0)
        ang = self._ang_cmd + sigma_ang * self._rng.gauss(0.0, 1.0)
        self.arena.step(lin, ang)
        return CommandSample(t_ms=t_ms, lin=lin, ang=ang)


def simulate_log(
    model: DriverModel,
    duration_s: float,
    waypoints: Sequence[tuple[float, float]] | None = None,
) -> list[CommandSample]:
    """Open-loop run: just the command log, no pipeline attached."""
    driver = SyntheticDriver(model, waypoints)
    ticks = int(duration_s * 1000.0) // TICK_MS
    return [driver.step(i * TICK_MS) for i in range(ticks)]


@dataclass(frozen=True)
class SimulationResult:
    log: list[CommandSample]
    events: list[SessionEvent]


def run_closed_loop(
    model: DriverModel,
    duration_s: float,
    session: Session,
    waypoints: Sequence[tuple[float, float]] | None = None,
) -> SimulationResult:
    """Closed-loop run: the driver sees the session's indications live."""
    driver = SyntheticDriver(model, waypoints)
    ticks = int(duration_s * 1000.0) // TICK_MS
    log: list[CommandSample] = []
    events: list[SessionEvent] = []
    for i in range(ticks):
        sample = driver.step(i * TICK_MS)
        log.append(sample)
        new_events = session.feed(sample)
        driver.notify(new_events)
        events.extend(new_events)
    events.extend(session.finalize())
    return SimulationResult(log=log, events=events)
