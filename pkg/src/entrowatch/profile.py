"""Driving-behaviour profile: alpha scale values and the 9-bin boundary set.

alpha is the nearest-rank 90th percentile of the estimation-error magnitudes,
kept per dimension. All bin boundaries are fixed multiples of alpha, so the
profile is fully determined by (alpha_lin, alpha_ang).
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .estimator import ErrorPair

# Bins are half-open [b_{i-1}, b_i) with open outer tails; a value exactly at
# 0.5*alpha therefore falls in bin 6, not the central bin 5.
BOUNDARY_MULTIPLES = (-5.0, -2.5, -1.0, -0.5, 0.5, 1.0, 2.5, 5.0)
NUM_BINS = len(BOUNDARY_MULTIPLES) + 1

# Keeps bins non-degenerate for idle operators whose errors are all zero.
ALPHA_FLOOR = 1e-9

PERCENTILE_TENTHS = 9  # 90th percentile, as the exact fraction 9/10

PROFILE_FORMAT = "entrowatch-profile"
PROFILE_VERSION = 1

DEFAULT_ALPHA_LIN = 0.25
DEFAULT_ALPHA_ANG = 0.5


class ProfileError(ValueError):
    """Profile construction received unusable inputs."""


class BaselineError(ProfileError):
    """The baseline stream was too short or too sparse to build a profile."""


def compute_alpha(errors: Iterable[float]) -> float:
    """Nearest-rank 90th percentile of error magnitudes, floored at 1e-9.

    Nearest-rank means the ceil(0.9 * n)-th order statistic of the sorted
    magnitudes; deterministic and order-independent. Integer arithmetic is
    used for the rank so no float rounding can shift it.
    """
    magnitudes = sorted(abs(e) for e in errors)
    n = len(magnitudes)
    if n == 0:
        raise ProfileError("cannot compute alpha from an empty error list")
    rank = (PERCENTILE_TENTHS * n + 9) // 10  # ceil(9n/10), 1-based
    return max(magnitudes[rank - 1], ALPHA_FLOOR)


def bin_boundaries(alpha: float) -> tuple[float, ...]:
    """The 8 ascending boundaries scaled from alpha."""
    if not (alpha > 0.0) or not math.isfinite(alpha):
        raise ProfileError(f"alpha must be positive and finite, got {alpha}")
    return tuple(m * alpha for m in BOUNDARY_MULTIPLES)


def bin_index(error: float, boundaries: Sequence[float]) -> int:
    """Bin number in 1..9 for an error value; total over all finite inputs."""
    return bisect_right(boundaries, error) + 1


@dataclass(frozen=True)
class DriverProfile:
    """Immutable snapshot of the operator's driving-behaviour model.

    Updates replace the whole profile atomically; readers never see a
    partially updated alpha/boundary pair.
    """

    alpha_lin: float
    alpha_ang: float
    boundaries_lin: tuple[float, ...]
    boundaries_ang: tuple[float, ...]
    created_at_ms: int = 0
    revision: int = 0

    @classmethod
    def from_alphas(
        cls,
        alpha_lin: float,
        alpha_ang: float,
        created_at_ms: int = 0,
        revision: int = 0,
    ) -> "DriverProfile":
        return cls(
            alpha_lin=alpha_lin,
            alpha_ang=alpha_ang,
            boundaries_lin=bin_boundaries(alpha_lin),
            boundaries_ang=bin_boundaries(alpha_ang),
            created_at_ms=created_at_ms,
            revision=revision,
        )


class ErrorHistory:
    """Ring of the most recent estimation errors, per dimension."""

    def __init__(self, capacity: int = 100) -> None:
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._lin: deque[float] = deque(maxlen=capacity)
        self._ang: deque[float] = deque(maxlen=capacity)

    def append(self, error: ErrorPair) -> None:
        self._lin.append(error.err_lin)
        self._ang.append(error.err_ang)

    def lin(self) -> tuple[float, ...]:
        return tuple(self._lin)

    def ang(self) -> tuple[float, ...]:
        return tuple(self._ang)

    def __len__(self) -> int:
        return len(self._lin)


def build_baseline(
    errors_lin: Sequence[float],
    errors_ang: Sequence[float],
    *,
    min_errors: int = 100,
    created_at_ms: int = 0,
) -> DriverProfile:
    """Build the revision-0 profile from a baseline session's errors."""
    if len(errors_lin) < min_errors or len(errors_ang) < min_errors:
        raise BaselineError(
            "insufficient baseline data: "
            f"{len(errors_lin)} linear / {len(errors_ang)} angular errors, "
            f"need {min_errors} per dimension"
        )
    alpha_lin = compute_alpha(errors_lin)
    alpha_ang = compute_alpha(errors_ang)
    for alpha, errors in ((alpha_lin, errors_lin), (alpha_ang, errors_ang)):
        covered = sum(1 for e in errors if abs(e) <= alpha)
        if 10 * covered < 9 * len(errors):  # nearest-rank guarantee
            raise ProfileError("percentile invariant violated")
    return DriverProfile.from_alphas(
        alpha_lin, alpha_ang, created_at_ms=created_at_ms, revision=0
    )


@dataclass(frozen=True)
class ProfileDocument:
    """A profile plus the adaptation thresholds that travel with it on disk."""

    profile: DriverProfile
    dpu_avg: float
    dpu_std: float


def default_profile(
    alpha_lin: float = DEFAULT_ALPHA_LIN, alpha_ang: float = DEFAULT_ALPHA_ANG
) -> ProfileDocument:
    """Profile used when the baseline session is skipped.

    Starts from deliberately loose alphas and infinite adaptation thresholds,
    so the first qualifying entropy window always tightens the profile.
    """
    return ProfileDocument(
        profile=DriverProfile.from_alphas(alpha_lin, alpha_ang),
        dpu_avg=math.inf,
        dpu_std=math.inf,
    )


def _encode_threshold(value: float) -> float | str:
    return "inf" if math.isinf(value) else value


def _decode_threshold(value: object) -> float:
    if value == "inf":
        return math.inf
    if isinstance(value, (int, float)) and math.isfinite(value):
        return float(value)
    raise ProfileError(f"bad threshold value in profile file: {value!r}")


def save_profile(path: str | Path, doc: ProfileDocument) -> None:
    payload = {
        "format": PROFILE_FORMAT,
        "version": PROFILE_VERSION,
        "alpha_lin": doc.profile.alpha_lin,
        "alpha_ang": doc.profile.alpha_ang,
        "revision": doc.profile.revision,
        "dpu": {
            "avg": _encode_threshold(doc.dpu_avg),
            "std": _encode_threshold(doc.dpu_std),
        },
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_profile(path: str | Path) -> ProfileDocument:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProfileError(f"profile file {path} is not valid JSON: {exc}") from exc
    try:
        profile = DriverProfile.from_alphas(
            float(payload["alpha_lin"]),
            float(payload["alpha_ang"]),
            revision=int(payload.get("revision", 0)),
        )
        dpu = payload.get("dpu", {})
        return ProfileDocument(
            profile=profile,
            dpu_avg=_decode_threshold(dpu.get("avg", "inf")),
            dpu_std=_decode_threshold(dpu.get("std", "inf")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProfileError(f"profile file {path} is malformed: {exc}") from exc
