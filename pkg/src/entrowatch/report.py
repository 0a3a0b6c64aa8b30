"""Per-segment descriptive statistics of total entropy.

Splits a session's entropy computations into labeled time segments and
reports mean and standard deviation per segment, one row each, in the
two-column (M, SD) layout customary for workload studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean, pstdev
from typing import Iterable, Sequence


@dataclass(frozen=True)
class SegmentSpec:
    label: str
    duration_s: float


@dataclass(frozen=True)
class SegmentStats:
    label: str
    start_ms: int
    end_ms: int
    count: int
    mean: float
    std: float


def segment_stats(
    points: Iterable[tuple[int, float]],
    segments: Sequence[SegmentSpec],
    start_ms: int = 0,
) -> list[SegmentStats]:
    """Group (t_ms, total) points into consecutive segments and summarize.

    Points outside the covered range are ignored. Empty segments report
    count 0 with zero statistics.
    """
    bounds: list[tuple[str, int, int]] = []
    cursor = start_ms
    for seg in segments:
        end = cursor + int(round(seg.duration_s * 1000.0))
        bounds.append((seg.label, cursor, end))
        cursor = end
    values: dict[int, list[float]] = {i: [] for i in range(len(bounds))}
    for t_ms, total in points:
        for i, (_, lo, hi) in enumerate(bounds):
            if lo <= t_ms < hi:
                values[i].append(total)
                break
    stats: list[SegmentStats] = []
    for i, (label, lo, hi) in enumerate(bounds):
        vs = values[i]
        stats.append(
            SegmentStats(
                label=label,
                start_ms=lo,
                end_ms=hi,
                count=len(vs),
                mean=fmean(vs) if vs else 0.0,
                std=pstdev(vs) if vs else 0.0,
            )
        )
    return stats


def format_table(stats: Sequence[SegmentStats]) -> str:
    """Plain-text table: one row per segment, M and SD columns."""
    header = f"{'segment':<24} {'n':>5} {'M':>8} {'SD':>8}"
    rule = "-" * len(header)
    lines = [header, rule]
    for s in stats:
        lines.append(f"{s.label:<24} {s.count:>5} {s.mean:>8.4f} {s.std:>8.4f}")
    return "\n".join(lines)
