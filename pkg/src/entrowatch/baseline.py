"""Baseline (trial-run) processing: first profile plus adaptation thresholds.

The baseline log is pushed through the estimation front end once. Alpha per
dimension comes from all collected errors; the adaptation thresholds come
from the entropy history that the freshly built profile would have produced
over the same run. A motionless baseline yields no entropy windows at all,
which leaves the thresholds at the infinite sentinels.
"""

from __future__ import annotations

from typing import Sequence

from .dpu import seed_thresholds
from .entropy import Batch, EntropyBatcher, EntropyConfig, batch_entropy, total_entropy
from .estimator import CommandSample, ErrorPair, ErrorStream
from .profile import ProfileDocument, build_baseline

MIN_BASELINE_ERRORS = 100


def run_baseline(
    samples: Sequence[CommandSample],
    *,
    entropy_config: EntropyConfig | None = None,
    min_errors: int = MIN_BASELINE_ERRORS,
) -> ProfileDocument:
    """Build the revision-0 profile document from a baseline command log."""
    config = entropy_config if entropy_config is not None else EntropyConfig()
    stream = ErrorStream()
    batcher = EntropyBatcher(period_ms=config.period_ms)
    errors: list[ErrorPair] = []
    batches: list[Batch] = []
    for sample in samples:
        batcher.note_command(sample.t_ms, sample.lin != 0.0 or sample.ang != 0.0)
        error = stream.ingest(sample)
        if error is not None:
            errors.append(error)
            batches.extend(batcher.feed(error))
    batches.extend(batcher.flush())
    profile = build_baseline(
        [e.err_lin for e in errors],
        [e.err_ang for e in errors],
        min_errors=min_errors,
    )
    totals = []
    for batch in batches:
        hp_lin = batch_entropy(batch.lin(), profile.boundaries_lin)
        hp_ang = batch_entropy(batch.ang(), profile.boundaries_ang)
        totals.append(total_entropy(hp_lin, hp_ang, config.weights))
    avg, std = seed_thresholds(totals)
    return ProfileDocument(profile=profile, dpu_avg=avg, dpu_std=std)
