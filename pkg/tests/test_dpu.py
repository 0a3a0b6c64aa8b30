import math
from statistics import fmean, pstdev

import pytest

from entrowatch.dpu import DPU_WINDOW, DpuState, dpu_step, seed_thresholds
from entrowatch.profile import compute_alpha


def state(avg=0.5, std=0.2):
    return DpuState(avg_threshold=avg, std_threshold=std)


def run(s, totals, errors=None, t0=0):
    """Feed totals one per step; same value as lin/ang error unless given."""
    updates = []
    history = []
    for i, total in enumerate(totals):
        history.append(errors[i] if errors is not None else total)
        update = dpu_step(
            s,
            t_ms=t0 + i * 2500,
            total=total,
            recent_lin=history,
            recent_ang=history,
            next_revision=len(updates) + 1,
        )
        if update is not None:
            updates.append(update)
    return updates


def test_no_update_before_100_samples():
    s = state()
    assert run(s, [0.0] * 99) == []
    assert s.samples_since_update == 99


def test_update_when_both_statistics_beat_thresholds():
    s = state(avg=0.5, std=0.2)
    totals = [0.4] * 50 + [0.3] * 50  # mean 0.35 < 0.5, pstdev 0.05 < 0.2
    updates = run(s, totals)
    assert len(updates) == 1
    assert updates[0].avg_threshold == pytest.approx(0.35)
    assert updates[0].std_threshold == pytest.approx(0.05)
    assert (s.avg_threshold, s.std_threshold) == (
        updates[0].avg_threshold,
        updates[0].std_threshold,
    )


def test_no_update_when_mean_fails():
    s = state(avg=0.5, std=0.2)
    assert run(s, [0.6] * 100) == []  # mean 0.6 >= 0.5
    assert (s.avg_threshold, s.std_threshold) == (0.5, 0.2)


def test_no_update_when_only_std_fails():
    s = state(avg=0.5, std=0.05)
    totals = [0.2, 0.6] * 50  # mean 0.4 < 0.5 but pstdev 0.2 >= 0.05
    assert run(s, totals) == []


def test_ties_do_not_update():
    s = state(avg=0.4, std=0.0)
    assert run(s, [0.4] * 100) == []  # mean == threshold: strict
    s = state(avg=0.5, std=0.0)
    assert run(s, [0.4] * 100) == []  # std == threshold: strict


def test_counter_restarts_after_accepted_update():
    s = state(avg=0.5, std=0.2)
    updates = run(s, [0.1] * 100)
    assert len(updates) == 1 and s.samples_since_update == 0
    # identical stats cannot beat the just-tightened thresholds, and even a
    # qualifying stretch must wait out a full window first
    more = run(s, [0.05] * 99, t0=10_000_000)
    assert more == []
    assert s.samples_since_update == 99


def test_sliding_check_after_first_window():
    s = state(avg=0.5, std=0.2)
    # first 100 fail the mean check; the check then slides every sample and
    # fires once the window is dominated by the calm stretch (94 samples in:
    # mean 0.148 and pstdev 0.19 both beat the thresholds)
    totals = [0.9] * 100 + [0.1] * 120
    updates = run(s, totals)
    assert len(updates) == 1
    assert updates[0].t_ms == 2500 * 193


def test_update_recomputes_alpha_from_last_window_errors():
    s = state(avg=math.inf, std=math.inf)
    errors = [float(i % 10) for i in range(100)]
    updates = run(s, [0.2] * 100, errors=errors)
    assert len(updates) == 1
    expected = compute_alpha(errors[-DPU_WINDOW:])
    assert updates[0].profile.alpha_lin == expected
    assert updates[0].profile.alpha_ang == expected
    assert updates[0].profile.revision == 1
    assert s.error_history_lin == tuple(errors[-DPU_WINDOW:])


def test_no_update_without_enough_errors():
    s = state(avg=math.inf, std=math.inf)
    updates = []
    for i in range(120):
        update = dpu_step(s, i, 0.1, recent_lin=[0.1] * 50, recent_ang=[0.1] * 50, next_revision=1)
        if update:
            updates.append(update)
    assert updates == []


def test_thresholds_non_increasing_across_updates():
    s = state(avg=math.inf, std=math.inf)
    # alternating pairs keep pstdev nonzero so later blocks can still beat it
    totals = [0.5, 0.6] * 50 + [0.3, 0.35] * 50 + [0.2, 0.22] * 50
    updates = run(s, totals)
    assert len(updates) == 3
    avgs = [u.avg_threshold for u in updates]
    stds = [u.std_threshold for u in updates]
    assert all(a >= b for a, b in zip(avgs, avgs[1:]))
    assert all(a >= b for a, b in zip(stds, stds[1:]))


def test_seed_thresholds_from_history():
    history = [0.1, 0.2, 0.3, 0.4]
    avg, std = seed_thresholds(history)
    assert avg == fmean(history)
    assert std == pstdev(history)


def test_seed_thresholds_without_history():
    assert seed_thresholds(None) == (math.inf, math.inf)
    assert seed_thresholds([]) == (math.inf, math.inf)


def test_seed_thresholds_constant_zero_blocks_updates_forever():
    avg, std = seed_thresholds([0.0] * 200)
    assert (avg, std) == (0.0, 0.0)
    s = DpuState(avg_threshold=avg, std_threshold=std)
    assert run(s, [0.0] * 150) == []  # 0 < 0 is false under strict inequality


def test_state_validation():
    with pytest.raises(ValueError):
        DpuState(avg_threshold=-0.1, std_threshold=0.1)
    with pytest.raises(ValueError):
        DpuState(avg_threshold=0.1, std_threshold=0.1, window=0)
