import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrowatch.entropy import (
    Batch,
    EntropyBatcher,
    EntropyConfig,
    EntropyConfigError,
    batch_entropy,
    entropy_from_counts,
    entropy_of,
    expected_batch_size,
    histogram,
    total_entropy,
)
from entrowatch.estimator import ErrorPair
from entrowatch.profile import bin_boundaries

B1 = bin_boundaries(1.0)


def test_single_bin_entropy_is_zero():
    assert entropy_of([1.0, 0, 0, 0, 0, 0, 0, 0, 0]) == 0.0


def test_uniform_entropy_is_one():
    assert abs(entropy_of([1 / 9] * 9) - 1.0) <= 1e-12


def test_two_even_bins_is_log9_of_2():
    # frozen from a 50-digit decimal evaluation of -2*(1/2)*log9(1/2)
    assert entropy_of([0.5, 0.5, 0, 0, 0, 0, 0, 0, 0]) == 0.3154648767857287


def test_non_normalized_frequencies_fault():
    with pytest.raises(ValueError, match="sum to 1"):
        entropy_of([0.5, 0.6])
    with pytest.raises(ValueError, match="negative"):
        entropy_of([1.5, -0.5])


def test_empty_batch_faults():
    with pytest.raises(ValueError, match="empty batch"):
        entropy_from_counts([0] * 9)


def test_histogram_all_zero_errors_fill_bin_5():
    counts = histogram([0.0] * 7, B1)
    assert counts == [0, 0, 0, 0, 7, 0, 0, 0, 0]


def test_histogram_example_batch():
    counts = histogram([0.0, 0.0, 3.0, -6.0], B1)
    assert counts == [1, 0, 0, 0, 2, 0, 0, 1, 0]
    # frozen from a 50-digit decimal evaluation over p = (1/2, 1/4, 1/4)
    assert batch_entropy([0.0, 0.0, 3.0, -6.0], B1) == 0.4731973151785931


def test_uniform_batch_of_18():
    # two values per bin; bins are closed on the left boundary
    values = [-6.0, -5.5, -5.0, -3.0, -2.5, -1.5, -1.0, -0.7, -0.5]
    values += [0.0, 0.5, 0.7, 1.0, 2.0, 2.5, 4.0, 5.0, 10.0]
    counts = histogram(values, B1)
    assert counts == [2] * 9
    assert abs(batch_entropy(values, B1) - 1.0) <= 1e-12


@given(st.lists(st.integers(min_value=0, max_value=50), min_size=9, max_size=9).filter(sum))
def test_entropy_bounds_and_permutation_invariance(counts):
    hp = entropy_from_counts(counts)
    assert 0.0 <= hp <= 1.0 + 1e-12
    assert entropy_from_counts(list(reversed(counts))) == pytest.approx(hp, abs=1e-12)


@given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=40))
def test_adding_zero_errors_to_central_bin_batch_keeps_zero(n, extra):
    central = [0.1] * n  # bin 5, same as pure zeros
    assert batch_entropy(central, B1) == 0.0
    assert batch_entropy(central + [0.0] * extra, B1) == 0.0


def test_total_entropy_examples():
    assert total_entropy(0.4, 0.6, (0.5, 0.5)) == 0.5
    assert total_entropy(0.0, 0.0) == 0.0
    assert total_entropy(1.0, 0.0, (0.7, 0.3)) == 0.7


def test_config_validates_period_range():
    EntropyConfig(period_s=2.5)
    EntropyConfig(period_s=5.0)
    with pytest.raises(EntropyConfigError, match="period_s"):
        EntropyConfig(period_s=2.4)
    with pytest.raises(EntropyConfigError, match="period_s"):
        EntropyConfig(period_s=5.1)


def test_config_validates_weights():
    with pytest.raises(EntropyConfigError, match="sum to 1"):
        EntropyConfig(weights=(0.6, 0.5))
    with pytest.raises(EntropyConfigError, match="non-negative"):
        EntropyConfig(weights=(1.5, -0.5))


def test_expected_batch_sizes():
    assert expected_batch_size(2.5) == 17
    assert expected_batch_size(3.0) == 20
    assert EntropyConfig(period_s=3.0).expected_batch_size == 20


def err(t_ms, value=1.0):
    return ErrorPair(t_ms=t_ms, err_lin=value, err_ang=-value)


def test_batcher_closes_window_on_boundary_crossing():
    b = EntropyBatcher(period_ms=2500)
    b.note_command(0, moving=True)
    assert b.feed(err(600)) == []
    assert b.feed(err(2400)) == []
    closed = b.feed(err(2500))  # exactly at the boundary: belongs to window 2
    assert len(closed) == 1
    assert closed[0].window_end_ms == 2500
    assert [e.t_ms for e in closed[0].errors] == [600, 2400]


def test_batcher_flush_emits_partial_window():
    b = EntropyBatcher(period_ms=2500)
    b.note_command(100, moving=True)
    b.feed(err(100))
    closed = b.flush()
    assert len(closed) == 1
    assert closed[0].window_end_ms == 2500
    assert b.flush() == []


def test_batcher_skips_windows_without_motion():
    b = EntropyBatcher(period_ms=2500)
    # errors accrue but no command in window 0 was non-zero
    b.note_command(0, moving=False)
    b.feed(err(600, 0.0))
    assert b.feed(err(2600, 0.0)) == []  # window 0 closed silently
    b.note_command(2700, moving=True)
    closed = b.flush()
    assert len(closed) == 1
    assert closed[0].window_end_ms == 5000


def test_batcher_motion_marking_is_per_window():
    b = EntropyBatcher(period_ms=2500)
    b.note_command(2499, moving=True)  # marks window 0 only
    assert b.feed(err(2499)) == []
    closed = b.feed(err(2600))  # crossing the boundary closes window 0
    assert [batch.window_end_ms for batch in closed] == [2500]
    assert b.flush() == []  # window 1 saw no motion command


def test_batcher_rejects_time_regression_across_windows():
    b = EntropyBatcher(period_ms=2500)
    b.note_command(3000, moving=True)
    b.feed(err(3000))
    with pytest.raises(ValueError, match="precedes"):
        b.feed(err(100))


def test_batch_dimension_views():
    batch = Batch(window_end_ms=2500, errors=(err(1, 0.5), err(2, 1.5)))
    assert batch.lin() == (0.5, 1.5)
    assert batch.ang() == (-0.5, -1.5)
