import math

import pytest

from entrowatch.baseline import run_baseline
from entrowatch.estimator import CommandSample
from entrowatch.profile import ALPHA_FLOOR, BaselineError
from entrowatch.simulate import DriverModel, simulate_log


def constant_log(lin, ang, seconds):
    return [
        CommandSample(t_ms=i * 50, lin=lin, ang=ang)
        for i in range(int(seconds * 20))
    ]


def test_noisy_baseline_yields_finite_thresholds():
    doc = run_baseline(simulate_log(DriverModel(seed=0), 120.0))
    assert doc.profile.alpha_lin > ALPHA_FLOOR
    assert doc.profile.alpha_ang > ALPHA_FLOOR
    assert math.isfinite(doc.dpu_avg)
    assert math.isfinite(doc.dpu_std)
    assert doc.dpu_avg >= 0.0
    assert doc.dpu_std >= 0.0


def test_constant_motion_floors_alpha_and_zeroes_thresholds():
    doc = run_baseline(constant_log(0.5, 0.0, 60.0))
    assert doc.profile.alpha_lin == ALPHA_FLOOR
    assert doc.profile.alpha_ang == ALPHA_FLOOR
    # every batch under the floored profile lands in the outermost bins,
    # single bin per dimension, entropy identically zero
    assert doc.dpu_avg == 0.0
    assert doc.dpu_std == 0.0


def test_short_recording_refused():
    with pytest.raises(BaselineError, match="insufficient baseline data"):
        run_baseline(constant_log(0.5, 0.0, 10.0))


def test_min_errors_boundary():
    # 100 errors need 103 filtered samples (3 warm up) -> 309 raw samples
    log = constant_log(0.3, 0.1, 309 * 0.05)
    doc = run_baseline(log)
    assert doc.profile.revision == 0
    with pytest.raises(BaselineError):
        run_baseline(log[:-3])


def test_idle_log_floors_alpha_with_inert_thresholds():
    # zero motion still produces (zero) errors for the profile, but no
    # active windows, so adaptation thresholds stay infinite
    doc = run_baseline(constant_log(0.0, 0.0, 60.0))
    assert doc.profile.alpha_lin == ALPHA_FLOOR
    assert doc.profile.alpha_ang == ALPHA_FLOOR
    assert doc.dpu_avg == math.inf
    assert doc.dpu_std == math.inf


def test_baseline_is_deterministic():
    log = simulate_log(DriverModel(seed=9), 150.0)
    assert run_baseline(log) == run_baseline(log)


def test_alpha_tracks_noise_scale():
    small = run_baseline(simulate_log(DriverModel(seed=4, noise_sigma_lin=0.03, noise_sigma_ang=0.06), 150.0))
    large = run_baseline(simulate_log(DriverModel(seed=4, noise_sigma_lin=0.12, noise_sigma_ang=0.24), 150.0))
    assert large.profile.alpha_lin > 2 * small.profile.alpha_lin
    assert large.profile.alpha_ang > 2 * small.profile.alpha_ang
