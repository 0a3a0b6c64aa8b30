"""Real-time operator workload estimation from teleoperation command entropy.

The pipeline: 20 Hz velocity commands are block-averaged to 6.67 Hz,
predicted one step ahead by second-order extrapolation, and the prediction
errors are histogrammed against an operator-specific 9-bin profile every
2.5 s. The base-9 entropy of that histogram is the workload estimate; a
moving-average threshold raises HIGH WORKLOAD indications, and the profile
adapts online when recent behaviour is calmer than its thresholds.
"""

from .baseline import run_baseline
from .dpu import DpuState, ProfileUpdate, dpu_step, seed_thresholds
from .entropy import (
    Batch,
    EntropyBatcher,
    EntropyComputation,
    EntropyConfig,
    batch_entropy,
    entropy_from_counts,
    entropy_of,
    histogram,
    total_entropy,
)
from .estimator import (
    BlockAverageFilter,
    CommandSample,
    ErrorPair,
    ErrorStream,
    FilteredSample,
    StreamIntegrityError,
    predict_next,
)
from .profile import (
    BaselineError,
    DriverProfile,
    ProfileDocument,
    ProfileError,
    bin_boundaries,
    bin_index,
    build_baseline,
    compute_alpha,
    default_profile,
    load_profile,
    save_profile,
)
from .replay import ReplayResult, run_session
from .session import (
    EntropyTick,
    RateWarning,
    Session,
    SessionConfig,
    SessionEvent,
    WaisConfig,
)
from .simulate import (
    ArenaState,
    DriverModel,
    ScheduleSegment,
    SimulationError,
    SimulationResult,
    SyntheticDriver,
    WarningResponse,
    run_closed_loop,
    simulate_log,
)
from .telemetry import TelemetryError, read_log, write_log
from .trace import TraceRow, read_trace, write_trace
from .wais import TransitionEvent, WaisUpdate, WorkloadIndicator

__version__ = "0.1.0"

__all__ = [
    "ArenaState",
    "Batch",
    "BaselineError",
    "BlockAverageFilter",
    "CommandSample",
    "DpuState",
    "DriverModel",
    "DriverProfile",
    "EntropyBatcher",
    "EntropyComputation",
    "EntropyConfig",
    "EntropyTick",
    "ErrorPair",
    "ErrorStream",
    "FilteredSample",
    "ProfileDocument",
    "ProfileError",
    "ProfileUpdate",
    "RateWarning",
    "ReplayResult",
    "ScheduleSegment",
    "Session",
    "SessionConfig",
    "SessionEvent",
    "SimulationError",
    "SimulationResult",
    "StreamIntegrityError",
    "SyntheticDriver",
    "TelemetryError",
    "TraceRow",
    "TransitionEvent",
    "WaisConfig",
    "WaisUpdate",
    "WarningResponse",
    "WorkloadIndicator",
    "batch_entropy",
    "bin_boundaries",
    "bin_index",
    "build_baseline",
    "compute_alpha",
    "default_profile",
    "dpu_step",
    "entropy_from_counts",
    "entropy_of",
    "histogram",
    "load_profile",
    "predict_next",
    "read_log",
    "read_trace",
    "run_baseline",
    "run_closed_loop",
    "run_session",
    "save_profile",
    "seed_thresholds",
    "simulate_log",
    "total_entropy",
    "write_log",
    "write_trace",
]
