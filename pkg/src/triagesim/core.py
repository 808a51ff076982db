"""Domain types and stochastic primitives shared by the simulator and estimators.

Time is measured in minutes everywhere (float64 is far below microsecond
resolution over any realistic horizon); no wall-clock types appear inside
the simulation layer.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleParametersError, ParameterError

_MASK64 = (1 << 64) - 1


class ExamClass(enum.Enum):
    """The three exam populations sharing one reading queue."""

    PE_POSITIVE = "pe_positive"
    NON_PE_POSITIVE = "non_pe_positive"
    NON_CHEST_CT = "non_chest_ct"


class Cohort(enum.Enum):
    WORK_HOUR = "work"
    OFF_HOUR = "off"


class QueueDiscipline(enum.Enum):
    """Reading order. AI_PRIORITY serves flagged exams ahead of all unflagged
    ones, first-in-first-out within each group, without preempting a read in
    progress."""

    FIFO = "fifo"
    AI_PRIORITY = "ai_priority"


class ReaderRole(enum.Enum):
    RESIDENT = "resident"
    STAFF = "staff"
    FELLOW = "fellow"
    EMERGENCY_PHYSICIAN = "emergency_physician"


class Diagnosis(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INDETERMINATE = "indeterminate"


class Location(enum.Enum):
    ED = "ed"
    INPATIENT = "inpatient"
    OUTPATIENT = "outpatient"


@dataclass(frozen=True)
class DeviceOperatingPoint:
    """True-positive fraction and queue-adjusted false-positive fraction of
    the triage device."""

    tpf: float
    fpf_adjusted: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.tpf <= 1.0:
            raise ParameterError(f"tpf must be in [0, 1], got {self.tpf}")
        if not 0.0 <= self.fpf_adjusted <= 1.0:
            raise ParameterError(
                f"fpf_adjusted must be in [0, 1], got {self.fpf_adjusted}"
            )


@dataclass(frozen=True)
class WorkflowParams:
    """Complete parameter set for one stationary workload.

    Construction fails with InfeasibleParametersError unless per-radiologist
    utilization is strictly below 1, i.e. mean_interarrival must exceed
    mean_service_time(params) / n_radiologists.
    """

    prevalence: float
    mean_interarrival: float
    n_radiologists: int
    read_time_diseased: float
    read_time_nondiseased_effective: float
    device: DeviceOperatingPoint

    def __post_init__(self) -> None:
        if not 0.0 <= self.prevalence <= 1.0:
            raise ParameterError(f"prevalence must be in [0, 1], got {self.prevalence}")
        if not self.mean_interarrival > 0:
            raise ParameterError(
                f"mean_interarrival must be > 0, got {self.mean_interarrival}"
            )
        if int(self.n_radiologists) != self.n_radiologists or self.n_radiologists < 1:
            raise ParameterError(
                f"n_radiologists must be an integer >= 1, got {self.n_radiologists}"
            )
        if not self.read_time_diseased > 0:
            raise ParameterError(
                f"read_time_diseased must be > 0, got {self.read_time_diseased}"
            )
        if not self.read_time_nondiseased_effective > 0:
            raise ParameterError(
                "read_time_nondiseased_effective must be > 0, got "
                f"{self.read_time_nondiseased_effective}"
            )
        if self.utilization >= 1.0:
            raise InfeasibleParametersError(
                f"utilization {self.utilization:.4f} >= 1: mean inter-arrival "
                f"{self.mean_interarrival} min cannot keep up with mean service "
                f"{mean_service_time(self):.4f} min across {self.n_radiologists} "
                "radiologists"
            )

    @property
    def utilization(self) -> float:
        """Offered load per radiologist (rho)."""
        return (mean_service_time(self) / self.mean_interarrival) / self.n_radiologists

    @property
    def flag_probability(self) -> float:
        """Marginal probability that an arriving exam carries an AI flag."""
        return (
            self.prevalence * self.device.tpf
            + (1.0 - self.prevalence) * self.device.fpf_adjusted
        )


def mean_service_time(params: WorkflowParams) -> float:
    """Prevalence-weighted mean read time across the two service populations."""
    return (
        params.prevalence * params.read_time_diseased
        + (1.0 - params.prevalence) * params.read_time_nondiseased_effective
    )


def trial_stream(master_seed: int, trial_index: int = 0) -> np.random.Generator:
    """Independent random stream for one trial.

    Streams are derived from a counter-based (Philox) generator keyed on
    (master_seed, trial_index), so trials are reproducible and independent of
    the order in which they run.
    """
    if master_seed < 0 or trial_index < 0:
        raise ParameterError("seed and trial index must be non-negative")
    key = np.array([master_seed & _MASK64, trial_index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_exponential(mean: float, rng: np.random.Generator) -> float:
    """One draw from an exponential distribution with the given mean (minutes)."""
    if not mean > 0:
        raise ParameterError(f"exponential mean must be > 0, got {mean}")
    return float(rng.exponential(mean))


def label_exam(params: WorkflowParams, rng: np.random.Generator) -> tuple[bool, bool]:
    """Draw (is_diseased, ai_flag) for one arriving exam.

    Disease status is Bernoulli(prevalence); the flag is Bernoulli(tpf) for
    diseased exams and Bernoulli(fpf_adjusted) otherwise, independently
    across exams.
    """
    is_diseased = rng.random() < params.prevalence
    p_flag = params.device.tpf if is_diseased else params.device.fpf_adjusted
    ai_flag = rng.random() < p_flag
    return bool(is_diseased), bool(ai_flag)
