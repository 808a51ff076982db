"""Closed-form queueing results used to verify the simulator.

Covers the M/M/c delay probability (Erlang C), the FIFO mean queueing wait,
and Cobham's mean waits for non-preemptive priority classes sharing one
exponential service rate. The priority result is exact only when every class
has the same service rate, which is how the simulator-agreement checks are
set up.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import WorkflowParams
from .errors import InfeasibleParametersError, ParameterError


def erlang_c(c: int, offered_load: float) -> float:
    """P(wait > 0) in an M/M/c queue with offered load a = lambda/mu.

    Uses the stable Erlang-B recurrence rather than factorials, so large
    server counts are fine.
    """
    if int(c) != c or c < 1:
        raise ParameterError(f"server count must be an integer >= 1, got {c}")
    if offered_load < 0:
        raise ParameterError(f"offered load must be >= 0, got {offered_load}")
    if offered_load == 0.0:
        return 0.0
    rho = offered_load / c
    if rho >= 1.0:
        raise InfeasibleParametersError(
            f"offered load {offered_load} >= {c} servers: no steady state"
        )
    b = 1.0
    for k in range(1, int(c) + 1):
        b = offered_load * b / (k + offered_load * b)
    return b / (1.0 - rho * (1.0 - b))


def mmc_fifo_wait(lam: float, mu: float, c: int) -> float:
    """Mean queueing wait Wq (minutes) for M/M/c under FIFO."""
    if lam < 0 or mu <= 0:
        raise ParameterError("need lam >= 0 and mu > 0")
    if lam == 0.0:
        return 0.0
    return erlang_c(c, lam / mu) / (c * mu - lam)


@dataclass(frozen=True)
class PriorityLoad:
    """A non-preemptive priority workload with a common service rate.

    arrival_rates are per minute, highest-priority class first.
    """

    arrival_rates: tuple[float, ...]
    service_rate: float
    servers: int

    def __post_init__(self) -> None:
        if not self.arrival_rates:
            raise ParameterError("at least one class is required")
        if any(lam < 0 for lam in self.arrival_rates):
            raise ParameterError("arrival rates must be >= 0")
        if self.service_rate <= 0:
            raise ParameterError("service rate must be > 0")
        if int(self.servers) != self.servers or self.servers < 1:
            raise ParameterError("server count must be an integer >= 1")
        total = sum(self.arrival_rates)
        if total / (self.servers * self.service_rate) >= 1.0:
            raise InfeasibleParametersError(
                "total load >= capacity: no steady state for this priority load"
            )

    @property
    def total_rate(self) -> float:
        return sum(self.arrival_rates)


def mmc_priority_wait(load: PriorityLoad) -> tuple[float, ...]:
    """Cobham mean queueing waits per class, highest priority first.

    Wq_k = W0 / ((1 - sigma_{k-1}) (1 - sigma_k)) with
    sigma_k the cumulative load of classes 1..k and
    W0 = ErlangC(c, lambda/mu) / (c mu).
    """
    c = load.servers
    mu = load.service_rate
    w0 = erlang_c(c, load.total_rate / mu) / (c * mu)
    waits = []
    sigma_prev = 0.0
    for lam in load.arrival_rates:
        sigma_k = sigma_prev + lam / (c * mu)
        waits.append(w0 / ((1.0 - sigma_prev) * (1.0 - sigma_k)))
        sigma_prev = sigma_k
    return tuple(waits)


def analytic_time_savings(params: WorkflowParams, equal_service_mean: float) -> float:
    """Mean TAT savings for diseased exams when both populations share one
    exponential service mean.

    Flagged exams form the high-priority class (arrival rate
    lambda * flag_probability); the diseased mean wait under priority is the
    TPF-weighted mixture of the two class waits, and the saving is measured
    against the FIFO wait.
    """
    if equal_service_mean <= 0:
        raise ParameterError("equal_service_mean must be > 0")
    lam = 1.0 / params.mean_interarrival
    mu = 1.0 / equal_service_mean
    c = params.n_radiologists
    lam_flagged = lam * params.flag_probability
    lam_plain = lam - lam_flagged
    fifo = mmc_fifo_wait(lam, mu, c)
    w_flagged, w_plain = mmc_priority_wait(
        PriorityLoad(arrival_rates=(lam_flagged, lam_plain), service_rate=mu, servers=c)
    )
    tpf = params.device.tpf
    diseased_priority_wait = tpf * w_flagged + (1.0 - tpf) * w_plain
    return fifo - diseased_priority_wait
