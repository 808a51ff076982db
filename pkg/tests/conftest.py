import pytest

from triagesim import DeviceOperatingPoint, WorkflowParams


@pytest.fixture
def device():
    return DeviceOperatingPoint(tpf=0.906, fpf_adjusted=0.00206)


@pytest.fixture
def work_hour_params(device):
    """The studied work-hour operating point: 3 radiologists at high load."""
    return WorkflowParams(
        prevalence=0.00319,
        mean_interarrival=2.17,
        n_radiologists=3,
        read_time_diseased=12.1,
        read_time_nondiseased_effective=6.15,
        device=device,
    )


@pytest.fixture
def off_hour_params(device):
    return WorkflowParams(
        prevalence=0.00319,
        mean_interarrival=3.19,
        n_radiologists=3,
        read_time_diseased=12.1,
        read_time_nondiseased_effective=6.15,
        device=device,
    )
