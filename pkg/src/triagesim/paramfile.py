"""The parameter document passed from `estimate` to the simulation commands.

A versioned JSON file holding every workflow parameter plus fit diagnostics.
Fields that could not be estimated (for example when the closure log is
missing) are null and listed under "missing" so downstream consumers fail
loudly rather than silently.
"""
from __future__ import annotations

import json

from .core import DeviceOperatingPoint, WorkflowParams
from .errors import FormatError, ParameterError

SCHEMA_VERSION = 1


def empty_document() -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "prevalence": None,
        "counts": {
            "n_diseased": None,
            "n_queue_total": None,
            "n_non_pe_positive": None,
            "n_non_chest_ct": None,
        },
        "interarrival": {"work": None, "off": None},
        "read_time": {
            "pe_positive": None,
            "non_pe_positive": None,
            "non_chest_ct": None,
        },
        "read_time_diseased": None,
        "effective_nondiseased_read_time": None,
        "device": {"tpf": None, "specificity": None, "fpf_adjusted": None},
        "missing": [],
        "diagnostics": {},
    }


def save_parameters(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2, sort_keys=True)
        handle.write("\n")


def load_parameters(path) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(
            f"{path}: expected a parameter document with schema_version "
            f"{SCHEMA_VERSION}"
        )
    return doc


def _require(doc: dict, dotted: str):
    node = doc
    for part in dotted.split("."):
        node = node.get(part) if isinstance(node, dict) else None
    if node is None:
        raise ParameterError(
            f"parameter file is missing {dotted!r}; re-run estimate with the "
            "inputs that produce it"
        )
    return node


def workflow_params_from_doc(
    doc: dict, mean_interarrival: float, n_radiologists: int
) -> WorkflowParams:
    """Build simulation parameters from a parameter document plus the two
    swept quantities (inter-arrival mean and radiologist count)."""
    device = DeviceOperatingPoint(
        tpf=float(_require(doc, "device.tpf")),
        fpf_adjusted=float(_require(doc, "device.fpf_adjusted")),
    )
    return WorkflowParams(
        prevalence=float(_require(doc, "prevalence")),
        mean_interarrival=mean_interarrival,
        n_radiologists=n_radiologists,
        read_time_diseased=float(_require(doc, "read_time_diseased")),
        read_time_nondiseased_effective=float(
            _require(doc, "effective_nondiseased_read_time")
        ),
        device=device,
    )
