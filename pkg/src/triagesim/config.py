"""Run configuration: calendar, cleaning thresholds, and device inputs.

Everything the logs cannot tell us lives here: which dates are holidays,
where the working day starts and ends, the pre/post deployment boundary,
histogram bin widths, exclusion thresholds, the ROC slope convention, and
the device's reported operating point.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from datetime import date, datetime, time

import yaml

from .errors import FormatError


def _parse_clock(value) -> time:
    if isinstance(value, time):
        return value
    if isinstance(value, int):
        return time(value, 0)
    try:
        hours, minutes = str(value).split(":")
        return time(int(hours), int(minutes))
    except ValueError as exc:
        raise FormatError(f"cannot parse clock time {value!r}") from exc


def _parse_date(value) -> date:
    if isinstance(value, datetime):
        return value.date()
    if isinstance(value, date):
        return value
    try:
        return date.fromisoformat(str(value))
    except ValueError as exc:
        raise FormatError(f"cannot parse date {value!r}") from exc


@dataclass(frozen=True)
class AnalysisConfig:
    holidays: frozenset[date] = frozenset()
    work_start: time = time(8, 0)
    work_end: time = time(17, 0)
    boundary_date: date | None = None
    interarrival_bin_minutes: float = 1.0
    readtime_bin_minutes: float = 2.0
    max_read_gap_minutes: float = 60.0
    min_daily_closures: int = 30
    min_gaps_per_fit: int = 10
    min_daily_gaps: int = 5
    weighted_fits: bool = False
    roc_slope: float = 1.0
    device_tpf: float | None = None
    device_specificity: float | None = None

    @classmethod
    def from_yaml(cls, path) -> "AnalysisConfig":
        with open(path, encoding="utf-8") as handle:
            try:
                raw = yaml.safe_load(handle) or {}
            except yaml.YAMLError as exc:
                raise FormatError(f"{path}: invalid YAML ({exc})") from exc
        return cls.from_dict(raw, source=str(path))

    @classmethod
    def from_dict(cls, raw: dict, source: str = "<config>") -> "AnalysisConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise FormatError(f"{source}: unknown config keys {sorted(unknown)}")
        values = dict(raw)
        if "holidays" in values:
            values["holidays"] = frozenset(_parse_date(d) for d in values["holidays"] or ())
        for key in ("work_start", "work_end"):
            if key in values:
                values[key] = _parse_clock(values[key])
        if values.get("boundary_date") is not None:
            values["boundary_date"] = _parse_date(values["boundary_date"])
        return cls(**values)

    def to_dict(self) -> dict:
        return {
            "holidays": sorted(d.isoformat() for d in self.holidays),
            "work_start": self.work_start.strftime("%H:%M"),
            "work_end": self.work_end.strftime("%H:%M"),
            "boundary_date": self.boundary_date.isoformat() if self.boundary_date else None,
            "interarrival_bin_minutes": self.interarrival_bin_minutes,
            "readtime_bin_minutes": self.readtime_bin_minutes,
            "max_read_gap_minutes": self.max_read_gap_minutes,
            "min_daily_closures": self.min_daily_closures,
            "min_gaps_per_fit": self.min_gaps_per_fit,
            "min_daily_gaps": self.min_daily_gaps,
            "weighted_fits": self.weighted_fits,
            "roc_slope": self.roc_slope,
            "device_tpf": self.device_tpf,
            "device_specificity": self.device_specificity,
        }
