"""Turnaround-time summary statistics and the pre/post comparison test."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats as sps

from .errors import InsufficientDataError, ParameterError


@dataclass(frozen=True)
class TatSummary:
    n: int
    mean: float
    ci95: tuple[float, float]
    percentiles: tuple[float, float, float]  # 2.5th, 50th, 97.5th


def tat_summary(tats: Sequence[float]) -> TatSummary:
    """Mean with t-based 95% CI plus empirical (2.5, 50, 97.5) percentiles."""
    values = np.asarray(tats, dtype=float)
    if values.size < 2:
        raise InsufficientDataError(f"need >= 2 values, got {values.size}")
    n = values.size
    mean = float(values.mean())
    half = float(sps.t.ppf(0.975, n - 1) * values.std(ddof=1) / np.sqrt(n))
    p_lo, p_md, p_hi = np.percentile(values, [2.5, 50.0, 97.5])
    return TatSummary(
        n=n,
        mean=mean,
        ci95=(mean - half, mean + half),
        percentiles=(float(p_lo), float(p_md), float(p_hi)),
    )


@dataclass(frozen=True)
class WelchResult:
    diff_of_means: float
    ci95: tuple[float, float]
    p_one_sided: float
    dof: float


def time_savings_test(pre: Sequence[float], post: Sequence[float]) -> WelchResult:
    """Welch comparison of mean(pre) - mean(post).

    Returns the difference, its 95% CI, and the one-sided p-value for the
    difference being greater than zero.
    """
    a = np.asarray(pre, dtype=float)
    b = np.asarray(post, dtype=float)
    if a.size < 2 or b.size < 2:
        raise InsufficientDataError("each sample needs >= 2 values")
    diff = float(a.mean() - b.mean())
    va, vb = a.var(ddof=1) / a.size, b.var(ddof=1) / b.size
    se = float(np.sqrt(va + vb))
    if se == 0.0:
        p = 0.5 if diff == 0.0 else (0.0 if diff > 0.0 else 1.0)
        return WelchResult(diff, (diff, diff), p, float(a.size + b.size - 2))
    dof = (va + vb) ** 2 / (va**2 / (a.size - 1) + vb**2 / (b.size - 1))
    half = float(sps.t.ppf(0.975, dof) * se)
    p_one = float(sps.t.sf(diff / se, dof))
    return WelchResult(diff, (diff - half, diff + half), p_one, float(dof))


def standardized_difference_means(
    mean1: float, sd1: float, mean2: float, sd2: float
) -> float:
    """Standardized difference of two continuous group summaries:
    (mean2 - mean1) / sqrt((sd1^2 + sd2^2) / 2)."""
    if sd1 < 0 or sd2 < 0:
        raise ParameterError("standard deviations must be >= 0")
    denom = np.sqrt((sd1**2 + sd2**2) / 2.0)
    if denom == 0:
        raise ParameterError("pooled spread is zero: standardized difference undefined")
    return float((mean2 - mean1) / denom)


def standardized_difference_proportions(p1: float, p2: float) -> float:
    """Standardized difference of two proportions:
    (p2 - p1) / sqrt((p1 (1-p1) + p2 (1-p2)) / 2)."""
    for p in (p1, p2):
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"proportions must be in [0, 1], got {p}")
    denom = np.sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / 2.0)
    if denom == 0:
        raise ParameterError("pooled spread is zero: standardized difference undefined")
    return float((p2 - p1) / denom)
