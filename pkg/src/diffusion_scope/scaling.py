"""Power-law exponents of degree distributions by log-log least squares."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    log_alpha: float
    r2: float
    k_min: int
    points_used: int


def fit_power_law(hist, k_min=2):
    """OLS fit of ``log p_k = -gamma log k + log alpha`` on raw frequencies.

    ``p_k`` is normalised over all degrees >= 1; degrees below ``k_min`` (the
    low-degree hook) and empty degrees are then left out of the regression.
    Returns None when fewer than three points remain.
    """
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    items = sorted((int(k), float(c)) for k, c in dict(hist).items() if k >= 1 and c > 0)
    total = sum(c for _, c in items)
    pts = [(k, c / total) for k, c in items if k >= k_min]
    if len(pts) < 3:
        return None
    x = np.log([k for k, _ in pts])
    y = np.log([p for _, p in pts])
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(xc @ xc)
    if sxx == 0.0:
        return None
    slope = float(xc @ yc) / sxx
    intercept = float(y.mean() - slope * x.mean())
    ss_tot = float(yc @ yc)
    resid = y - (intercept + slope * x)
    ss_res = float(resid @ resid)
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return PowerLawFit(
        gamma=-slope + 0.0,  # normalises -0.0
        log_alpha=intercept,
        r2=min(max(r2, 0.0), 1.0),
        k_min=k_min,
        points_used=len(pts),
    )
