"""Shape of the acceleration shift ``delta_tau(r) = tau(p, r) - tau(p, 0)``.

Depending on the damping parameter the shift falls monotonically with r,
dips then rises, or rises monotonically. The two damping values that
separate these regimes are found by bisection on the regime label.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BracketError, DomainError, InsufficientGridError
from .qslt import QsltResult, qslt_closed, qslt_from_factor
from .specfun import ASYMPTOTIC_ACCEL_FACTOR, accel_factor

__all__ = [
    "CriticalPair",
    "CriticalSearch",
    "Plateau",
    "RegimeLabel",
    "classify_regime",
    "default_r_grid",
    "delta_tau_curve",
    "find_critical_pair",
    "plateau_value",
    "sweep_delta_tau",
]

EPS_CLASS = 1e-9
MIN_POINTS = 50
R_MAX = 5.0
R_POINTS = 200


class RegimeLabel(str, enum.Enum):
    MONOTONE_INCREASING = "MonotoneIncreasing"
    MONOTONE_DECREASING = "MonotoneDecreasing"
    DIP_THEN_RISE = "DipThenRise"
    FLAT = "Flat"

    def __str__(self):
        return self.value


def default_r_grid(r_max: float = R_MAX, points: int = R_POINTS) -> np.ndarray:
    return np.linspace(0.0, r_max, points)


def _check_grid(r_grid) -> np.ndarray:
    grid = np.asarray(r_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("r grid must be a non-empty 1-d sequence")
    if grid[0] < 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("r grid must be non-negative and strictly ascending")
    return grid


def sweep_delta_tau(p, r_grid=None, workers: int | None = None) -> list[QsltResult]:
    """Closed-form records along ``r_grid`` (default: 200 points on [0, 5]).

    Rows are computed on ``workers`` threads when given and always returned
    in grid order.
    """
    grid = _check_grid(default_r_grid() if r_grid is None else r_grid)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda r: qslt_closed(p, r), grid))
    return [qslt_closed(p, r) for r in grid]


def delta_tau_curve(p, a_values) -> np.ndarray:
    """``tau(p, a) - tau(p, 1)`` for an array of acceleration factors."""
    return np.asarray(qslt_from_factor(p, np.asarray(a_values, dtype=float))) - qslt_from_factor(p, 1.0)


def _values(records) -> np.ndarray:
    return np.array([rec.delta_tau if isinstance(rec, QsltResult) else float(rec) for rec in records])


def classify_regime(records: Sequence, eps: float = EPS_CLASS) -> RegimeLabel:
    """Label a delta_tau curve given as sweep records or plain numbers.

    Steps no larger than ``eps`` count as level. A curve whose total variation
    is below ``eps`` is flat; otherwise it must fall to a single interior
    minimum and rise after it, by more than ``eps`` on each side, to count as
    a dip. Shapes outside the four labels (a rise followed by a fall, say)
    raise ``ValueError``.
    """
    y = _values(records)
    if y.size < MIN_POINTS:
        raise InsufficientGridError(f"need at least {MIN_POINTS} points, got {y.size}")
    steps = np.diff(y)
    if np.abs(steps).sum() < eps:
        return RegimeLabel.FLAT
    signs = np.where(steps > eps, 1, np.where(steps < -eps, -1, 0))
    if not np.any(signs < 0):
        return RegimeLabel.MONOTONE_INCREASING
    if not np.any(signs > 0):
        return RegimeLabel.MONOTONE_DECREASING
    k = int(np.argmin(y))
    descent = y[0] - y[k]
    ascent = y[-1] - y[k]
    if 0 < k < y.size - 1 and descent > eps and ascent > eps:
        if not np.any(signs[:k] > 0) and not np.any(signs[k:] < 0):
            return RegimeLabel.DIP_THEN_RISE
    raise ValueError("curve is neither monotone, flat, nor a single dip followed by a rise")


@dataclass(frozen=True)
class CriticalSearch:
    """Bisection settings; the label at ``lower`` must be decreasing and at ``upper`` increasing."""

    lower: float = 1e-4
    upper: float = 0.1
    rel_width: float = 1e-3
    r_max: float = R_MAX
    points: int = R_POINTS
    eps: float = EPS_CLASS
    max_iter: int = 200


@dataclass(frozen=True)
class CriticalPair:
    p_c0: float
    p_c1: float
    residual: float
    widths_c0: tuple[float, ...] = field(default=(), repr=False)
    widths_c1: tuple[float, ...] = field(default=(), repr=False)


def bisect_boundary(predicate: Callable[[float], bool], lo: float, hi: float,
                    rel_width: float, max_iter: int = 200) -> tuple[float, list[float]]:
    """Geometric bisection for the point where ``predicate`` turns from True to False.

    ``predicate(lo)`` must be True and ``predicate(hi)`` False. Returns the
    bracket's geometric midpoint and the relative bracket width after each step.
    """
    widths = []
    for _ in range(max_iter):
        if hi / lo - 1.0 <= rel_width:
            break
        mid = math.sqrt(lo * hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
        widths.append(hi / lo - 1.0)
    return math.sqrt(lo * hi), widths


def find_critical_pair(search: CriticalSearch = CriticalSearch()) -> CriticalPair:
    """Locate the decreasing/dip and dip/increasing boundaries in the damping parameter."""
    a_grid = np.array([accel_factor(r) for r in default_r_grid(search.r_max, search.points)])

    def label(p):
        return classify_regime(delta_tau_curve(p, a_grid), search.eps)

    low_label, high_label = label(search.lower), label(search.upper)
    if low_label is not RegimeLabel.MONOTONE_DECREASING or high_label is not RegimeLabel.MONOTONE_INCREASING:
        raise BracketError(
            f"expected decreasing at p = {search.lower:g} and increasing at p = {search.upper:g}, "
            f"got {low_label} and {high_label}"
        )
    p_c0, w0 = bisect_boundary(lambda p: label(p) is RegimeLabel.MONOTONE_DECREASING,
                               search.lower, search.upper, search.rel_width, search.max_iter)
    p_c1, w1 = bisect_boundary(lambda p: label(p) is not RegimeLabel.MONOTONE_INCREASING,
                               search.lower, search.upper, search.rel_width, search.max_iter)
    residual = max(w0[-1] if w0 else 0.0, w1[-1] if w1 else 0.0)
    return CriticalPair(p_c0=p_c0, p_c1=p_c1, residual=residual, widths_c0=tuple(w0), widths_c1=tuple(w1))


@dataclass(frozen=True)
class Plateau:
    finite: float
    asymptotic: float
    difference: float
    r_finite: float


def plateau_value(p, r_finite: float = R_MAX) -> Plateau:
    """Large-acceleration value of delta_tau, using ``a -> sqrt(pi)/2``, next to its value at ``r_finite``."""
    finite = qslt_closed(p, r_finite).delta_tau
    asymptotic = float(delta_tau_curve(p, ASYMPTOTIC_ACCEL_FACTOR))
    return Plateau(finite=finite, asymptotic=asymptotic, difference=finite - asymptotic, r_finite=r_finite)
