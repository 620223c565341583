"""Closed-form distance, average speed and speed-limit time.

All relativistic dependence enters through the acceleration factor
``a = a(r)``. With the driving time normalised to one,

    D(p, a)   = (1 - sqrt p) / sqrt 2 * sqrt((1 + sqrt p)**2 + a**2)
    v(p, a)   = F(p, a) / (2 sqrt 2),  F = int_p^1 sqrt((4x + a**2) / x) dx
    tau(p, a) = D / v

``F`` is evaluated in a rearranged form that stays accurate as ``p -> 1``;
:func:`speed_integral_footnote` keeps the textbook antiderivative form for
cross-checks.

The distances come from an *effective qubit*: the 2x2 operator obtained by
summing a joint qubit x Fock operator along the Fock ladder (see
:func:`contract_effective`). Its Hilbert-Schmidt norm is what the closed
forms describe; the Frobenius norm of the full joint operator is different
(it sums squares of the ladder terms instead of squaring their sum).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import DimensionError, DivergenceError, DomainError
from .specfun import _check_r, accel_factor

__all__ = [
    "EffectiveQubit",
    "QsltResult",
    "SweepRecord",
    "avg_speed_closed",
    "contract_effective",
    "distance_from_factor",
    "euclidean_distance_closed",
    "hs_norm",
    "phase_qslt",
    "phase_qslt_within_bound",
    "qslt_closed",
    "qslt_from_factor",
    "qslt_zero_noise",
    "speed_integral",
    "speed_integral_footnote",
]

SMALL_FACTOR = 1e-8
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class EffectiveQubit:
    e00: complex
    e01: complex
    e10: complex
    e11: complex

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.e00, self.e01], [self.e10, self.e11]], dtype=complex)


@dataclass(frozen=True)
class QsltResult:
    """One evaluation of the amplitude-damped speed limit at ``(p_tau, r)``.

    ``tau_qsl`` is a fraction of the actual driving time. ``delta_tau`` is
    measured against the inertial (``r = 0``) value at the same ``p_tau``.
    """

    p_tau: float
    r: float
    a_r: float
    distance: float
    avg_speed: float
    tau_qsl: float
    delta_tau: float


SweepRecord = QsltResult


def contract_effective(joint_op) -> EffectiveQubit:
    """Sum a qubit x Fock operator down to its effective 2x2 qubit operator.

    ``e00 = sum_n <0,n|X|0,n>``, ``e11 = sum_n <1,n|X|1,n>``,
    ``e10 = sum_n <1,n+1|X|0,n>`` and ``e01 = sum_n <0,n|X|1,n+1>``.
    """
    if sp.issparse(joint_op):
        m = sp.csr_array(joint_op)
    else:
        m = np.asarray(joint_op)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 or m.shape[0] < 4:
        raise DimensionError(f"expected a square operator of even dimension >= 4, got shape {m.shape}")
    f = m.shape[0] // 2
    return EffectiveQubit(
        e00=complex(m[:f, :f].diagonal().sum()),
        e01=complex(m[:f, f:].diagonal(1).sum()),
        e10=complex(m[f:, :f].diagonal(-1).sum()),
        e11=complex(m[f:, f:].diagonal().sum()),
    )


def hs_norm(op) -> float:
    """Hilbert-Schmidt norm: root of the summed squared singular values."""
    mat = op.as_matrix() if isinstance(op, EffectiveQubit) else np.asarray(op)
    sv = np.linalg.svd(mat, compute_uv=False)
    return float(np.sqrt(np.sum(sv**2)))


def _check_p(p, *, allow_one=True):
    p = float(p)
    if not (0.0 <= p <= 1.0) or (p == 1.0 and not allow_one):
        raise DomainError(f"damping parameter must lie in [0, 1{']' if allow_one else ')'}, got {p!r}")
    return p


def distance_from_factor(p, a):
    """Effective Hilbert-Schmidt distance between the initial and damped states."""
    s = np.sqrt(p)
    return (1.0 - p) / (1.0 + s) / SQRT2 * np.sqrt((1.0 + s) ** 2 + np.square(a))


def speed_integral_footnote(p, a):
    """``int_p^1 sqrt((4x + a**2)/x) dx`` as a plain antiderivative difference."""
    a2 = np.square(a)
    return (
        np.sqrt(4.0 + a2)
        - np.sqrt(p * (4.0 * p + a2))
        - 0.5 * a2 * (np.arcsinh(2.0 * np.sqrt(p) / a) - np.arcsinh(2.0 / a))
    )


def speed_integral(p, a):
    """``int_p^1 sqrt((4x + a**2)/x) dx``, free of cancellation near ``p = 1``.

    Differences of square roots and of ``asinh`` values are rewritten so that
    the factor ``1 - p`` is explicit. For ``a < SMALL_FACTOR`` the ``a -> 0``
    limit ``2 (1 - p)`` is returned.
    """
    p = float(p)
    a = np.asarray(a, dtype=float)
    omp = 1.0 - p
    s = math.sqrt(p)
    a_safe = np.where(a < SMALL_FACTOR, 1.0, a)
    a2 = np.square(a_safe)
    roots = omp * (4.0 * (1.0 + p) + a2) / (np.sqrt(4.0 + a2) + np.sqrt(p * (4.0 * p + a2)))
    x = 2.0 / a_safe
    y = 2.0 * s / a_safe
    # asinh(x) - asinh(y) = asinh(x sqrt(1+y^2) - y sqrt(1+x^2)), with x^2 - y^2 = 4(1-p)/a^2
    gap = (4.0 * omp / a2) / (x * np.sqrt(1.0 + y * y) + y * np.sqrt(1.0 + x * x))
    value = roots + 0.5 * a2 * np.arcsinh(gap)
    value = np.where(a < SMALL_FACTOR, 2.0 * omp, value)
    return value if value.ndim else float(value)


def qslt_from_factor(p, a):
    """Speed-limit time as a fraction of the driving time; the ``p -> 1`` limit is 1."""
    p = _check_p(p)
    if p == 1.0:
        return np.ones_like(np.asarray(a, dtype=float)) if np.ndim(a) else 1.0
    s = math.sqrt(p)
    a = np.asarray(a, dtype=float)
    tau = 2.0 * (1.0 - p) / (1.0 + s) * np.sqrt((1.0 + s) ** 2 + np.square(a)) / speed_integral(p, a)
    return tau if tau.ndim else float(tau)


def euclidean_distance_closed(p_tau, r) -> float:
    p_tau = _check_p(p_tau)
    return float(distance_from_factor(p_tau, accel_factor(r)))


def avg_speed_closed(p_tau, r) -> float:
    """Time-averaged speed over a unit driving time; zero when ``p_tau = 1``."""
    p_tau = _check_p(p_tau)
    return float(speed_integral(p_tau, accel_factor(r))) / (2.0 * SQRT2)


def qslt_closed(p_tau, r) -> QsltResult:
    """Speed-limit time at ``(p_tau, r)``; ``p_tau = 1`` reports the analytic limit 1."""
    p_tau = _check_p(p_tau)
    r = _check_r(r)
    a = accel_factor(r)
    tau = qslt_from_factor(p_tau, a)
    return QsltResult(
        p_tau=p_tau,
        r=r,
        a_r=a,
        distance=float(distance_from_factor(p_tau, a)),
        avg_speed=float(speed_integral(p_tau, a)) / (2.0 * SQRT2),
        tau_qsl=tau,
        delta_tau=tau - qslt_from_factor(p_tau, 1.0),
    )


def qslt_zero_noise(r) -> float:
    """Speed-limit time of the fully decayed (``p_tau = 0``) system, written out directly."""
    a = accel_factor(r)
    return 2.0 * math.sqrt(a * a + 1.0) / (math.sqrt(a * a + 4.0) + 0.5 * a * a * math.asinh(2.0 / a))


def phase_qslt(q_tau) -> float:
    """Phase-damping speed-limit time ``(1 - sqrt(1-q)) / (1 - sqrt q)``; independent of r.

    Values above 1 (``q_tau > 1/2``) exceed the driving time; see
    :func:`phase_qslt_within_bound`.
    """
    q = float(q_tau)
    if not (0.0 <= q <= 1.0):
        raise DomainError(f"phase damping parameter must lie in [0, 1], got {q!r}")
    if q == 1.0:
        raise DivergenceError("phase-damping speed-limit time diverges at q = 1")
    return (1.0 - math.sqrt(1.0 - q)) / (1.0 - math.sqrt(q))


def phase_qslt_within_bound(q_tau) -> bool:
    """Whether :func:`phase_qslt` respects ``tau_qsl <= tau`` (true iff ``q_tau <= 1/2``)."""
    return phase_qslt(q_tau) <= 1.0
