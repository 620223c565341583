"""Brute-force route to the speed-limit quantities.

Every number here is produced by building the truncated joint state,
pushing it through the Kraus channel, contracting to the effective qubit and
integrating the speed numerically. Nothing is taken from the closed forms,
which makes this module the independent check on :mod:`unruh_qsl.qslt`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .channels import (
    amplitude_damping,
    amplitude_damping_derivative,
    apply_to_alice,
    phase_damping,
    phase_damping_derivative,
)
from .errors import AccuracyError, DomainError, ZeroEvolutionError
from .qslt import contract_effective, hs_norm, qslt_closed
from .rindler_state import JointState, build_reduced_state
from .specfun import _check_r

__all__ = [
    "OracleConfig",
    "avg_speed_numeric",
    "compare_with_closed_forms",
    "distance_numeric",
    "phase_qslt_numeric",
    "qslt_numeric",
]

ORACLE_R_CAP = 3.0
P_GRID = (0.0, 0.01, 0.1, 0.5, 0.9)
R_GRID = (0.0, 0.5, 1.0, 2.0, 3.0)
FD_P_MIN = 0.01


@dataclass(frozen=True)
class OracleConfig:
    """Tolerances for the brute-force pipeline.

    ``path_steps`` is the number of interior points at which the analytic
    path derivative is compared with finite differences by
    :func:`derivative_residual`. ``r_cap`` may only exceed 3 when
    ``allow_large_r`` is set: direct construction at large ``r`` needs
    enormous Fock cutoffs.
    """

    trace_tol: float = 1e-12
    quad_tol: float = 1e-11
    r_cap: float = ORACLE_R_CAP
    path_steps: int = 16
    allow_large_r: bool = False

    def __post_init__(self):
        if not (self.trace_tol > 0 and self.quad_tol > 0):
            raise DomainError("oracle tolerances must be positive")
        if self.r_cap < 0 or (self.r_cap > ORACLE_R_CAP and not self.allow_large_r):
            raise DomainError(f"r_cap must lie in [0, {ORACLE_R_CAP}] unless allow_large_r is set")
        if self.path_steps < 1:
            raise DomainError("path_steps must be positive")


DEFAULT_CONFIG = OracleConfig()


@lru_cache(maxsize=32)
def _state(r: float, trace_tol: float) -> JointState:
    return build_reduced_state(r, trace_tol=trace_tol)


def _initial_state(r, cfg: OracleConfig) -> JointState:
    r = _check_r(r)
    if r > cfg.r_cap:
        raise DomainError(f"r = {r} exceeds the oracle cap {cfg.r_cap}")
    return _state(r, cfg.trace_tol)


def _integrate(func, lo, hi, cfg: OracleConfig) -> float:
    value, abserr, info = quad(func, lo, hi, epsabs=cfg.quad_tol, epsrel=cfg.quad_tol, limit=200, full_output=1)[:3]
    if abserr > max(cfg.quad_tol, cfg.quad_tol * abs(value)):
        raise AccuracyError(f"quadrature error estimate {abserr:.3g} above tolerance {cfg.quad_tol:g}")
    return value


def distance_numeric(p_tau, r, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    state = _initial_state(r, cfg)
    damped = apply_to_alice(state, amplitude_damping(p_tau))
    return hs_norm(contract_effective(state.matrix - damped.matrix))


def avg_speed_numeric(p_tau, r, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """Average of the effective speed along ``p: 1 -> p_tau`` over a unit driving time.

    The integral runs in ``u = sqrt(p)``, which absorbs the ``1/sqrt(p)``
    singularity of ``d rho / dp`` at the fully decayed end.
    """
    state = _initial_state(r, cfg)
    p_tau = float(p_tau)
    if not (0.0 <= p_tau <= 1.0):
        raise DomainError(f"damping parameter must lie in [0, 1], got {p_tau!r}")
    if p_tau == 1.0:
        return 0.0

    def speed(u):
        return 2.0 * u * hs_norm(contract_effective(amplitude_damping_derivative(state, u * u)))

    return _integrate(speed, math.sqrt(p_tau), 1.0, cfg)


def qslt_numeric(p_tau, r, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    if float(p_tau) == 1.0:
        raise ZeroEvolutionError("no evolution at p_tau = 1: distance and speed both vanish")
    return distance_numeric(p_tau, r, cfg) / avg_speed_numeric(p_tau, r, cfg)


def phase_qslt_numeric(q_tau, r, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """Speed-limit ratio along the dephasing path ``q: 0 -> q_tau``.

    Integrated in ``v = sqrt(1 - q)`` to tame the ``q -> 1`` endpoint.
    """
    state = _initial_state(r, cfg)
    q_tau = float(q_tau)
    if not (0.0 <= q_tau <= 1.0):
        raise DomainError(f"phase damping parameter must lie in [0, 1], got {q_tau!r}")
    if q_tau == 0.0:
        raise ZeroEvolutionError("no evolution at q_tau = 0: distance and speed both vanish")
    dephased = apply_to_alice(state, phase_damping(q_tau))
    distance = hs_norm(contract_effective(state.matrix - dephased.matrix))

    def speed(v):
        return 2.0 * v * hs_norm(contract_effective(phase_damping_derivative(state, 1.0 - v * v)))

    return distance / _integrate(speed, math.sqrt(1.0 - q_tau), 1.0, cfg)


def derivative_residual(p_tau, r, cfg: OracleConfig = DEFAULT_CONFIG, step: float = 1e-6) -> float:
    """Largest relative gap between the analytic ``d rho/dp`` and central differences.

    Sampled at ``cfg.path_steps`` points of ``[max(p_tau, FD_P_MIN), 1 - 2 step]``;
    closer to ``p = 0`` the ``sqrt(p)`` curvature dominates the difference error.
    """
    state = _initial_state(r, cfg)
    lo = max(float(p_tau), FD_P_MIN)
    worst = 0.0
    for p in np.linspace(lo, 1.0 - 2 * step, cfg.path_steps):
        exact = amplitude_damping_derivative(state, p)
        plus = apply_to_alice(state, amplitude_damping(p + step)).matrix
        minus = apply_to_alice(state, amplitude_damping(p - step)).matrix
        fd = (plus - minus) / (2 * step)
        scale = abs(exact).max()
        worst = max(worst, float(abs(fd - exact).max() / scale))
    return worst


def compare_with_closed_forms(p_values=P_GRID, r_values=R_GRID, cfg: OracleConfig = DEFAULT_CONFIG) -> dict:
    """Largest absolute oracle-vs-closed-form deviation per quantity.

    Points with ``r > cfg.r_cap`` are skipped. Returns a dict with keys
    ``distance``, ``avg_speed``, ``tau_qsl`` and ``points`` (number evaluated).
    """
    worst = {"distance": 0.0, "avg_speed": 0.0, "tau_qsl": 0.0}
    points = 0
    for r in r_values:
        if r > cfg.r_cap:
            continue
        for p in p_values:
            closed = qslt_closed(p, r)
            d = distance_numeric(p, r, cfg)
            v = avg_speed_numeric(p, r, cfg)
            worst["distance"] = max(worst["distance"], abs(d - closed.distance))
            worst["avg_speed"] = max(worst["avg_speed"], abs(v - closed.avg_speed))
            if p < 1.0:
                worst["tau_qsl"] = max(worst["tau_qsl"], abs(d / v - closed.tau_qsl))
            points += 1
    return {**worst, "points": points}
