"""Amplitude- and phase-damping noise on the inertial qubit.

Damping parameters are *survival* parameters for the amplitude channel:
``p = exp(-Gamma t)``, so ``p = 1`` is noiseless and ``p = 0`` is full decay.
For the phase channel ``q`` is the dephasing strength (``q = 0`` noiseless).

Kraus operators act as ``rho -> sum_i (K_i x I) rho (K_i x I)^H``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import DimensionError, DomainError
from .rindler_state import JointState

__all__ = [
    "KrausPair",
    "amplitude_damping",
    "amplitude_damping_derivative",
    "apply_kraus",
    "apply_to_alice",
    "phase_damping",
    "phase_damping_derivative",
]

COMPLETENESS_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class KrausPair:
    k0: np.ndarray
    k1: np.ndarray

    def __post_init__(self):
        for k in (self.k0, self.k1):
            if np.shape(k) != (2, 2):
                raise DimensionError(f"qubit Kraus operators must be 2x2, got shape {np.shape(k)}")
        if self.completeness_residual > COMPLETENESS_TOL:
            raise DomainError(f"Kraus pair is not trace preserving (residual {self.completeness_residual:.3g})")

    @property
    def completeness_residual(self) -> float:
        total = sum(k.conj().T @ k for k in (self.k0, self.k1))
        return float(np.max(np.abs(total - np.eye(2))))


def _check_unit_interval(value, name):
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def amplitude_damping(p) -> KrausPair:
    """Amplitude damping with survival probability ``p`` of the excited level."""
    p = _check_unit_interval(p, "amplitude damping parameter p")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(p)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(1.0 - p)], [0.0, 0.0]], dtype=complex)
    return KrausPair(k0, k1)


def phase_damping(q) -> KrausPair:
    """Dephasing of strength ``q``: coherences scale by ``sqrt(1 - q)``, populations fixed."""
    q = _check_unit_interval(q, "phase damping parameter q")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - q)]], dtype=complex)
    k1 = np.array([[0.0, 0.0], [0.0, np.sqrt(q)]], dtype=complex)
    return KrausPair(k0, k1)


def apply_kraus(matrix, kraus: KrausPair) -> sp.csr_array:
    """Apply ``kraus`` to the qubit factor of any operator on qubit x Fock space."""
    m = sp.csr_array(matrix)
    n = m.shape[0]
    if m.shape[0] != m.shape[1] or n % 2:
        raise DimensionError(f"expected a square operator of even dimension, got shape {m.shape}")
    eye = sp.identity(n // 2, dtype=complex, format="csr")
    out = sp.csr_array((n, n), dtype=complex)
    for k in (kraus.k0, kraus.k1):
        lifted = sp.csr_array(sp.kron(sp.csr_array(k), eye, format="csr"))
        out = out + lifted @ m @ lifted.conj().T
    out.eliminate_zeros()
    return sp.csr_array(out)


def apply_to_alice(state: JointState, kraus: KrausPair) -> JointState:
    """Channel output ``sum_i (K_i x I) rho (K_i x I)^H`` as a new :class:`JointState`."""
    if state.matrix.shape != (state.dim, state.dim):
        raise DimensionError(f"state matrix shape {state.matrix.shape} does not match cutoff {state.cutoff}")
    return JointState(matrix=apply_kraus(state.matrix, kraus), r=state.r, cutoff=state.cutoff)


def _blocks(state: JointState):
    m = state.matrix
    f = state.fock_dim
    return m[:f, :f], m[:f, f:], m[f:, :f], m[f:, f:]


def amplitude_damping_derivative(state: JointState, p) -> sp.csr_array:
    """Exact ``d/dp`` of the amplitude-damped state at survival parameter ``p``.

    In qubit blocks the output is ``[[r00 + (1-p) r11, sqrt(p) r01], [sqrt(p) r10, p r11]]``,
    so the derivative is ``[[-r11, r01 / (2 sqrt p)], [r10 / (2 sqrt p), r11]]``.
    """
    p = _check_unit_interval(p, "amplitude damping parameter p")
    if p == 0.0:
        raise DomainError("d/dp of the amplitude-damped state diverges at p = 0")
    _, r01, r10, r11 = _blocks(state)
    half = 0.5 / np.sqrt(p)
    return sp.csr_array(sp.block_array([[-r11, half * r01], [half * r10, r11]], format="csr"))


def phase_damping_derivative(state: JointState, q) -> sp.csr_array:
    """Exact ``d/dq`` of the dephased state: only the coherences move, at rate ``-1/(2 sqrt(1-q))``."""
    q = _check_unit_interval(q, "phase damping parameter q")
    if q == 1.0:
        raise DomainError("d/dq of the dephased state diverges at q = 1")
    r00, r01, r10, _ = _blocks(state)
    rate = -0.5 / np.sqrt(1.0 - q)
    zero = sp.csr_array(r00.shape, dtype=complex)
    return sp.csr_array(sp.block_array([[zero, rate * r01], [rate * r10, zero]], format="csr"))
