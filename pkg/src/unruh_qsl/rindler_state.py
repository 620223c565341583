"""Joint state of the inertial qubit and the region-I Rindler mode.

Basis convention (shared by every module): the joint index of
``|alice, fock>`` is ``alice * (n_max + 1) + fock`` with ``alice`` in {0, 1}
and ``fock`` in 0..n_max.

Tracing region II out of the accelerated Bell pair leaves a direct sum of
rank-one pieces, one per region-II occupation ``n``::

    v_n = tanh(r)**n / (sqrt(2) cosh r) * (|0, n> + sqrt(n+1)/cosh(r) |1, n+1>)

so the matrix is very sparse. It is stored as a CSR array; at r = 3 and a
trace tolerance of 1e-12 the Fock cutoff is already above 3000 levels.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import ConstructionError, CutoffTooLargeError, DomainError
from .specfun import _check_r

__all__ = [
    "FockCutoff",
    "JointState",
    "build_reduced_state",
    "choose_cutoff",
    "dump_csv",
    "omitted_trace",
    "smallest_eigenvalue",
    "trace_deficit",
]

DEFAULT_TRACE_TOL = 1e-12
DEFAULT_HARD_CAP = 5000

HERMITICITY_TOL = 1e-14
POSITIVITY_TOL = -1e-12


@dataclass(frozen=True)
class FockCutoff:
    """Highest Fock level ``n_max`` kept on the accelerated party's mode."""

    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise DomainError(f"Fock cutoff must be an integer >= 1, got {self.n_max!r}")

    @property
    def fock_dim(self) -> int:
        return self.n_max + 1

    @property
    def joint_dim(self) -> int:
        return 2 * (self.n_max + 1)


@dataclass(frozen=True, eq=False)
class JointState:
    """Hermitian operator on qubit x truncated Fock space, with its provenance.

    ``matrix`` is a ``scipy.sparse.csr_array``; treat it as read-only.
    """

    matrix: sp.csr_array
    r: float
    cutoff: FockCutoff

    @property
    def fock_dim(self) -> int:
        return self.cutoff.fock_dim

    @property
    def dim(self) -> int:
        return self.cutoff.joint_dim

    def index(self, alice: int, fock: int) -> int:
        return alice * self.fock_dim + fock

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def trace(self) -> float:
        return math.fsum(self.matrix.diagonal().real)

    def purity(self) -> float:
        m = self.matrix
        return float((m @ m).diagonal().real.sum())


def omitted_trace(r, n_max) -> float:
    """Trace carried by the Fock levels above ``n_max`` (closed form of the geometric tails).

    With ``t = tanh(r)**2`` the ``|0><0|`` block drops ``t**(n_max+1) / 2`` and the
    ``|1><1|`` block drops ``t**n_max * ((n_max+1)(1-t) + t) / 2``.
    """
    r = _check_r(r)
    n_max = np.asarray(n_max, dtype=float)
    t = math.tanh(r) ** 2
    one_minus_t = 1.0 / math.cosh(r) ** 2
    t_pow = np.power(t, n_max)
    return t_pow * ((n_max + 1.0) * one_minus_t / 2.0 + t)


def choose_cutoff(r, trace_tol: float = DEFAULT_TRACE_TOL, hard_cap: int = DEFAULT_HARD_CAP) -> FockCutoff:
    """Smallest cutoff whose omitted trace is at most ``trace_tol``.

    Raises
    ------
    CutoffTooLargeError
        If even ``hard_cap`` levels leave more than ``trace_tol`` behind.
    """
    r = _check_r(r)
    if not (0.0 < trace_tol < 1.0):
        raise DomainError(f"trace tolerance must lie in (0, 1), got {trace_tol!r}")
    levels = np.arange(1, hard_cap + 1)
    ok = np.nonzero(omitted_trace(r, levels) <= trace_tol)[0]
    if ok.size == 0:
        raise CutoffTooLargeError(
            f"r = {r} needs more than {hard_cap} Fock levels for trace tolerance {trace_tol:g}"
        )
    return FockCutoff(int(levels[ok[0]]))


def smallest_eigenvalue(matrix) -> float:
    """Smallest eigenvalue of a sparse Hermitian matrix.

    The spectrum is the union of the spectra of the connected components of
    the sparsity graph, which here are at most a few states each.
    """
    m = sp.csr_array(matrix)
    pattern = sp.csr_array((np.ones(m.nnz), m.indices, m.indptr), shape=m.shape)
    n_comp, labels = connected_components(pattern, directed=False)
    order = np.argsort(labels, kind="stable")
    sizes = np.bincount(labels, minlength=n_comp)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    lowest = math.inf
    for size in np.unique(sizes):
        comps = np.nonzero(sizes == size)[0]
        idx = order[starts[comps][:, None] + np.arange(size)]
        rows = np.repeat(idx, size, axis=1).ravel()
        cols = np.tile(idx, (1, size)).ravel()
        blocks = np.asarray(m[rows, cols]).reshape(len(comps), size, size)
        lowest = min(lowest, float(np.linalg.eigvalsh(blocks).min()))
    return lowest


def check_state(matrix, *, label: str = "state") -> None:
    """Raise ConstructionError unless ``matrix`` is Hermitian, PSD and has trace <= 1."""
    m = sp.csr_array(matrix)
    skew = abs(m - m.conj().T)
    if skew.nnz and skew.max() > HERMITICITY_TOL:
        raise ConstructionError(f"{label} is not Hermitian (max |M - M^H| = {skew.max():.3g})")
    low = smallest_eigenvalue(m)
    if low < POSITIVITY_TOL:
        raise ConstructionError(f"{label} is not positive semidefinite (eigenvalue {low:.3g})")
    tr = math.fsum(m.diagonal().real)
    if tr > 1.0 + HERMITICITY_TOL:
        raise ConstructionError(f"{label} has trace {tr!r} > 1")


def build_reduced_state(r, cutoff: FockCutoff | None = None, trace_tol: float = DEFAULT_TRACE_TOL) -> JointState:
    """Reduced state of Alice and Rindler region I for rapidity ``r``.

    Nonzero entries, with ``t = tanh(r)**2`` and ``c = cosh(r)``::

        <0,n|rho|0,n>     = t**n / (2 c**2)
        <1,n+1|rho|1,n+1> = (n+1) t**n / (2 c**4)
        <1,n+1|rho|0,n>   = sqrt(n+1) t**n / (2 c**3)    (and its mirror)

    If ``cutoff`` is omitted it is chosen with :func:`choose_cutoff`.
    """
    r = _check_r(r)
    if cutoff is None:
        cutoff = choose_cutoff(r, trace_tol)
    n_max = cutoff.n_max
    fd = cutoff.fock_dim
    c = math.cosh(r)
    t = math.tanh(r) ** 2

    n = np.arange(n_max + 1, dtype=float)
    t_pow = np.power(t, n)
    m = n[:-1]
    tm = t_pow[:-1]

    idx = np.arange(n_max + 1)
    excited = fd + idx[1:]  # |1, n+1>
    ground = idx[:-1]  # |0, n>
    rows = np.concatenate([idx, excited, excited, ground])
    cols = np.concatenate([idx, excited, ground, excited])
    coh = np.sqrt(m + 1.0) * tm / (2.0 * c**3)
    vals = np.concatenate([
        t_pow / (2.0 * c**2),
        (m + 1.0) * tm / (2.0 * c**4),
        coh,
        coh,
    ]).astype(complex)
    matrix = sp.csr_array(sp.coo_array((vals, (rows, cols)), shape=(2 * fd, 2 * fd)))
    matrix.eliminate_zeros()
    check_state(matrix, label=f"reduced state at r = {r}")
    return JointState(matrix=matrix, r=r, cutoff=cutoff)


def trace_deficit(state: JointState) -> float:
    """``1 - Tr(rho)``, clipped at zero against rounding."""
    return max(0.0, 1.0 - state.trace())


def dump_csv(state: JointState, stream: TextIO) -> int:
    """Write the nonzero entries as ``row,col,re,im`` rows; returns the number written."""
    coo = state.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["row", "col", "re", "im"])
    for k in order:
        v = coo.data[k]
        writer.writerow([int(coo.row[k]), int(coo.col[k]), f"{v.real:.17g}", f"{v.imag:.17g}"])
    return len(order)
