"""Independent oracles shared by the test modules.

These deliberately avoid the package's own code paths: plain summation for
the polylogarithm and dense 4x4 linear algebra for the r = 0 Bell state.
"""
import math

import numpy as np
import pytest


def long_sqrt_weighted_sum(x, chunk=1_000_000, rtol=1e-18):
    """sum_{m>=1} sqrt(m) x**(m-1) by brute force, however many terms it takes."""
    if x == 0.0:
        return 1.0
    log_x = math.log(x)
    total = 0.0
    start = 1
    while True:
        m = np.arange(start, start + chunk, dtype=float)
        terms = np.sqrt(m) * np.exp((m - 1.0) * log_x)
        total += float(terms.sum())
        if terms[-1] < rtol * total:
            return total
        start += chunk


def bell_state_4x4():
    """(|00> + |11>)/sqrt2 as a density matrix on qubit x {|0>, |1>}."""
    psi = np.zeros(4)
    psi[0] = psi[3] = 1 / math.sqrt(2)
    return np.outer(psi, psi).astype(complex)


def amplitude_damp_4x4(rho, p):
    k0 = np.array([[1, 0], [0, math.sqrt(p)]])
    k1 = np.array([[0, math.sqrt(1 - p)], [0, 0]])
    out = np.zeros_like(rho)
    for k in (k0, k1):
        big = np.kron(k, np.eye(2))
        out += big @ rho @ big.conj().T
    return out


@pytest.fixture
def bell():
    return bell_state_4x4()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
