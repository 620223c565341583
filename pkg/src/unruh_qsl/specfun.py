"""Polylogarithm of order -1/2 and the acceleration factor a(r).

The acceleration factor is the normalised coherence that survives when the
accelerated party's Minkowski mode is traced down to Rindler region I,

    a(r) = cosh(r)**-3 * sum_{n>=0} sqrt(n+1) tanh(r)**(2n)
         = Li_{-1/2}(tanh(r)**2) / (cosh(r) * sinh(r)**2).

It equals 1 at r = 0 and decreases towards sqrt(pi)/2 as r grows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError

__all__ = [
    "ASYMPTOTIC_ACCEL_FACTOR",
    "Rapidity",
    "accel_factor",
    "accel_factor_closed",
    "accel_factor_series",
    "polylog_neg_half",
    "rapidity_from_acceleration",
    "rapidity_from_frequency",
]

#: Direct summation is used for x <= X_SWITCH, the expansion about x = 1 above.
X_SWITCH = 0.99
#: Hard cap on the number of terms in any direct summation.
TERM_CAP = 10_000_000
#: Below this rapidity a(r) is evaluated from its power series (the closed form is 0/0 at r = 0).
R_MIN = 1e-4

_CHUNK = 8192
_SUM_RTOL = 1e-17
_EXPANSION_RTOL = 1e-12

GAMMA_3_2 = 0.5 * math.sqrt(math.pi)
ASYMPTOTIC_ACCEL_FACTOR = GAMMA_3_2

# Riemann zeta at s - k for s = -1/2, k = 0..4 (DLMF 25.2; 21 significant digits,
# cross-checked against mpmath.zeta in the test suite). The k = 4 value only
# feeds the truncation-error estimate.
ZETA_NEG_HALF_INTEGERS = (
    -0.207886224977354566017,  # zeta(-1/2)
    -0.0254852018898330359495,  # zeta(-3/2)
    0.00851692877785033054236,  # zeta(-5/2)
    0.00444101133547943195853,  # zeta(-7/2)
    -0.00309166924721583384482,  # zeta(-9/2)
)


@dataclass(frozen=True)
class Rapidity:
    """Dimensionless acceleration parameter ``r >= 0`` with ``tanh r = exp(-pi*Omega)``."""

    r: float

    def __post_init__(self):
        _check_r(self.r)

    def __float__(self):
        return float(self.r)


def _check_r(r) -> float:
    value = float(r)
    if not math.isfinite(value) or value < 0.0:
        raise DomainError(f"rapidity must be finite and non-negative, got {r!r}")
    return value


def rapidity_from_frequency(omega: float) -> Rapidity:
    """Rapidity for a dimensionless Rindler frequency ``omega = |k| c / a``.

    Uses ``artanh(x) = (log(1 + x) - log(1 - x)) / 2`` with ``1 - x`` taken
    from ``expm1`` so that small frequencies keep full precision.
    """
    omega = float(omega)
    if not math.isfinite(omega) or omega <= 0.0:
        raise DomainError(f"Rindler frequency must be positive and finite, got {omega!r}")
    x = math.exp(-math.pi * omega)
    one_minus_x = -math.expm1(-math.pi * omega)
    if one_minus_x == 0.0:
        raise DomainError(f"Rindler frequency {omega!r} is too small: rapidity overflows")
    return Rapidity(0.5 * (math.log1p(x) - math.log(one_minus_x)))


def rapidity_from_acceleration(acceleration: float, wavenumber: float, c: float = 1.0) -> Rapidity:
    """Rapidity of a mode with wave vector ``wavenumber`` seen at proper ``acceleration``."""
    if not acceleration > 0.0:
        raise DomainError(f"acceleration must be positive, got {acceleration!r}")
    return rapidity_from_frequency(abs(wavenumber) * c / acceleration)


def _sqrt_weighted_sum(x: float, cap: int = TERM_CAP) -> float | None:
    """Return ``sum_{m>=1} sqrt(m) * x**(m-1)``, or None if ``cap`` terms do not suffice."""
    if x == 0.0:
        return 1.0
    log_x = math.log(x)
    total = 0.0
    start = 1
    while start <= cap:
        m = np.arange(start, min(start + _CHUNK, cap + 1), dtype=float)
        terms = np.sqrt(m) * np.exp((m - 1.0) * log_x)
        total += float(terms.sum())
        if terms[-1] <= _SUM_RTOL * total:
            return total
        start += _CHUNK
    return None


def _expansion_terms(mu: float) -> tuple[float, float]:
    """Split Li_{-1/2}(e**mu), mu < 0, into its singular part and regular series.

    Li_s(e**mu) = Gamma(1-s) (-mu)**(s-1) + sum_k zeta(s-k) mu**k / k!; the series
    is truncated at k = 3 and the k = 4 term serves as the error estimate.
    Returns ``(log(Gamma(1-s) (-mu)**(s-1)), series)``.
    """
    if not (-2.0 * math.pi < mu < 0.0):
        raise AccuracyError(f"expansion about x = 1 does not converge for log(x) = {mu!r}")
    series = sum(z * mu**k / math.factorial(k) for k, z in enumerate(ZETA_NEG_HALF_INTEGERS[:4]))
    log_lead = math.log(GAMMA_3_2) - 1.5 * math.log(-mu)
    omitted = abs(ZETA_NEG_HALF_INTEGERS[4] * mu**4 / 24.0)
    if omitted > _EXPANSION_RTOL * (math.exp(min(log_lead, 700.0)) + series):
        raise AccuracyError(f"expansion truncation error {omitted:.3g} too large at log(x) = {mu!r}")
    return log_lead, series


def polylog_neg_half(x: float) -> float:
    """Polylogarithm ``Li_{-1/2}(x) = sum_{n>=1} sqrt(n) x**n`` for ``0 <= x < 1``.

    Direct summation is used up to ``X_SWITCH``; above it (or if the direct
    sum hits ``TERM_CAP``) the expansion about ``x = 1`` takes over.

    Raises
    ------
    DomainError
        If ``x`` is outside ``[0, 1)``.
    AccuracyError
        If neither strategy reaches a relative accuracy of 1e-12.
    """
    x = float(x)
    if not (0.0 <= x < 1.0):
        raise DomainError(f"Li_{{-1/2}}(x) needs 0 <= x < 1, got {x!r}")
    if x == 0.0:
        return 0.0
    if x <= X_SWITCH:
        partial = _sqrt_weighted_sum(x)
        if partial is not None:
            return x * partial
    log_lead, series = _expansion_terms(math.log(x))
    return math.exp(log_lead) + series


def accel_factor_series(r) -> float:
    """a(r) from its defining power series; accurate wherever tanh(r)**2 is not too close to 1."""
    r = _check_r(r)
    t = math.tanh(r)
    partial = _sqrt_weighted_sum(t * t)
    if partial is None:
        raise AccuracyError(f"power series for a(r) needs more than {TERM_CAP} terms at r = {r}")
    return partial / math.cosh(r) ** 3


def accel_factor_closed(r) -> float:
    """a(r) from the polylogarithm form, valid for r > 0."""
    r = _check_r(r)
    if r == 0.0:
        raise DomainError("closed form of a(r) is 0/0 at r = 0; use accel_factor")
    t = math.tanh(r)
    x = t * t
    if x <= X_SWITCH:
        return polylog_neg_half(x) / (math.cosh(r) * math.sinh(r) ** 2)

    # log(tanh^2 r) and log(cosh r sinh^2 r) straight from exp(-2r), so neither
    # cancellation in 1 - tanh^2 nor overflow of the denominator can bite.
    e = math.exp(-2.0 * r)
    mu = 2.0 * math.log1p(-2.0 * e / (1.0 + e))
    if mu == 0.0:
        return ASYMPTOTIC_ACCEL_FACTOR
    log_den = 3.0 * r - 3.0 * math.log(2.0) + math.log1p(e) + 2.0 * math.log1p(-e)
    log_lead, series = _expansion_terms(mu)
    return math.exp(log_lead - log_den) + series * math.exp(-log_den)


def accel_factor(r) -> float:
    """Acceleration factor a(r) in (sqrt(pi)/2, 1].

    >>> accel_factor(0.0)
    1.0
    """
    r = _check_r(r)
    if r <= R_MIN:
        return accel_factor_series(r)
    return accel_factor_closed(r)
