import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import amplitude_damp_4x4, bell_state_4x4
from unruh_qsl.channels import amplitude_damping, apply_to_alice
from unruh_qsl.errors import DimensionError, DivergenceError, DomainError
from unruh_qsl.qslt import (
    EffectiveQubit,
    avg_speed_closed,
    contract_effective,
    euclidean_distance_closed,
    hs_norm,
    phase_qslt,
    phase_qslt_within_bound,
    qslt_closed,
    qslt_from_factor,
    qslt_zero_noise,
    speed_integral,
    speed_integral_footnote,
)
from unruh_qsl.rindler_state import FockCutoff, build_reduced_state
from unruh_qsl.specfun import accel_factor


def mp_speed_integral(p, a):
    """int_p^1 sqrt((4x + a^2)/x) dx by tanh-sinh quadrature at 30 digits."""
    with mpmath.workdps(30):
        f = lambda x: mpmath.sqrt((4 * x + a * a) / x)
        return float(mpmath.quad(f, [p, 1]))


def test_contract_initial_state():
    for r in (0.0, 0.8, 2.0):
        e = contract_effective(build_reduced_state(r).matrix).as_matrix()
        a = accel_factor(r)
        np.testing.assert_allclose(e, [[0.5, a / 2], [a / 2, 0.5]], atol=2e-12)


def test_contract_bell_difference_by_hand():
    p = 0.25
    rho = bell_state_4x4()
    diff = rho - amplitude_damp_4x4(rho, p)
    e = contract_effective(diff).as_matrix()
    c, d = (1 - p) / 2, (1 - math.sqrt(p)) / 2
    np.testing.assert_allclose(e, [[-c, d], [d, c]], atol=1e-16)


def test_contract_zero_and_shape():
    e = contract_effective(np.zeros((6, 6)))
    assert e == EffectiveQubit(0, 0, 0, 0)
    for shape in ((5, 5), (4, 6), (2, 2)):
        with pytest.raises(DimensionError):
            contract_effective(np.zeros(shape))


def test_contract_hermitian_gives_conjugate_pair():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    e = contract_effective(x + x.conj().T)
    assert e.e10 == pytest.approx(np.conj(e.e01))


def test_hs_norm_examples():
    assert hs_norm(np.eye(2) / 2) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    c, d = 0.3, 0.7
    assert hs_norm(np.array([[-c, d], [d, c]])) == pytest.approx(math.sqrt(2 * (c * c + d * d)), rel=1e-15)


@given(st.lists(st.complex_numbers(max_magnitude=10), min_size=4, max_size=4))
def test_hs_norm_is_frobenius(entries):
    m = np.array(entries).reshape(2, 2)
    assert hs_norm(m) == pytest.approx(np.linalg.norm(m, "fro"), rel=1e-12, abs=1e-12)


def test_effective_norm_differs_from_full_space_norm():
    # equal at rest, where the ladder sums have a single term
    for r, same in ((0.0, True), (1.0, False)):
        state = build_reduced_state(r, FockCutoff(60))
        diff = state.matrix - apply_to_alice(state, amplitude_damping(0.2)).matrix
        full = np.linalg.norm(diff.toarray(), "fro")
        eff = hs_norm(contract_effective(diff))
        assert bool(abs(full - eff) < 1e-14) is same


def test_distance_examples():
    assert euclidean_distance_closed(1.0, 2.0) == 0.0
    assert euclidean_distance_closed(0.0, 0.0) == pytest.approx(1.0, rel=1e-15)
    assert euclidean_distance_closed(0.25, 0.0) == pytest.approx(0.5 / math.sqrt(2) * math.sqrt(3.25), rel=1e-15)
    with pytest.raises(DomainError):
        euclidean_distance_closed(1.5, 0.0)


def test_distance_matches_pipeline_at_quarter():
    state = build_reduced_state(0.0)
    diff = state.matrix - apply_to_alice(state, amplitude_damping(0.25)).matrix
    assert hs_norm(contract_effective(diff)) == pytest.approx(euclidean_distance_closed(0.25, 0.0), abs=1e-15)


def test_speed_integral_small_factor_limit():
    assert speed_integral(0.0, 0.0) == 2.0
    assert speed_integral(0.3, 1e-12) == pytest.approx(1.4)
    assert avg_speed_closed(1.0, 1.0) == 0.0


@pytest.mark.parametrize("p", [0.0, 1e-6, 0.01, 0.3, 0.7, 0.99, 1 - 1e-6])
@pytest.mark.parametrize("a", [math.sqrt(math.pi) / 2, 0.95, 1.0])
def test_speed_integral_against_quadrature(p, a):
    ref = mp_speed_integral(p, a)
    assert speed_integral(p, a) == pytest.approx(ref, rel=1e-13, abs=1e-15)
    assert abs(speed_integral(p, a) / (2 * math.sqrt(2)) - ref / (2 * math.sqrt(2))) <= 1e-9


def test_rearranged_integral_matches_antiderivative_form():
    for p in np.linspace(0.0, 0.9, 10):
        for a in (0.5, 0.9, 1.0, 3.0):
            assert speed_integral(p, a) == pytest.approx(speed_integral_footnote(p, a), rel=1e-13)


def test_avg_speed_examples():
    assert avg_speed_closed(0.0, 0.0) == pytest.approx((math.sqrt(5) + math.asinh(2) / 2) / (2 * math.sqrt(2)), rel=1e-15)


def test_qslt_limit_at_full_survival():
    for r in (0.0, 1.0, 3.0, 8.0):
        assert qslt_closed(1 - 1e-8, r).tau_qsl == pytest.approx(1.0, abs=1e-6)
        res = qslt_closed(1.0, r)
        assert (res.tau_qsl, res.distance, res.avg_speed, res.delta_tau) == (1.0, 0.0, 0.0, 0.0)


def test_qslt_near_one_is_smooth():
    # naive double-precision evaluation loses about 8 digits here
    p = 1 - 1e-9
    a = accel_factor(1.0)
    with mpmath.workdps(30):
        s = mpmath.sqrt(mpmath.mpf(p))
        f = lambda x: mpmath.sqrt((4 * x + a * a) / x)
        ref = float(2 * (1 - s) * mpmath.sqrt((1 + s) ** 2 + a * a) / mpmath.quad(f, [mpmath.mpf(p), 1]))
    assert qslt_from_factor(p, a) == pytest.approx(ref, rel=1e-12)
    assert qslt_from_factor(p, a) <= 1.0


@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0, 5.0, 8.0])
def test_zero_noise_formula(r):
    assert qslt_closed(0.0, r).tau_qsl == pytest.approx(qslt_zero_noise(r), abs=1e-12)


def test_qslt_record_fields():
    res = qslt_closed(0.3, 1.2)
    assert res.tau_qsl == pytest.approx(res.distance / res.avg_speed, rel=1e-14)
    assert res.delta_tau == pytest.approx(res.tau_qsl - qslt_closed(0.3, 0.0).tau_qsl, abs=1e-15)
    assert qslt_closed(0.3, 0.0).delta_tau == 0.0
    assert res.a_r == accel_factor(1.2)


@given(st.floats(0.0, 1.0), st.floats(0.0, 10.0))
def test_speed_limit_bound(p, r):
    res = qslt_closed(p, r)
    assert res.tau_qsl <= 1 + 1e-12
    assert (res.distance == 0) == (p == 1.0)


def test_phase_qslt():
    assert phase_qslt(0.0) == 0.0
    assert phase_qslt(0.5) == 1.0
    assert phase_qslt(0.75) == pytest.approx(0.5 / (1 - math.sqrt(0.75)), rel=1e-15)
    assert phase_qslt(0.75) > 1
    assert phase_qslt_within_bound(0.5) and not phase_qslt_within_bound(0.75)
    with pytest.raises(DivergenceError):
        phase_qslt(1.0)
    with pytest.raises(DomainError):
        phase_qslt(-0.1)
