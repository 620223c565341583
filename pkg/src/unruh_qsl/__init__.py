"""Quantum speed limits for an entangled scalar-field pair with one uniformly accelerated party."""

__version__ = "0.1.0"

from .analysis import (
    CriticalPair,
    CriticalSearch,
    RegimeLabel,
    classify_regime,
    find_critical_pair,
    plateau_value,
    sweep_delta_tau,
)
from .channels import KrausPair, amplitude_damping, apply_to_alice, phase_damping
from .oracle import OracleConfig, avg_speed_numeric, distance_numeric, phase_qslt_numeric, qslt_numeric
from .qslt import (
    EffectiveQubit,
    QsltResult,
    SweepRecord,
    avg_speed_closed,
    contract_effective,
    euclidean_distance_closed,
    hs_norm,
    phase_qslt,
    qslt_closed,
)
from .rindler_state import FockCutoff, JointState, build_reduced_state, choose_cutoff, trace_deficit
from .specfun import Rapidity, accel_factor, polylog_neg_half, rapidity_from_frequency
