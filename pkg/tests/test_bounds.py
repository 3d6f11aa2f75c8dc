"""Tolerance thresholds and noise-budget estimates."""

import numpy as np
import pytest

from pbrsim.bounds import (
    epsilon_dec,
    epsilon_dep,
    epsilon_tol,
    noisy_overlap,
    quantum_trace_distance,
    tolerance_report,
)
from pbrsim.errors import RangeError
from pbrsim.noise import (
    CalibrationSnapshot,
    CouplerCalibration,
    DEPOLARIZING,
    QubitCalibration,
    THERMODYNAMICAL,
    mean_p_from_time,
    p_from_time,
)
from pbrsim.protocol import PBRParams, build_test_circuit, theta_min


def test_quantum_trace_distance():
    assert abs(quantum_trace_distance(0.0)) < 1e-15
    assert abs(quantum_trace_distance(np.pi / 2) - 1.0) < 1e-12
    assert abs(quantum_trace_distance(np.pi / 4) - np.sin(np.pi / 4)) < 1e-15
    with pytest.raises(RangeError):
        quantum_trace_distance(-0.1)
    with pytest.raises(RangeError):
        quantum_trace_distance(2.0)


def test_epsilon_tol_values():
    # frozen: (1 - sin(pi/4))^2 / 4 and (1 - sin(theta_min(5)))^5 / 32
    assert abs(epsilon_tol(np.sin(np.pi / 4), 2) - 0.02144660940672625) < 1e-15
    assert abs(epsilon_tol(np.sin(theta_min(5)), 5) - 0.005600077148876709) < 1e-15
    assert epsilon_tol(1.0, 3) == 0.0
    assert abs(epsilon_tol(0.0, 1) - 0.5) < 1e-15
    with pytest.raises(RangeError):
        epsilon_tol(1.5, 2)
    with pytest.raises(RangeError):
        epsilon_tol(0.5, 0)


def test_epsilon_tol_monotonicity():
    for n in (1, 2, 5):
        vals = [epsilon_tol(d, n) for d in np.linspace(0, 1, 11)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
    for d in (0.3, 0.7):
        vals = [epsilon_tol(d, n) for n in range(1, 8)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


def test_epsilon_dep():
    assert abs(epsilon_dep(1e-3, 1e-2, 10, 5) - 0.05847716996609209) < 1e-15
    assert epsilon_dep(0.0, 0.0, 100, 100) == 0.0
    assert abs(epsilon_dep(1e-4, 0.0, 1, 0) - 1e-4) < 1e-15
    with pytest.raises(RangeError):
        epsilon_dep(2.0, 0.0, 1, 1)
    with pytest.raises(RangeError):
        epsilon_dep(0.1, 0.1, -1, 0)


def test_noisy_overlap():
    assert abs(noisy_overlap(np.pi / 4, 0.0) - np.sin(np.pi / 4)) < 1e-15
    assert abs(noisy_overlap(np.pi / 4, 0.1) - 0.9 * np.sin(np.pi / 4)) < 1e-15
    with pytest.raises(RangeError):
        noisy_overlap(np.pi / 4, 1.5)


def test_epsilon_dec():
    pad = mean_p_from_time((36e-9, 68e-9), 192e-6)
    pphi = mean_p_from_time((36e-9, 68e-9), 95e-6)
    assert 2.6e-4 <= pad <= 3.0e-4
    assert 5.2e-4 <= pphi <= 6.0e-4
    val = epsilon_dec(5, pad, pphi)
    assert abs(val - 0.004089988286191183) < 1e-15
    assert 4.0e-3 <= val <= 4.4e-3
    assert epsilon_dec(10, 0.5, 0.9) == 1.0
    with pytest.raises(RangeError):
        epsilon_dec(-1, 0.1, 0.1)


def adjacent_pair_calibration():
    return CalibrationSnapshot(
        (
            QubitCalibration(0, 173e-6, 172e-6, 2.1e-4, 36e-9, 0.01, 0.01),
            QubitCalibration(1, 239e-6, 276e-6, 2.8e-4, 36e-9, 0.01, 0.01),
        ),
        (CouplerCalibration(0, 1, 2.4e-3, 68e-9),),
        readout_duration=600e-9,
    )


def test_tolerance_report_depolarizing():
    params = PBRParams.solve(2, np.pi / 4)
    circuit = build_test_circuit(0, params)
    rep = tolerance_report(params, adjacent_pair_calibration(), circuit, DEPOLARIZING)
    assert rep.model == DEPOLARIZING
    assert rep.n == 2
    assert rep.qubit_ids == (0, 1)
    assert abs(rep.d_quantum - np.sin(np.pi / 4)) < 1e-15
    assert abs(rep.eps_tol_ideal - 0.02144660940672625) < 1e-15
    # prep error per qubit is p1 under the depolarizing budget
    assert rep.eps_prep == (2.1e-4, 2.8e-4)
    assert abs(rep.eps_dep - 2.45e-4) < 1e-18
    assert abs(rep.eps_tol_noisy - 0.02147198764367157) < 1e-12
    assert rep.eps_tol_noisy > rep.eps_tol_ideal
    assert rep.eps_tol_noisy_spread < 1e-5
    assert abs(rep.eps_dec_cumulative - 0.0148908352587) < 1e-10


def test_tolerance_report_thermodynamical():
    params = PBRParams.solve(2, np.pi / 4)
    circuit = build_test_circuit(0, params)
    rep = tolerance_report(params, adjacent_pair_calibration(), circuit, THERMODYNAMICAL)
    assert rep.model == THERMODYNAMICAL
    # prep error per qubit is single-gate damping plus dephasing
    e0 = p_from_time(36e-9, 173e-6) + p_from_time(36e-9, 172e-6)
    e1 = p_from_time(36e-9, 239e-6) + p_from_time(36e-9, 276e-6)
    assert abs(rep.eps_prep[0] - e0) < 1e-18
    assert abs(rep.eps_prep[1] - e1) < 1e-18
    assert abs(rep.eps_tol_noisy - 0.021482785752996864) < 1e-12


def test_tolerance_report_readout_window_dominates_cumulative():
    # a multi-microsecond readout window pushes the cumulative decoherence
    # estimate into the percent range for the adjacent-pair device
    cal = CalibrationSnapshot(
        (
            QubitCalibration(0, 173e-6, 172e-6, 2.1e-4, 36e-9, 0.01, 0.01),
            QubitCalibration(1, 239e-6, 276e-6, 2.8e-4, 36e-9, 0.01, 0.01),
        ),
        (CouplerCalibration(0, 1, 2.4e-3, 68e-9),),
        readout_duration=1.3e-6,
    )
    params = PBRParams.solve(2, np.pi / 4)
    circuit = build_test_circuit(0, params)
    rep = tolerance_report(params, cal, circuit, THERMODYNAMICAL)
    assert 0.02 < rep.eps_dec_cumulative < 0.035
    assert rep.eps_dec < rep.eps_dec_cumulative


def test_tolerance_report_rejects_unknown_model():
    params = PBRParams.solve(2, np.pi / 4)
    circuit = build_test_circuit(0, params)
    with pytest.raises(ValueError):
        tolerance_report(params, adjacent_pair_calibration(), circuit, "white")
