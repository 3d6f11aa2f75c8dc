"""Noise channels, calibration snapshots, readout, channel insertion."""

import numpy as np
import pytest

from pbrsim.circuits import (
    CZ,
    Circuit,
    Gate,
    H,
    MCPHASE_OPEN,
    MEASURE,
    NOISE,
    RY,
)
from pbrsim.errors import (
    CalibrationError,
    FormatError,
    RangeError,
    ValidationError,
)
from pbrsim.noise import (
    CalibrationSnapshot,
    CouplerCalibration,
    DEPOLARIZING,
    QubitCalibration,
    THERMODYNAMICAL,
    amplitude_damping,
    apply_readout,
    attach_noise,
    dephasing,
    depolarizing_channel,
    load_calibration,
    mean_p_from_time,
    p_from_time,
    readout_matrix,
    save_calibration,
    uniform_calibration,
)
from pbrsim.states import apply_channel, ground_state, pure_density


def plus_state():
    return pure_density(np.array([1.0, 1.0]) / np.sqrt(2))


def test_p_from_time_values():
    assert abs(p_from_time(36e-9, 192e-6) - 0.00018748242297358128) < 1e-18
    assert abs(p_from_time(68e-9, 192e-6) - 0.00035410395705621415) < 1e-18
    assert abs(p_from_time(36e-9, 95e-6) - 0.0003788755769357205) < 1e-18
    assert abs(p_from_time(68e-9, 95e-6) - 0.000715533357510957) < 1e-18
    assert p_from_time(0.0, 1e-6) == 0.0
    with pytest.raises(RangeError):
        p_from_time(1e-9, 0.0)
    with pytest.raises(RangeError):
        p_from_time(-1e-9, 1e-6)


def test_mean_p_from_time():
    expected = (p_from_time(36e-9, 192e-6) + p_from_time(68e-9, 192e-6)) / 2
    assert abs(mean_p_from_time((36e-9, 68e-9), 192e-6) - expected) < 1e-18
    assert abs(expected - 0.0002707931900148977) < 1e-18


def test_depolarizing_channel_action():
    rng = np.random.default_rng(7)
    for p in (0.0, 0.2, 1.0):
        ch = depolarizing_channel(p, 1)
        rho = plus_state()
        out = apply_channel(rho, ch, (0,))
        expected = (1 - p) * rho.matrix + p * np.eye(2) / 2
        assert np.abs(out.matrix - expected).max() < 1e-12
    for p in (0.1, 0.9):
        ch = depolarizing_channel(p, 2)
        amps = rng.normal(size=4) + 1j * rng.normal(size=4)
        amps /= np.linalg.norm(amps)
        rho = pure_density(amps)
        out = apply_channel(rho, ch, (0, 1))
        expected = (1 - p) * rho.matrix + p * np.eye(4) / 4
        assert np.abs(out.matrix - expected).max() < 1e-12
    with pytest.raises(RangeError):
        depolarizing_channel(1.5, 1)
    with pytest.raises(RangeError):
        depolarizing_channel(0.1, 3)


def test_amplitude_damping_action():
    p = 0.23
    ch = amplitude_damping(p)
    one = pure_density(np.array([0.0, 1.0]))
    out = apply_channel(one, ch, (0,))
    assert abs(out.matrix[1, 1].real - (1 - p)) < 1e-12
    assert abs(out.matrix[0, 0].real - p) < 1e-12
    # ground state is a fixed point
    out0 = apply_channel(ground_state(1), ch, (0,))
    assert np.abs(out0.matrix - ground_state(1).matrix).max() < 1e-12


def test_dephasing_action():
    p = 0.31
    ch = dephasing(p)
    out = apply_channel(plus_state(), ch, (0,))
    assert abs(out.matrix[0, 1] - (1 - p) * 0.5) < 1e-12
    assert abs(out.matrix[0, 0].real - 0.5) < 1e-12


def test_qubit_calibration_validation():
    with pytest.raises(ValidationError):
        QubitCalibration(0, -1.0, 100e-6, 0.0)
    with pytest.raises(ValidationError):
        QubitCalibration(0, 100e-6, 0.0, 0.0)
    with pytest.raises(ValidationError):
        QubitCalibration(0, 100e-6, 100e-6, 1.5)
    with pytest.raises(ValidationError):
        QubitCalibration(0, 100e-6, 100e-6, 0.0, readout_p01=-0.1)


def test_snapshot_validation_and_lookup():
    q0 = QubitCalibration(0, 150e-6, 120e-6, 1e-4)
    q1 = QubitCalibration(1, 150e-6, 120e-6, 1e-4)
    cpl = CouplerCalibration(0, 1, 1e-3, 68e-9)
    cal = CalibrationSnapshot((q0, q1), (cpl,))
    assert cal.qubit(1) is q1
    assert cal.coupler(1, 0) is cpl
    with pytest.raises(CalibrationError):
        cal.qubit(2)
    with pytest.raises(CalibrationError):
        cal.coupler(0, 2)
    with pytest.raises(ValidationError):
        CalibrationSnapshot((), ())
    with pytest.raises(ValidationError):
        CalibrationSnapshot((q0, q0), ())
    with pytest.raises(ValidationError):
        CalibrationSnapshot((q0,), (cpl,))  # coupler names unknown qubit


def test_readout_matrix_and_apply():
    q = QubitCalibration(0, 150e-6, 120e-6, 0.0, 36e-9, 0.02, 0.03)
    m = readout_matrix(q)
    assert np.abs(m - np.array([[0.97, 0.02], [0.03, 0.98]])).max() < 1e-15
    assert np.abs(m.sum(axis=0) - 1.0).max() < 1e-15

    out = apply_readout(np.array([1.0, 0.0, 0.0, 0.0]), [m, m])
    assert np.abs(out - np.array([0.9409, 0.0291, 0.0291, 0.0009])).max() < 1e-12
    assert abs(out.sum() - 1.0) < 1e-12

    # qubit 0 is the most significant bit: flip only its matrix
    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    eye = np.eye(2)
    out = apply_readout(np.array([1.0, 0.0, 0.0, 0.0]), [flip, eye])
    assert np.abs(out - np.array([0.0, 0.0, 1.0, 0.0])).max() < 1e-15

    with pytest.raises(IndexError):
        apply_readout(np.ones(4) / 4, [m])


def test_calibration_file_roundtrip(tmp_path):
    cal = CalibrationSnapshot(
        (
            QubitCalibration(0, 173e-6, 172e-6, 2.1e-4, 36e-9, 0.01, 0.012),
            QubitCalibration(1, 239e-6, 276e-6, 2.8e-4, 36e-9, 0.009, 0.011),
        ),
        (CouplerCalibration(0, 1, 2.4e-3, 68e-9),),
        readout_duration=3e-6,
    )
    path = tmp_path / "cal.json"
    save_calibration(cal, path)
    back = load_calibration(path)
    assert back.readout_duration == pytest.approx(3e-6, rel=1e-12)
    for a, b in zip(cal.qubits, back.qubits):
        assert a.id == b.id
        assert abs(a.t1 - b.t1) < 1e-18
        assert abs(a.t2 - b.t2) < 1e-18
        assert abs(a.p1 - b.p1) < 1e-18
        assert abs(a.readout_p01 - b.readout_p01) < 1e-15
    assert back.coupler(0, 1).p2 == pytest.approx(2.4e-3, rel=1e-12)


def test_calibration_file_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(FormatError):
        load_calibration(path)
    path.write_text('{"qubits": [{"id": 0, "t1_us": 100, "t2_us": 100, "p1": 0, '
                    '"p01": 0, "p10": 0, "color": "red"}]}')
    with pytest.raises(FormatError):
        load_calibration(path)
    path.write_text('{"qubits": [{"id": 0, "t1_us": 100, "p1": 0, "p01": 0, "p10": 0}]}')
    with pytest.raises(ValidationError):
        load_calibration(path)
    path.write_text('{"unexpected": 1}')
    with pytest.raises(FormatError):
        load_calibration(path)


def test_attach_noise_depolarizing_counts():
    cal = uniform_calibration(3, p1=1e-4, p2=1e-3)
    c = Circuit(
        3,
        (
            Gate(RY, (0,), angle=0.3),
            Gate(H, (1,)),
            Gate(CZ, (0, 1)),
            Gate(MCPHASE_OPEN, (0, 1, 2), angle=0.2),
            Gate(MEASURE, (0, 1, 2)),
        ),
    )
    noisy = attach_noise(c, cal, DEPOLARIZING)
    inserted = [g for g in noisy.gates if g.kind == NOISE]
    # one channel per 1q/2q gate, 2*2-1 = 3 channels for the two-control phase
    assert len(inserted) == 1 + 1 + 1 + 3
    arities = [len(g.qubits) for g in inserted]
    assert arities == [1, 1, 2, 2, 2, 2]
    # unitaries and measure order are untouched
    assert [g.kind for g in noisy.gates if g.kind != NOISE] == [
        g.kind for g in c.gates
    ]


def test_attach_noise_thermal_counts():
    cal = uniform_calibration(2, t1=100e-6, t2=80e-6, readout=1e-6)
    c = Circuit(
        2,
        (
            Gate(RY, (0,), angle=0.3),
            Gate(CZ, (0, 1)),
            Gate(MEASURE, (0, 1)),
        ),
    )
    noisy = attach_noise(c, cal, THERMODYNAMICAL)
    inserted = [g for g in noisy.gates if g.kind == NOISE]
    # damping+dephasing per touched qubit: 2 for RY, 4 for CZ, 4 for readout
    assert len(inserted) == 2 + 4 + 4
    # readout-window channels sit before the MEASURE gate
    kinds = [g.kind for g in noisy.gates]
    m = kinds.index(MEASURE)
    assert all(k == NOISE for k in kinds[m - 4 : m])


def test_attach_noise_rejects_unknown_model():
    cal = uniform_calibration(1)
    c = Circuit(1, (Gate(H, (0,)), Gate(MEASURE, (0,))))
    with pytest.raises(ValueError):
        attach_noise(c, cal, "gaussian")
