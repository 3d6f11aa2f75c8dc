"""Angle solving, circuit construction, forbidden-outcome discovery."""

import numpy as np
import pytest

from pbrsim.circuits import (
    CPHASE_OPEN,
    H,
    MCPHASE_OPEN,
    MEASURE,
    PHASE,
    RY,
    X,
    gate_counts,
)
from pbrsim.errors import (
    NoSolutionError,
    ProtocolError,
    RangeError,
    ValidationError,
)
from pbrsim.protocol import (
    ForbiddenMap,
    PBRParams,
    bits_of,
    build_entangling_measurement,
    build_preparation,
    build_test_circuit,
    discover_forbidden_map,
    solve_angles,
    theta_min,
)
from pbrsim.simulate import outcome_distribution


def test_theta_min_values():
    assert abs(theta_min(2) - np.pi / 4) < 1e-15
    assert abs(theta_min(3) - 0.5085882122301613) < 1e-15
    assert abs(theta_min(4) - 0.3739931524730452) < 1e-15
    assert abs(theta_min(5) - 0.29523340544588333) < 1e-15
    assert isinstance(theta_min(2), float)
    with pytest.raises(RangeError):
        theta_min(0)


def test_solve_angles_reference_point():
    alpha, beta = solve_angles(2, np.pi / 4)
    assert abs(alpha - np.pi) < 1e-9
    assert abs(beta) < 1e-9


def test_solve_angles_residuals_on_grid():
    for n in (2, 3, 4, 5):
        tmin = theta_min(n)
        for theta in (tmin, 1.05 * tmin, 1.1 * tmin, 1.3 * tmin, 0.95 * np.pi / 2):
            alpha, beta = solve_angles(n, theta)
            t = np.tan(theta / 2)
            resid = abs(np.exp(1j * alpha) + (1 + t * np.exp(1j * beta)) ** n - 1)
            assert resid < 1e-10
            assert 0.0 <= beta <= np.pi
            assert 0.0 <= alpha < 2 * np.pi


def test_solve_angles_frozen_points():
    cases = {
        2: (4.648139041871555, 1.3002886893295094),
        3: (4.433851687696589, 1.0544006090421956),
        4: (4.359589061084955, 0.966021143034879),
        5: (4.322493258339771, 0.9207045006712548),
    }
    for n, (ea, eb) in cases.items():
        alpha, beta = solve_angles(n, 1.1 * theta_min(n))
        assert abs(alpha - ea) < 1e-9
        assert abs(beta - eb) < 1e-9


def test_solve_angles_below_threshold():
    with pytest.raises(NoSolutionError):
        solve_angles(2, 0.9 * theta_min(2))
    with pytest.raises(NoSolutionError):
        solve_angles(5, 0.99 * theta_min(5))


def test_solve_angles_range_checks():
    with pytest.raises(RangeError):
        solve_angles(0, 0.5)
    with pytest.raises(RangeError):
        solve_angles(2, -0.1)
    with pytest.raises(RangeError):
        solve_angles(2, np.pi)


def test_bits_of():
    assert bits_of(0, 3) == (0, 0, 0)
    assert bits_of(5, 3) == (1, 0, 1)
    assert bits_of(1, 2) == (0, 1)


def test_build_preparation_signs():
    theta = 0.6
    c = build_preparation((0, 1), theta)
    assert [g.kind for g in c.gates] == [RY, RY]
    assert c.gates[0].angle == pytest.approx(theta)
    assert c.gates[1].angle == pytest.approx(-theta)
    from_string = build_preparation("01", theta)
    assert from_string == c
    with pytest.raises(ValidationError):
        build_preparation("021", theta)


def test_measurement_structure_without_phase_layer():
    c = build_entangling_measurement(2, np.pi, 0.0)
    kinds = [g.kind for g in c.gates]
    assert kinds == [X, CPHASE_OPEN, X, H, H, MEASURE]
    assert gate_counts(c) == (4, 1)
    # the X conjugation brackets the entangler on the last qubit
    assert c.gates[0].qubits == (1,)
    assert c.gates[2].qubits == (1,)
    assert c.gates[1].angle == pytest.approx(np.pi)


def test_measurement_structure_with_phase_layer():
    alpha, beta = solve_angles(3, 1.1 * theta_min(3))
    c = build_entangling_measurement(3, alpha, beta)
    kinds = [g.kind for g in c.gates]
    assert kinds == [PHASE, PHASE, PHASE, X, MCPHASE_OPEN, X, H, H, H, MEASURE]
    assert c.gates[4].qubits == (0, 1, 2)
    assert c.gates[3].qubits == (2,)
    assert all(g.angle == pytest.approx(beta) for g in c.gates[:3])


def test_build_test_circuit_input_forms():
    params = PBRParams.solve(2, np.pi / 4)
    a = build_test_circuit(1, params)
    b = build_test_circuit("01", params)
    c = build_test_circuit((0, 1), params)
    assert a == b == c
    with pytest.raises(RangeError):
        build_test_circuit(4, params)
    with pytest.raises(RangeError):
        build_test_circuit(-1, params)
    with pytest.raises(ValidationError):
        build_test_circuit("011", params)


def test_ideal_distribution_two_qubits():
    # closed form at theta = pi/4: probability 0, 1/4, 1/4, 1/2 ordered by
    # Hamming distance from the prepared bitstring
    params = PBRParams.solve(2, np.pi / 4)
    for x in range(4):
        probs = outcome_distribution(build_test_circuit(x, params))
        for z in range(4):
            h = bin(x ^ z).count("1")
            expected = {0: 0.0, 1: 0.25, 2: 0.5}[h]
            assert abs(probs[z] - expected) < 1e-12


def test_ideal_distribution_three_qubits():
    params = PBRParams.solve(3, theta_min(3))
    by_h = {0: 0.0, 1: 0.06996013467331974, 2: 0.1762884926567915, 3: 0.2612541180096656}
    for x in (0, 5):
        probs = outcome_distribution(build_test_circuit(x, params))
        for z in range(8):
            h = bin(x ^ z).count("1")
            assert abs(probs[z] - by_h[h]) < 1e-12


def test_distribution_depends_only_on_hamming_distance():
    rng = np.random.default_rng(19)
    for _ in range(5):
        n = int(rng.integers(2, 5))
        theta = float(rng.uniform(theta_min(n), 0.95 * np.pi / 2))
        params = PBRParams.solve(n, theta)
        ref = outcome_distribution(build_test_circuit(0, params))
        x = int(rng.integers(1, 2**n))
        probs = outcome_distribution(build_test_circuit(x, params))
        for z in range(2**n):
            assert abs(probs[z] - ref[x ^ z]) < 1e-12


def test_forbidden_map_is_identity_on_grid():
    for n in (2, 3, 4, 5):
        tmin = theta_min(n)
        for theta in (tmin, 1.1 * tmin):
            fmap = discover_forbidden_map(PBRParams.solve(n, theta))
            assert fmap.mapping == tuple(range(2**n))


def test_forbidden_map_identity_at_cap():
    for n, frac in ((2, 0.98), (3, 0.95), (4, 1.0), (5, 1.0)):
        params = PBRParams.solve(n, frac * np.pi / 2)
        fmap = discover_forbidden_map(params)
        assert fmap.mapping == tuple(range(2**n))


def test_degenerate_endpoint_small_n():
    # at theta = pi/2 exactly the solver lands on beta = pi where the
    # entangling phase vanishes and every input has many zero outcomes
    for n in (2, 3):
        alpha, beta = solve_angles(n, np.pi / 2)
        assert abs(beta - np.pi) < 1e-6
        params = PBRParams(n=n, theta=np.pi / 2, alpha=alpha, beta=beta)
        with pytest.raises(ProtocolError):
            discover_forbidden_map(params)


def test_endpoint_fine_for_larger_n():
    for n, expected_beta in ((4, 2.418858405776378), (5, 2 * np.pi / 3)):
        alpha, beta = solve_angles(n, np.pi / 2)
        assert abs(beta - expected_beta) < 1e-7
        fmap = discover_forbidden_map(PBRParams(n, np.pi / 2, alpha, beta))
        assert fmap.mapping == tuple(range(2**n))


def test_pbr_params_validation():
    with pytest.raises(ValidationError):
        PBRParams(1, np.pi / 4, np.pi, 0.0)
    with pytest.raises(ValidationError):
        PBRParams(2, 0.5, np.pi, 0.0)  # below theta_min(2)
    with pytest.raises(ValidationError):
        PBRParams(2, np.pi / 4, 1.0, 0.0)  # residual too large


def test_forbidden_map_container():
    fmap = ForbiddenMap((0, 1, 2, 3))
    assert fmap.n == 2
    assert fmap[3] == 3
    with pytest.raises(ProtocolError):
        ForbiddenMap((0, 0, 1, 2))
