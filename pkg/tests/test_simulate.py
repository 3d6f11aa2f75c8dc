"""Circuit evolution glue: cap enforcement, marginals, measured ordering."""

import numpy as np
import pytest

from pbrsim.circuits import Circuit, Gate, H, MEASURE, RY, X
from pbrsim.errors import CapError
from pbrsim.simulate import marginal_distribution, outcome_distribution, simulate_circuit
from pbrsim.states import ground_state


def test_qubit_cap_enforced():
    big = Circuit(13, (Gate(H, (0,)), Gate(MEASURE, tuple(range(13)))))
    with pytest.raises(CapError):
        simulate_circuit(big)


def test_initial_state_size_checked():
    c = Circuit(2, (Gate(H, (0,)), Gate(MEASURE, (0, 1))))
    with pytest.raises(ValueError):
        simulate_circuit(c, ground_state(3))


def test_measured_qubits_in_listed_order():
    c = Circuit(3, (Gate(X, (2,)), Gate(MEASURE, (2, 0))))
    final, measured = simulate_circuit(c)
    assert measured == (2, 0)
    probs = outcome_distribution(c)
    # qubit 2 is |1> and listed first, so outcome index 10 binary = 2
    assert probs.shape == (4,)
    assert abs(probs[2] - 1.0) < 1e-12


def test_marginal_distribution_orders_and_sums():
    rng = np.random.default_rng(3)
    probs = rng.dirichlet(np.ones(8))
    keep01 = marginal_distribution(probs, 3, (0, 1))
    keep10 = marginal_distribution(probs, 3, (1, 0))
    assert abs(keep01.sum() - 1.0) < 1e-12
    # swapping the kept qubits transposes the outcome index bits
    swapped = keep01.reshape(2, 2).T.reshape(-1)
    assert np.abs(keep10 - swapped).max() < 1e-12
    single = marginal_distribution(probs, 3, (2,))
    t = probs.reshape(2, 2, 2)
    assert abs(single[1] - t[:, :, 1].sum()) < 1e-12


def test_full_measure_is_plain_distribution():
    theta = 0.7
    c = Circuit(1, (Gate(RY, (0,), angle=theta), Gate(MEASURE, (0,))))
    probs = outcome_distribution(c)
    assert abs(probs[0] - np.cos(theta / 2) ** 2) < 1e-12
    assert abs(probs[1] - np.sin(theta / 2) ** 2) < 1e-12
