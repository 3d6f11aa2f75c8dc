"""Evolve circuits on density matrices and extract outcome distributions."""

from __future__ import annotations

import numpy as np

from .circuits import Circuit, MEASURE, NOISE, gate_unitary
from .config import SIMULATION_QUBIT_CAP
from .errors import CapError
from .states import DensityMatrix, apply_channel, apply_unitary, ground_state, measurement_probs


def simulate_circuit(
    c: Circuit, rho: DensityMatrix | None = None
) -> tuple[DensityMatrix, tuple[int, ...]]:
    """Run a circuit from |0...0> (or a given state).

    Returns the final state and the measured qubits in listed order.
    """
    if c.n_qubits > SIMULATION_QUBIT_CAP:
        raise CapError(
            f"{c.n_qubits} qubits exceeds the simulation cap of {SIMULATION_QUBIT_CAP}"
        )
    if rho is None:
        rho = ground_state(c.n_qubits)
    elif rho.n_qubits != c.n_qubits:
        raise ValueError("initial state size does not match the circuit")
    measured: list[int] = []
    for g in c.gates:
        if g.kind == MEASURE:
            measured.extend(g.qubits)
        elif g.kind == NOISE:
            rho = apply_channel(rho, g.channel, g.qubits)
        else:
            rho = apply_unitary(rho, gate_unitary(g), g.qubits)
    return rho, tuple(measured)


def marginal_distribution(
    probs: np.ndarray, n_qubits: int, keep: tuple[int, ...]
) -> np.ndarray:
    """Marginalize a basis distribution onto the listed qubits, in that order."""
    t = np.asarray(probs).reshape((2,) * n_qubits)
    t = np.moveaxis(t, keep, range(len(keep)))
    return t.reshape(2 ** len(keep), -1).sum(axis=1)


def outcome_distribution(c: Circuit, rho: DensityMatrix | None = None) -> np.ndarray:
    """Distribution over the circuit's measured qubits (all qubits if none)."""
    final, measured = simulate_circuit(c, rho)
    probs = measurement_probs(final)
    if not measured or len(measured) == c.n_qubits and measured == tuple(range(c.n_qubits)):
        return probs
    return marginal_distribution(probs, c.n_qubits, measured)
