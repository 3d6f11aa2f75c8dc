"""Closed-form tolerance bounds and error-model estimates.

The pass/fail threshold for the test is epsilon_tol = (1 - D)^n / 2^n,
the largest forbidden-outcome probability a maximally psi-epistemic
model can explain at trace distance D. With noisy preparations the
overlap shrinks to (1 - eps) sin(theta), which raises the threshold; eps
is taken from the preparation gates only (one RY per qubit), while the
measurement-circuit noise enters the simulation rather than the bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, RY, circuit_duration
from .errors import RangeError
from .noise import (
    CalibrationSnapshot,
    DEPOLARIZING,
    NOISE_MODELS,
    mean_p_from_time,
    p_from_time,
)
from .protocol import PBRParams


def quantum_trace_distance(theta: float) -> float:
    """sin(theta) for the two pure preparations at opening angle theta."""
    if not 0.0 <= theta <= np.pi / 2 + 1e-12:
        raise RangeError(f"theta={theta!r} outside [0, pi/2]")
    return float(np.sin(theta))


def epsilon_tol(d: float, n: int) -> float:
    """(1 - d)^n / 2^n, the psi-epistemic bound at trace distance d."""
    if not 0.0 <= d <= 1.0:
        raise RangeError(f"d={d!r} outside [0, 1]")
    if n < 1:
        raise RangeError(f"n={n} must be >= 1")
    return float((1.0 - d) ** n / 2**n)


def epsilon_dep(p1: float, p2: float, g1: int, g2: int) -> float:
    """Synthesized depolarizing error 1 - (1-p1)^G1 (1-p2)^G2."""
    for name, p in (("p1", p1), ("p2", p2)):
        if not 0.0 <= p <= 1.0:
            raise RangeError(f"{name}={p!r} outside [0, 1]")
    if g1 < 0 or g2 < 0:
        raise RangeError(f"gate counts ({g1}, {g2}) must be >= 0")
    return float(1.0 - (1.0 - p1) ** g1 * (1.0 - p2) ** g2)


def noisy_overlap(theta: float, eps_dep: float) -> float:
    """(1 - eps_dep) sin(theta): trace distance surviving noisy preparation."""
    if not 0.0 <= eps_dep <= 1.0:
        raise RangeError(f"eps_dep={eps_dep!r} outside [0, 1]")
    return float((1.0 - eps_dep) * quantum_trace_distance(theta))


def epsilon_dec(n: int, p_ad: float, p_phi: float) -> float:
    """Linearized decoherence estimate min(1, n (p_ad + p_phi))."""
    if n < 0:
        raise RangeError(f"n={n} must be >= 0")
    for name, p in (("p_ad", p_ad), ("p_phi", p_phi)):
        if not 0.0 <= p <= 1.0:
            raise RangeError(f"{name}={p!r} outside [0, 1]")
    return float(min(1.0, n * (p_ad + p_phi)))


@dataclass(frozen=True)
class ToleranceReport:
    model: str
    n: int
    d_quantum: float
    d_noisy: float
    eps_tol_ideal: float
    eps_tol_noisy: float
    eps_tol_noisy_spread: float
    eps_dep: float
    eps_dec: float
    eps_dec_cumulative: float
    qubit_ids: tuple[int, ...]
    eps_prep: tuple[float, ...]
    eps_tol_per_qubit: tuple[float, ...]


def _prep_qubits(circuit: Circuit) -> tuple[int, ...]:
    qubits = [g.qubits[0] for g in circuit.gates if g.kind == RY]
    if not qubits:
        qubits = list(range(circuit.n_qubits))
    seen: list[int] = []
    for q in qubits:
        if q not in seen:
            seen.append(q)
    return tuple(seen)


def tolerance_report(
    params: PBRParams, cal: CalibrationSnapshot, circuit: Circuit, model: str
) -> ToleranceReport:
    """Per-model tolerance threshold plus decoherence estimates.

    The preparation error per qubit is p1 under the depolarizing model and
    the single-gate damping plus dephasing probability under the
    thermodynamical one; the reported threshold is the mean over the
    preparation qubits with its spread across them. eps_dec uses the
    duration-averaged damping rates; the cumulative variant integrates
    each qubit's busy time in the given circuit (readout window included).
    """
    if model not in NOISE_MODELS:
        raise ValueError(f"unknown noise model {model!r}")
    n = params.n
    d_q = quantum_trace_distance(params.theta)
    ideal = epsilon_tol(d_q, n)
    qubits = _prep_qubits(circuit)
    cals = [cal.qubit(q) for q in qubits]
    two_durations = [c.duration for c in cal.couplers] or [68e-9]
    t_two = float(np.mean(two_durations))

    eps_prep = []
    for qc in cals:
        if model == DEPOLARIZING:
            eps_prep.append(qc.p1)
        else:
            eps_prep.append(
                p_from_time(qc.single_gate_duration, qc.t1)
                + p_from_time(qc.single_gate_duration, qc.t2)
            )
    per_qubit_tol = [epsilon_tol(noisy_overlap(params.theta, e), n) for e in eps_prep]

    p_ad_bar = float(
        np.mean([mean_p_from_time((qc.single_gate_duration, t_two), qc.t1) for qc in cals])
    )
    p_phi_bar = float(
        np.mean([mean_p_from_time((qc.single_gate_duration, t_two), qc.t2) for qc in cals])
    )
    busy = circuit_duration(circuit, cal)
    cumulative = 0.0
    for q in qubits:
        qc = cal.qubit(q)
        cumulative += p_from_time(busy[q], qc.t1) + p_from_time(busy[q], qc.t2)

    return ToleranceReport(
        model=model,
        n=n,
        d_quantum=d_q,
        d_noisy=float(np.mean([noisy_overlap(params.theta, e) for e in eps_prep])),
        eps_tol_ideal=ideal,
        eps_tol_noisy=float(np.mean(per_qubit_tol)),
        eps_tol_noisy_spread=float(np.std(per_qubit_tol)),
        eps_dep=float(np.mean(eps_prep)),
        eps_dec=epsilon_dec(n, p_ad_bar, p_phi_bar),
        eps_dec_cumulative=min(1.0, cumulative),
        qubit_ids=qubits,
        eps_prep=tuple(eps_prep),
        eps_tol_per_qubit=tuple(per_qubit_tol),
    )
