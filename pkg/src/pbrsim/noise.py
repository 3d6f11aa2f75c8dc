"""Device calibration ingestion and noise-channel construction.

Calibration files are JSON documents with fixed units in the key names:

    {"qubits":   [{"id", "t1_us", "t2_us", "p1", "single_ns", "p01", "p10"}...],
     "couplers": [{"q0", "q1", "p2", "duration_ns"}...],
     "readout_us": 1.0}

Unknown keys are rejected. Only the duration keys may be omitted; they
fall back to 36 ns (single), 68 ns (two-qubit) and 1 us (readout).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .circuits import (
    Circuit,
    Gate,
    MEASURE,
    NOISE,
    SINGLE_QUBIT_KINDS,
    TWO_QUBIT_KINDS,
    _gate_duration,
)
from .config import (
    DEFAULT_READOUT_S,
    DEFAULT_SINGLE_GATE_S,
    DEFAULT_TWO_QUBIT_GATE_S,
    mcphase_cz_equivalents,
)
from .errors import CalibrationError, FormatError, RangeError, ValidationError
from .states import KrausChannel

DEPOLARIZING = "depolarizing"
THERMODYNAMICAL = "thermodynamical"
NOISE_MODELS = (DEPOLARIZING, THERMODYNAMICAL)


@dataclass(frozen=True)
class QubitCalibration:
    id: int
    t1: float
    t2: float
    p1: float
    single_gate_duration: float = DEFAULT_SINGLE_GATE_S
    readout_p01: float = 0.0
    readout_p10: float = 0.0

    def __post_init__(self):
        if self.t1 <= 0:
            raise ValidationError(f"qubit {self.id}: t1 must be > 0")
        if self.t2 <= 0:
            raise ValidationError(f"qubit {self.id}: t2 must be > 0")
        for name in ("p1", "readout_p01", "readout_p10"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"qubit {self.id}: {name}={v!r} outside [0, 1]")
        if self.single_gate_duration < 0:
            raise ValidationError(f"qubit {self.id}: negative gate duration")


@dataclass(frozen=True)
class CouplerCalibration:
    q0: int
    q1: int
    p2: float
    duration: float = DEFAULT_TWO_QUBIT_GATE_S

    def __post_init__(self):
        if self.q0 == self.q1:
            raise ValidationError(f"coupler ({self.q0}, {self.q1}) is a self-loop")
        if not 0.0 <= self.p2 <= 1.0:
            raise ValidationError(f"coupler ({self.q0}, {self.q1}): p2 outside [0, 1]")
        if self.duration < 0:
            raise ValidationError(f"coupler ({self.q0}, {self.q1}): negative duration")


@dataclass(frozen=True)
class CalibrationSnapshot:
    qubits: tuple[QubitCalibration, ...]
    couplers: tuple[CouplerCalibration, ...]
    readout_duration: float = DEFAULT_READOUT_S

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "couplers", tuple(self.couplers))
        if not self.qubits:
            raise ValidationError("qubit list is empty")
        ids = [q.id for q in self.qubits]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate qubit ids")
        known = set(ids)
        for c in self.couplers:
            for q in (c.q0, c.q1):
                if q not in known:
                    raise ValidationError(f"coupler references unknown qubit {q}")
        if self.readout_duration < 0:
            raise ValidationError("readout_us must be >= 0")
        object.__setattr__(self, "_by_id", {q.id: q for q in self.qubits})
        object.__setattr__(
            self, "_by_pair", {frozenset((c.q0, c.q1)): c for c in self.couplers}
        )

    def qubit(self, qid: int) -> QubitCalibration:
        try:
            return self._by_id[qid]
        except KeyError:
            raise CalibrationError(f"no calibration for qubit {qid}") from None

    def coupler(self, a: int, b: int) -> CouplerCalibration:
        try:
            return self._by_pair[frozenset((a, b))]
        except KeyError:
            raise CalibrationError(f"no calibration for coupler ({a}, {b})") from None


_QUBIT_KEYS = {"id", "t1_us", "t2_us", "p1", "single_ns", "p01", "p10"}
_COUPLER_KEYS = {"q0", "q1", "p2", "duration_ns"}


def _reject_unknown(entry: dict, allowed: set, where: str) -> None:
    extra = set(entry) - allowed
    if extra:
        raise FormatError(f"unknown keys {sorted(extra)} in {where}")


def _require(entry: dict, key: str, where: str):
    if key not in entry:
        raise ValidationError(f"{where} is missing required key {key!r}")
    return entry[key]


def load_calibration(path) -> CalibrationSnapshot:
    """Read a calibration snapshot from a JSON file (units in key names)."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"calibration file does not parse: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("calibration document must be an object")
    _reject_unknown(doc, {"qubits", "couplers", "readout_us"}, "calibration document")
    qubits = []
    for entry in doc.get("qubits", []):
        _reject_unknown(entry, _QUBIT_KEYS, f"qubit entry {entry.get('id')}")
        where = f"qubit entry {entry.get('id')}"
        qubits.append(
            QubitCalibration(
                id=int(_require(entry, "id", where)),
                t1=float(_require(entry, "t1_us", where)) * 1e-6,
                t2=float(_require(entry, "t2_us", where)) * 1e-6,
                p1=float(_require(entry, "p1", where)),
                single_gate_duration=float(entry.get("single_ns", 36.0)) * 1e-9,
                readout_p01=float(_require(entry, "p01", where)),
                readout_p10=float(_require(entry, "p10", where)),
            )
        )
    couplers = []
    for entry in doc.get("couplers", []):
        where = f"coupler entry ({entry.get('q0')}, {entry.get('q1')})"
        _reject_unknown(entry, _COUPLER_KEYS, where)
        couplers.append(
            CouplerCalibration(
                q0=int(_require(entry, "q0", where)),
                q1=int(_require(entry, "q1", where)),
                p2=float(_require(entry, "p2", where)),
                duration=float(entry.get("duration_ns", 68.0)) * 1e-9,
            )
        )
    readout = float(doc.get("readout_us", DEFAULT_READOUT_S * 1e6)) * 1e-6
    return CalibrationSnapshot(tuple(qubits), tuple(couplers), readout)


def save_calibration(cal: CalibrationSnapshot, path) -> None:
    doc = {
        "qubits": [
            {
                "id": q.id,
                "t1_us": q.t1 * 1e6,
                "t2_us": q.t2 * 1e6,
                "p1": q.p1,
                "single_ns": q.single_gate_duration * 1e9,
                "p01": q.readout_p01,
                "p10": q.readout_p10,
            }
            for q in cal.qubits
        ],
        "couplers": [
            {"q0": c.q0, "q1": c.q1, "p2": c.p2, "duration_ns": c.duration * 1e9}
            for c in cal.couplers
        ],
        "readout_us": cal.readout_duration * 1e6,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def uniform_calibration(
    n_qubits: int,
    *,
    t1=150e-6,
    t2=120e-6,
    p1=0.0,
    p2=0.0,
    p01=0.0,
    p10=0.0,
    single=DEFAULT_SINGLE_GATE_S,
    two=DEFAULT_TWO_QUBIT_GATE_S,
    readout=DEFAULT_READOUT_S,
    edges=None,
) -> CalibrationSnapshot:
    """Homogeneous snapshot; couplers on `edges` (all pairs when omitted)."""
    qubits = tuple(
        QubitCalibration(i, t1, t2, p1, single, p01, p10) for i in range(n_qubits)
    )
    if edges is None:
        edges = itertools.combinations(range(n_qubits), 2)
    couplers = tuple(CouplerCalibration(a, b, p2, two) for a, b in edges)
    return CalibrationSnapshot(qubits, couplers, readout)


_PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _check_probability(p: float, name: str = "p") -> float:
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"{name}={p!r} outside [0, 1]")
    return float(p)


def depolarizing_channel(p: float, arity: int = 1) -> KrausChannel:
    """Mix with the maximally mixed state: rho -> (1-p) rho + p I/2^arity.

    Pauli form: keep weight 1 - p(4^a - 1)/4^a on identity, p/4^a on every
    other Pauli string.
    """
    _check_probability(p)
    if arity not in (1, 2):
        raise RangeError(f"arity must be 1 or 2, got {arity}")
    dim4 = 4**arity
    ops = []
    strings = list(itertools.product(_PAULIS, repeat=arity))
    for i, factors in enumerate(strings):
        mat = factors[0]
        for f in factors[1:]:
            mat = np.kron(mat, f)
        weight = 1.0 - p * (dim4 - 1) / dim4 if i == 0 else p / dim4
        ops.append(np.sqrt(weight) * mat)
    return KrausChannel(ops, check=False)


def p_from_time(t: float, T: float) -> float:
    """Decay probability 1 - exp(-t/T) accumulated over a gate window."""
    if T <= 0:
        raise RangeError(f"T={T!r} must be > 0")
    if t < 0:
        raise RangeError(f"t={t!r} must be >= 0")
    return float(-np.expm1(-t / T))


def mean_p_from_time(durations, T: float) -> float:
    """Unweighted mean of p_from_time over a set of gate durations."""
    return float(np.mean([p_from_time(t, T) for t in durations]))


def amplitude_damping(p_ad: float) -> KrausChannel:
    """T1 relaxation: |1> population decays by (1 - p_ad)."""
    _check_probability(p_ad, "p_ad")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - p_ad)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(p_ad)], [0, 0]], dtype=complex)
    return KrausChannel((k0, k1), check=False)


def dephasing(p_phi: float) -> KrausChannel:
    """Pure dephasing: off-diagonal coherence shrinks by (1 - p_phi)."""
    _check_probability(p_phi, "p_phi")
    # Phase flip with probability p_phi/2 multiplies coherences by 1 - p_phi.
    k0 = np.sqrt(1 - p_phi / 2) * np.eye(2, dtype=complex)
    k1 = np.sqrt(p_phi / 2) * _PAULIS[3]
    return KrausChannel((k0, k1), check=False)


def readout_matrix(q: QubitCalibration) -> np.ndarray:
    """Column-stochastic confusion matrix [[1-p10, p01], [p10, 1-p01]]."""
    return np.array(
        [[1 - q.readout_p10, q.readout_p01], [q.readout_p10, 1 - q.readout_p01]]
    )


def apply_readout(probs: np.ndarray, mats) -> np.ndarray:
    """Push a distribution through per-qubit confusion matrices.

    Equivalent to (M_0 x ... x M_{n-1}) @ probs with qubit 0 as the most
    significant bit, applied axis by axis.
    """
    probs = np.asarray(probs, dtype=float)
    mats = list(mats)
    n = len(mats)
    if probs.size != 2**n:
        raise IndexError(f"distribution of size {probs.size} needs {n} matrices")
    t = probs.reshape((2,) * n)
    for axis, m in enumerate(mats):
        t = np.moveaxis(np.tensordot(np.asarray(m), t, axes=(1, axis)), 0, axis)
    return t.reshape(-1)


def _mcphase_pairs(qubits: tuple[int, ...]) -> list[tuple[int, int]]:
    # Round-robin over adjacent listed pairs: one arity-2 channel per
    # CZ-equivalent keeps inserted noise consistent with gate counting.
    n_controls = len(qubits) - 1
    reps = mcphase_cz_equivalents(n_controls)
    pairs = [(qubits[j], qubits[j + 1]) for j in range(len(qubits) - 1)]
    return [pairs[k % len(pairs)] for k in range(reps)]


def _thermal_insertions(qubits, duration: float, cal: CalibrationSnapshot) -> list[Gate]:
    out = []
    for q in qubits:
        qc = cal.qubit(q)
        out.append(Gate(NOISE, (q,), channel=amplitude_damping(p_from_time(duration, qc.t1))))
        out.append(Gate(NOISE, (q,), channel=dephasing(p_from_time(duration, qc.t2))))
    return out


def attach_noise(c: Circuit, cal: CalibrationSnapshot, model: str) -> Circuit:
    """Insert NOISE gates after each unitary per the chosen model.

    Depolarizing: p1 after single-qubit gates, p2 after two-qubit gates
    (open-controlled multi-qubit phases get one arity-2 channel per
    CZ-equivalent). Thermodynamical: amplitude damping plus dephasing on
    every participating qubit, driven by the gate duration, and again
    over the readout window before MEASURE.
    """
    if model not in NOISE_MODELS:
        raise ValueError(f"unknown noise model {model!r}")
    gates: list[Gate] = []
    for g in c.gates:
        if g.kind == NOISE:
            gates.append(g)
            continue
        if g.kind == MEASURE:
            if model == THERMODYNAMICAL:
                gates.extend(_thermal_insertions(g.qubits, cal.readout_duration, cal))
            gates.append(g)
            continue
        gates.append(g)
        if model == DEPOLARIZING:
            if g.kind in SINGLE_QUBIT_KINDS:
                p = cal.qubit(g.qubits[0]).p1
                gates.append(Gate(NOISE, g.qubits, channel=depolarizing_channel(p, 1)))
            elif g.kind in TWO_QUBIT_KINDS:
                p = cal.coupler(*g.qubits).p2
                gates.append(Gate(NOISE, g.qubits, channel=depolarizing_channel(p, 2)))
            else:  # MCPHASE_OPEN
                for pair in _mcphase_pairs(g.qubits):
                    p = cal.coupler(*pair).p2
                    gates.append(Gate(NOISE, pair, channel=depolarizing_channel(p, 2)))
        else:
            gates.extend(_thermal_insertions(g.qubits, _gate_duration(g, cal), cal))
    return Circuit(c.n_qubits, tuple(gates))
