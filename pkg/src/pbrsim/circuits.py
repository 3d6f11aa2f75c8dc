"""Circuit IR over a fixed native-gate vocabulary.

Gates carry their own optional duration; zero means "use the calibration
default" when timing is computed. NOISE entries reference a Kraus channel
and are ignored by gate counting. Serialization is line oriented (one
gate per line, ``KIND angle? qubits...``) for golden-file tests; NOISE
entries are not serializable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TWO_QUBIT_GATE_S, mcphase_cz_equivalents
from .errors import FormatError, KindError
from .states import KrausChannel

H = "H"
X = "X"
SX = "SX"
RY = "RY"
RZ = "RZ"
PHASE = "PHASE"
CZ = "CZ"
SWAP = "SWAP"
CPHASE_OPEN = "CPHASE_OPEN"
MCPHASE_OPEN = "MCPHASE_OPEN"
NOISE = "NOISE"
MEASURE = "MEASURE"

SINGLE_QUBIT_KINDS = frozenset({H, X, SX, RY, RZ, PHASE})
TWO_QUBIT_KINDS = frozenset({CZ, SWAP, CPHASE_OPEN})
ANGLED_KINDS = frozenset({RY, RZ, PHASE, CPHASE_OPEN, MCPHASE_OPEN})
KINDS = SINGLE_QUBIT_KINDS | TWO_QUBIT_KINDS | {MCPHASE_OPEN, NOISE, MEASURE}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    duration: float = 0.0
    channel: KrausChannel | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in KINDS:
            raise KindError(f"unknown gate kind {self.kind!r}")
        k = len(self.qubits)
        if len(set(self.qubits)) != k:
            raise ValueError(f"{self.kind} lists duplicate qubits {self.qubits}")
        if self.kind in SINGLE_QUBIT_KINDS and k != 1:
            raise ValueError(f"{self.kind} acts on exactly 1 qubit, got {k}")
        if self.kind in TWO_QUBIT_KINDS and k != 2:
            raise ValueError(f"{self.kind} acts on exactly 2 qubits, got {k}")
        if self.kind == MCPHASE_OPEN and k < 2:
            raise ValueError("MCPHASE_OPEN needs at least one control and a target")
        if self.kind == MEASURE and k < 1:
            raise ValueError("MEASURE needs at least one qubit")
        if self.kind in ANGLED_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} needs a finite angle, got {self.angle!r}")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        if self.kind == NOISE:
            if self.channel is None:
                raise ValueError("NOISE needs a channel")
            if self.channel.arity != k:
                raise ValueError(
                    f"channel arity {self.channel.arity} does not match {k} qubits"
                )
        elif self.channel is not None:
            raise ValueError(f"{self.kind} takes no channel")
        if not self.duration >= 0.0:
            raise ValueError(f"duration must be >= 0, got {self.duration!r}")

    @property
    def is_unitary(self) -> bool:
        return self.kind not in (NOISE, MEASURE)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        seen_measure = False
        for g in self.gates:
            for q in g.qubits:
                if q >= self.n_qubits:
                    raise ValueError(f"gate {g.kind} uses qubit {q} >= {self.n_qubits}")
            if seen_measure and g.kind != MEASURE:
                raise ValueError("only MEASURE gates may follow a MEASURE")
            seen_measure = seen_measure or g.kind == MEASURE

    @property
    def measured_qubits(self) -> tuple[int, ...]:
        out: list[int] = []
        for g in self.gates:
            if g.kind == MEASURE:
                out.extend(g.qubits)
        return tuple(out)


_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
_H = np.array([[1, 1], [1, -1]]) / np.sqrt(2.0)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def gate_unitary(g: Gate) -> np.ndarray:
    """Unitary of a gate over its own qubits (first listed = most significant)."""
    if g.kind == H:
        return _H.copy()
    if g.kind == X:
        return _X.copy()
    if g.kind == SX:
        return _SX.copy()
    if g.kind == RY:
        c, s = np.cos(g.angle / 2), np.sin(g.angle / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if g.kind == RZ:
        return np.diag([np.exp(-0.5j * g.angle), np.exp(0.5j * g.angle)])
    if g.kind == PHASE:
        return np.diag([1.0, np.exp(1j * g.angle)])
    if g.kind == CZ:
        return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
    if g.kind == SWAP:
        return _SWAP.copy()
    if g.kind in (CPHASE_OPEN, MCPHASE_OPEN):
        # Phase fires when every control reads 0 and the target reads 1;
        # controls are the leading qubits, so that is basis index 1.
        dim = 2 ** len(g.qubits)
        diag = np.ones(dim, dtype=complex)
        diag[1] = np.exp(1j * g.angle)
        return np.diag(diag)
    raise KindError(f"{g.kind} has no unitary")


def decompose_swap(a: int = 0, b: int = 1) -> list[Gate]:
    """One SWAP as 3 CZ + 6 H (each CNOT is H-conjugated CZ)."""
    cz = Gate(CZ, (a, b))
    return [
        Gate(H, (b,)), cz, Gate(H, (b,)),
        Gate(H, (a,)), cz, Gate(H, (a,)),
        Gate(H, (b,)), cz, Gate(H, (b,)),
    ]


def gate_counts(c: Circuit) -> tuple[int, int]:
    """(single-qubit, two-qubit) unitary gate counts; NOISE/MEASURE excluded.

    Open-controlled phase gates are charged their configured CZ-equivalent
    cost, which is 1 for a single control.
    """
    g1 = g2 = 0
    for g in c.gates:
        if g.kind in SINGLE_QUBIT_KINDS:
            g1 += 1
        elif g.kind in TWO_QUBIT_KINDS:
            g2 += 1
        elif g.kind == MCPHASE_OPEN:
            g2 += mcphase_cz_equivalents(len(g.qubits) - 1)
    return g1, g2


def _gate_duration(g: Gate, cal) -> float:
    if g.duration > 0.0:
        return g.duration
    if g.kind in SINGLE_QUBIT_KINDS:
        return cal.qubit(g.qubits[0]).single_gate_duration
    if g.kind in TWO_QUBIT_KINDS:
        return cal.coupler(*g.qubits).duration
    if g.kind == MCPHASE_OPEN:
        return mcphase_cz_equivalents(len(g.qubits) - 1) * DEFAULT_TWO_QUBIT_GATE_S
    if g.kind == MEASURE:
        return cal.readout_duration
    return 0.0


def circuit_duration(c: Circuit, cal) -> np.ndarray:
    """Per-qubit busy time in seconds under a calibration snapshot."""
    busy = np.zeros(c.n_qubits)
    for g in c.gates:
        if g.kind == NOISE:
            continue
        dur = _gate_duration(g, cal)
        for q in g.qubits:
            busy[q] += dur
    return busy


def circuit_to_lines(c: Circuit) -> str:
    """Serialize one gate per line: KIND angle? qubits..."""
    lines = []
    for g in c.gates:
        if g.kind == NOISE:
            raise FormatError("NOISE gates are not serializable")
        parts = [g.kind]
        if g.kind in ANGLED_KINDS:
            parts.append(repr(float(g.angle)))
        parts.extend(str(q) for q in g.qubits)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def circuit_from_lines(text: str, n_qubits: int | None = None) -> Circuit:
    """Parse the line format emitted by :func:`circuit_to_lines`."""
    gates: list[Gate] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind not in KINDS or kind == NOISE:
            raise FormatError(f"unknown gate kind {kind!r}")
        rest = parts[1:]
        angle = None
        if kind in ANGLED_KINDS:
            if not rest:
                raise FormatError(f"{kind} line is missing its angle")
            try:
                angle = float(rest[0])
            except ValueError as exc:
                raise FormatError(f"bad angle in line {line!r}") from exc
            rest = rest[1:]
        try:
            qubits = tuple(int(tok) for tok in rest)
        except ValueError as exc:
            raise FormatError(f"bad qubit index in line {line!r}") from exc
        try:
            gates.append(Gate(kind, qubits, angle=angle))
        except ValueError as exc:
            raise FormatError(f"invalid gate line {line!r}: {exc}") from exc
    if n_qubits is None:
        n_qubits = 1 + max((q for g in gates for q in g.qubits), default=0)
    try:
        return Circuit(n_qubits, tuple(gates))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
