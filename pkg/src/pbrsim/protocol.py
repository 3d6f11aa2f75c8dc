"""Antidistinguishability protocol circuits and angle solving.

Preparation encodes a bitstring x as a product of two fixed single-qubit
states, RY(+theta)|0> for bit 0 and RY(-theta)|0> for bit 1. The joint
measurement applies PHASE(beta) to every qubit, a phase alpha to the
all-zeros state, and a final Hadamard on every qubit before measuring.
The outcome amplitude for input x at outcome z depends only on the
Hamming distance between x and z, and the angle equation

    exp(i*alpha) + (1 + exp(i*beta) * tan(theta/2))**n - 1 = 0

makes the distance-zero amplitude vanish, so the forbidden outcome for
every input is the input itself. Discovery still checks that empirically
rather than assuming it: any relabeling bug or angle regression shows up
as a missing or misplaced zero.

At theta = pi/2 the solver can land on the degenerate root beta = pi,
alpha = 0, where the entangler disappears and the measurement factorizes
into independent qubit flips with many zero-probability outcomes per
input. That happens for n = 2 and n = 3; discovery raises ProtocolError
there. Everywhere on [theta_min(n), pi/2) a genuine solution exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .circuits import (
    CPHASE_OPEN,
    Circuit,
    Gate,
    H,
    MCPHASE_OPEN,
    MEASURE,
    PHASE,
    RY,
    X,
)
from .config import (
    ATOL_ALGEBRAIC,
    FORBIDDEN_GUARD_BAND,
    FORBIDDEN_PROB_THRESHOLD,
)
from .errors import NoSolutionError, ProtocolError, RangeError, ValidationError
from .simulate import outcome_distribution


def theta_min(n: int) -> float:
    """Smallest opening angle with an antidistinguishing measurement."""
    if n < 1:
        raise RangeError(f"n={n} must be >= 1")
    return float(2.0 * np.arctan(2.0 ** (1.0 / n) - 1.0))


def _angle_residual(n: int, theta: float, alpha: float, beta: float) -> float:
    t = np.tan(theta / 2)
    return abs(np.exp(1j * alpha) + (1 + t * np.exp(1j * beta)) ** n - 1)


def solve_angles(n: int, theta: float) -> tuple[float, float]:
    """Solve e^{i alpha} + (1 + e^{i beta} tan(theta/2))^n = 1 for (alpha, beta).

    Reduced to one dimension: find beta in [0, pi] where
    |1 - (1 + tan(theta/2) e^{i beta})^n| = 1, then read alpha off the
    argument. The mirrored root at -beta is the conjugate solution.
    """
    if n < 1:
        raise RangeError(f"n={n} must be >= 1")
    if not 0.0 <= theta <= np.pi / 2 + 1e-12:
        raise RangeError(f"theta={theta!r} outside [0, pi/2]")
    t = np.tan(theta / 2)

    def g(beta: float) -> float:
        return abs(1 - (1 + t * np.exp(1j * beta)) ** n) - 1.0

    g0 = g(0.0)
    if g0 < -1e-12:
        # (1+t)^n < 2: modulus never reaches 1, theta below threshold.
        raise NoSolutionError(
            f"theta={theta!r} below theta_min({n})={float(theta_min(n))!r}"
        )
    if abs(g0) <= 1e-12:
        beta = 0.0
    else:
        # First sign change from g(0) > 0; scan so later crossings of a
        # non-monotone modulus cannot steal the bracket.
        grid = np.linspace(0.0, np.pi, 4097)
        beta = None
        for lo, hi in zip(grid[:-1], grid[1:]):
            if g(hi) <= 0.0:
                beta = float(brentq(g, lo, hi, xtol=1e-15, rtol=8.9e-16))
                break
        if beta is None:
            raise NoSolutionError(f"no root of the angle equation for n={n}, theta={theta!r}")
    w = 1 - (1 + t * np.exp(1j * beta)) ** n
    alpha = float(np.angle(w)) if abs(w) > 0 else 0.0
    alpha %= 2 * np.pi
    resid = _angle_residual(n, theta, alpha, beta)
    if resid > ATOL_ALGEBRAIC:
        raise NoSolutionError(f"residual {resid:.3e} after solving n={n}, theta={theta!r}")
    return alpha, beta


@dataclass(frozen=True)
class PBRParams:
    n: int
    theta: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError(f"n={self.n} must be >= 2")
        if not theta_min(self.n) - 1e-12 <= self.theta <= np.pi / 2 + 1e-12:
            raise ValidationError(
                f"theta={self.theta!r} outside [theta_min({self.n}), pi/2]"
            )
        resid = _angle_residual(self.n, self.theta, self.alpha, self.beta)
        if resid > ATOL_ALGEBRAIC:
            raise ValidationError(f"angle equation residual {resid:.3e} exceeds 1e-10")

    @classmethod
    def solve(cls, n: int, theta: float) -> "PBRParams":
        alpha, beta = solve_angles(n, theta)
        return cls(n, theta, alpha, beta)


def build_preparation(x, theta: float) -> Circuit:
    """RY(+theta) on qubit j for bit 0, RY(-theta) for bit 1."""
    bits = _as_bits(x)
    gates = tuple(
        Gate(RY, (j,), angle=theta if b == 0 else -theta) for j, b in enumerate(bits)
    )
    return Circuit(len(bits), gates)


def build_entangling_measurement(n: int, alpha: float, beta: float) -> Circuit:
    """Phase layer, phase on the all-zeros state, H layer, MEASURE.

    PHASE(beta) on each qubit, then alpha applied to |0...0> (the
    open-controlled phase gate pins the phase to index 1, so it is
    conjugated by X on the last qubit to move it to index 0), then H on
    each qubit and a full measurement. A zero beta elides the phase
    layer, so the ideal two-qubit circuit at the minimal angle is one
    X-conjugated open-controlled pi followed by Hadamards.
    """
    gates: list[Gate] = []
    if abs(beta) > 1e-12:
        gates.extend(Gate(PHASE, (q,), angle=beta) for q in range(n))
    kind = CPHASE_OPEN if n == 2 else MCPHASE_OPEN
    gates.append(Gate(X, (n - 1,)))
    gates.append(Gate(kind, tuple(range(n)), angle=alpha))
    gates.append(Gate(X, (n - 1,)))
    gates.extend(Gate(H, (q,)) for q in range(n))
    gates.append(Gate(MEASURE, tuple(range(n))))
    return Circuit(n, tuple(gates))


def build_test_circuit(x, params: PBRParams) -> Circuit:
    """Preparation for input x (index or bits) followed by the measurement."""
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < 2**params.n:
            raise RangeError(f"input index {x} outside [0, {2**params.n})")
        x = bits_of(int(x), params.n)
    prep = build_preparation(x, params.theta)
    if prep.n_qubits != params.n:
        raise ValidationError(f"input {x!r} has {prep.n_qubits} bits, expected {params.n}")
    meas = build_entangling_measurement(params.n, params.alpha, params.beta)
    return Circuit(params.n, prep.gates + meas.gates)


@dataclass(frozen=True)
class ForbiddenMap:
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ProtocolError("forbidden map is not a permutation")

    @property
    def n(self) -> int:
        return len(self.mapping).bit_length() - 1

    def __getitem__(self, x: int) -> int:
        return self.mapping[x]


def discover_forbidden_map(params: PBRParams) -> ForbiddenMap:
    """Simulate every input noise-free and locate its zero-probability outcome.

    Requires exactly one outcome below the discovery threshold per input,
    with the runner-up above the guard band, and the collected outcomes to
    form a permutation; anything else signals wrong angles or conventions.
    """
    n = params.n
    mapping = []
    for x in range(2**n):
        probs = outcome_distribution(build_test_circuit(x, params))
        order = np.argsort(probs)
        smallest, runner_up = probs[order[0]], probs[order[1]]
        if smallest >= FORBIDDEN_PROB_THRESHOLD:
            raise ProtocolError(
                f"input {x:0{n}b}: smallest outcome probability {smallest:.3e} "
                "is not a forbidden outcome"
            )
        if runner_up <= FORBIDDEN_GUARD_BAND:
            raise ProtocolError(
                f"input {x:0{n}b}: second outcome probability {runner_up:.3e} "
                "inside the guard band; zero outcome is ambiguous"
            )
        mapping.append(int(order[0]))
    return ForbiddenMap(tuple(mapping))


def _as_bits(x) -> tuple[int, ...]:
    if isinstance(x, str):
        if not x or set(x) - {"0", "1"}:
            raise ValidationError(f"bitstring {x!r} must be over 0/1")
        return tuple(int(ch) for ch in x)
    bits = tuple(int(b) for b in x)
    if set(bits) - {0, 1}:
        raise ValidationError(f"bits {x!r} must be 0/1")
    return bits


def bits_of(index: int, n: int) -> tuple[int, ...]:
    """Index -> bit tuple under the qubit-0-is-MSB convention."""
    return tuple((index >> (n - 1 - j)) & 1 for j in range(n))
