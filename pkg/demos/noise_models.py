"""What the two noise models insert into a circuit.

Loads the adjacent-pair calibration, attaches each noise model to the
two-qubit test circuit, and prints what changed: channel counts, where
they sit, and how the forbidden-outcome probability moves away from
zero.
"""

import os

import numpy as np

from pbrsim import (
    DEPOLARIZING,
    PBRParams,
    THERMODYNAMICAL,
    attach_noise,
    build_test_circuit,
    load_calibration,
    outcome_distribution,
)
from pbrsim.circuits import NOISE

CAL_PATH = os.path.join(os.path.dirname(__file__), "data", "adjacent_pair.json")


def main():
    cal = load_calibration(CAL_PATH)
    print("Calibration snapshot:")
    for q in cal.qubits:
        print(
            f"  qubit {q.id}: T1={q.t1 * 1e6:.0f}us T2={q.t2 * 1e6:.0f}us "
            f"p1={q.p1:.1e} readout p01={q.readout_p01} p10={q.readout_p10}"
        )
    for c in cal.couplers:
        print(f"  coupler ({c.q0},{c.q1}): p2={c.p2:.1e} duration={c.duration * 1e9:.0f}ns")

    params = PBRParams.solve(2, np.pi / 4)
    ideal = build_test_circuit(0, params)
    print(f"\nIdeal circuit: {len(ideal.gates)} gates, forbidden outcome p = "
          f"{outcome_distribution(ideal)[0]:.2e}")

    for model in (DEPOLARIZING, THERMODYNAMICAL):
        noisy = attach_noise(ideal, cal, model)
        channels = [g for g in noisy.gates if g.kind == NOISE]
        probs = outcome_distribution(noisy)
        print(f"\n{model}:")
        print(f"  inserted channels: {len(channels)}")
        print(f"  forbidden outcome probability: {probs[0]:.4e}")
        print(f"  distribution: {np.round(probs, 5)}")


if __name__ == "__main__":
    main()
