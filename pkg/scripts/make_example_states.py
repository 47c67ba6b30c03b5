"""Write a set of example StateFiles under examples_out/ (or a given dir).

The set covers the interesting regimes: a Bell pair and a GHZ state (every
marginal maximally mixed), a W state (non-degenerate marginals), a tunable
two-qubit Schmidt state, a locally rotated copy of it, and one rank-2 mixed
state.  Handy as CLI inputs:

    python3 scripts/make_example_states.py
    luequiv check examples_out/schmidt_pi8.json examples_out/schmidt_pi8_rotated.json
    luequiv check examples_out/ghz3.json examples_out/w3.json
    luequiv check examples_out/ghz3.json examples_out/ghz3.json --fallback
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from luequiv import (
    apply_local_unitaries,
    emit_mixed_state_file,
    emit_pure_state_file,
    euler_unitary,
    from_pure_amplitudes,
    random_mixed_state,
)


def schmidt_amplitudes(theta: float) -> np.ndarray:
    return np.array([np.cos(theta), 0.0, 0.0, np.sin(theta)])


def examples() -> dict[str, str]:
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    ghz3 = np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2)
    w3 = np.zeros(8)
    w3[[1, 2, 4]] = 1 / np.sqrt(3)
    schmidt = schmidt_amplitudes(np.pi / 8)

    # a fixed, reproducible local rotation of the Schmidt state
    frame = [euler_unitary(0.3, 1.1, -0.4), euler_unitary(-0.9, 0.5, 2.0)]
    rotated = apply_local_unitaries(from_pure_amplitudes(schmidt), frame)

    mixed = random_mixed_state(2, 2, seed=77)

    return {
        "bell.json": emit_pure_state_file(bell, label="bell pair"),
        "ghz3.json": emit_pure_state_file(ghz3, label="ghz, 3 qubits"),
        "w3.json": emit_pure_state_file(w3, label="w, 3 qubits"),
        "schmidt_pi8.json": emit_pure_state_file(schmidt, label="schmidt angle pi/8"),
        "schmidt_pi8_rotated.json": emit_mixed_state_file(
            rotated.matrix, label="schmidt angle pi/8, locally rotated"
        ),
        "mixed_rank2.json": emit_mixed_state_file(mixed.matrix, label="rank-2 mixed, seed 77"),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="examples_out", help="output directory")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in examples().items():
        path = out / name
        path.write_text(text + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
