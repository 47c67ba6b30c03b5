"""Timing and agreement sweep for the decision engine.

Measures wall time of decide_lu_equivalence across qubit counts and ranks on
constructed equivalent pairs and on unrelated pairs, then cross-checks a
slice of the verdicts against the derivative-free fitting oracle.  The
oracle is orders of magnitude slower, so the agreement slice stays small by
default.

    python3 scripts/benchmark_engine.py
    python3 scripts/benchmark_engine.py --pairs 100 --agreement 0
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from luequiv import (
    EngineConfig,
    apply_local_unitaries,
    decide_lu_equivalence,
    haar_local_unitary,
    lu_fit_oracle,
    make_rng,
    random_state_with_bloch_floor,
)

MIN_BLOCH = 0.05


def constructed_pair(n: int, rank: int, seed):
    rng = make_rng(seed)
    state = random_state_with_bloch_floor(n, rng, rank=rank, min_bloch=MIN_BLOCH)
    rotated = apply_local_unitaries(state, [haar_local_unitary(rng) for _ in range(n)])
    return state, rotated


def unrelated_pair(n: int, rank: int, seed):
    rng = make_rng(seed)
    a = random_state_with_bloch_floor(n, rng, rank=rank, min_bloch=MIN_BLOCH)
    b = random_state_with_bloch_floor(n, rng, rank=rank, min_bloch=MIN_BLOCH)
    return a, b


def sweep(pairs: int, seed: int) -> list[tuple]:
    grid = [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (2, 4)]
    rows = []
    for n, rank in grid:
        for maker, expect in ((constructed_pair, "equivalent"), (unrelated_pair, "not_equivalent")):
            times = []
            outcomes: dict[str, int] = {}
            worst_residual = 0.0
            for k in range(pairs):
                a, b = maker(n, rank, seed + 1000 * n + 100 * rank + k)
                t0 = time.perf_counter()
                verdict = decide_lu_equivalence(a, b)
                times.append(time.perf_counter() - t0)
                outcomes[verdict.outcome] = outcomes.get(verdict.outcome, 0) + 1
                if verdict.witness is not None:
                    worst_residual = max(worst_residual, verdict.witness.residual)
            rows.append((n, rank, expect, pairs, np.median(times), max(times), outcomes, worst_residual))
    return rows


def print_sweep(rows) -> None:
    print(f"{'n':>2} {'rank':>4} {'pairs':>5}  {'median':>9} {'max':>9}  outcomes (expected first)")
    for n, rank, expect, pairs, med, worst, outcomes, worst_res in rows:
        tally = ", ".join(f"{k}={v}" for k, v in sorted(outcomes.items(), key=lambda kv: kv[0] != expect))
        extra = f"  worst residual {worst_res:.2e}" if worst_res else ""
        print(f"{n:>2} {rank:>4} {pairs:>5}  {med * 1e3:>7.2f}ms {worst * 1e3:>7.2f}ms  {tally}{extra}")


def agreement_slice(count: int, seed: int) -> None:
    """Engine vs oracle on n=2 instances where the oracle is affordable."""
    if count == 0:
        return
    print()
    print(f"engine/oracle agreement on {count} n=2 instances:")
    disagreements = 0
    for k in range(count):
        if k % 2 == 0:
            a, b = constructed_pair(2, 1 + (k % 3), seed + 7000 + k)
        else:
            a, b = unrelated_pair(2, 1, seed + 7000 + k)
        verdict = decide_lu_equivalence(a, b)
        fit = lu_fit_oracle(a, b, restarts=8, seed=seed + k, early_stop=1e-8)
        oracle_says = "equivalent" if fit.residual < 1e-6 else "not_equivalent"
        if verdict.outcome != oracle_says:
            disagreements += 1
            print(f"  disagreement at k={k}: engine {verdict.outcome}, oracle residual {fit.residual:.2e}")
    print(f"  disagreements: {disagreements}/{count}")


def fallback_timing(count: int, seed: int) -> None:
    """The SU(2) search pays per restart; GHZ-class states are its hard case."""
    from luequiv import from_pure_amplitudes

    print()
    print(f"fallback on {count} rotated GHZ instances (n=3):")
    ghz = from_pure_amplitudes(np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2))
    config = EngineConfig(fallback=True)
    certified = 0
    times = []
    for k in range(count):
        rng = make_rng(seed + 400 + k)
        rotated = apply_local_unitaries(ghz, [haar_local_unitary(rng) for _ in range(3)])
        t0 = time.perf_counter()
        verdict = decide_lu_equivalence(ghz, rotated, config)
        times.append(time.perf_counter() - t0)
        certified += verdict.outcome == "equivalent"
    print(f"  certified {certified}/{count}, median {np.median(times) * 1e3:.0f}ms, max {max(times) * 1e3:.0f}ms")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=40, help="pairs per grid cell")
    parser.add_argument("--agreement", type=int, default=20, help="oracle cross-check instances (0 to skip)")
    parser.add_argument("--fallback-count", type=int, default=10, help="GHZ fallback instances")
    parser.add_argument("--seed", type=int, default=5)
    args = parser.parse_args()

    t0 = time.perf_counter()
    rows = sweep(args.pairs, args.seed)
    print_sweep(rows)
    agreement_slice(args.agreement, args.seed)
    fallback_timing(args.fallback_count, args.seed)
    print()
    print(f"total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
