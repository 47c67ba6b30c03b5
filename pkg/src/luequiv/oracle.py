"""Reproducible random instances and an independent brute-force fit oracle.

All randomness flows through numpy's counter-based Philox generator so that
every sampled state, unitary and optimizer restart is reproducible from an
integer seed alone, across platforms and runs.

The fit oracle knows nothing about trace decompositions: it minimizes the
Frobenius residual || b - (U_1 x ... x U_n) a (...)^dag || over 3n Euler
angles with a multi-start Nelder-Mead simplex.  It exists as an independent
cross-check of the analytic equivalence engine, so keep it free of any code
shared with the engine's decision path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import dagger, frobenius_distance, kron_all
from .states import NQubitState, bloch_vector, from_pure_amplitudes, reduced_qubit, validate_state

DEFAULT_MIN_BLOCH = 0.05
NM_TOL = 1e-10
NM_MAX_EVALS = 20000


def make_rng(seed) -> np.random.Generator:
    """Philox generator from an integer seed; passes Generators through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def random_pure_amplitudes(n: int, seed) -> np.ndarray:
    """Haar-distributed normalized amplitude vector of 2**n entries."""
    rng = make_rng(seed)
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return psi / np.linalg.norm(psi)


def random_pure_state(n: int, seed) -> NQubitState:
    return from_pure_amplitudes(random_pure_amplitudes(n, seed))


def random_mixed_state(n: int, rank: int, seed) -> NQubitState:
    """Ginibre-induced mixed state rho = G G^dag / Tr(G G^dag) of given rank."""
    if not 1 <= rank <= 2**n:
        raise ValueError(f"rank {rank} out of range 1..{2**n}")
    rng = make_rng(seed)
    g = rng.normal(size=(2**n, rank)) + 1j * rng.normal(size=(2**n, rank))
    m = g @ dagger(g)
    return validate_state(m / np.trace(m).real)


def haar_local_unitary(seed) -> np.ndarray:
    """Haar 2x2 unitary via QR of a complex Gaussian with phase-fixed R."""
    rng = make_rng(seed)
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def apply_local_unitaries(state: NQubitState, unitaries) -> NQubitState:
    """Conjugate by U_1 x ... x U_n (qubit 1 first)."""
    us = [np.asarray(u, dtype=complex) for u in unitaries]
    if len(us) != state.n:
        raise ValueError(f"expected {state.n} unitaries, got {len(us)}")
    for u in us:
        if u.shape != (2, 2):
            raise ValueError("local unitaries must be 2x2")
        if frobenius_distance(u @ dagger(u), np.eye(2)) > 1e-10:
            raise ValueError("matrix is not unitary within tolerance")
    big = kron_all(us)
    return validate_state(big @ state.matrix @ dagger(big))


def random_state_with_bloch_floor(
    n: int,
    seed,
    rank: int = 1,
    min_bloch: float = DEFAULT_MIN_BLOCH,
    max_tries: int = 1000,
) -> NQubitState:
    """Rejection-sample a state whose marginal Bloch norms all reach min_bloch.

    rank=1 draws Haar pure states, rank>1 Ginibre mixed states.  The floor
    keeps every marginal safely away from the maximally mixed point.
    """
    rng = make_rng(seed)
    for _ in range(max_tries):
        s = random_pure_state(n, rng) if rank == 1 else random_mixed_state(n, rank, rng)
        norms = [bloch_vector(reduced_qubit(s, i)).norm for i in range(1, n + 1)]
        if min(norms) >= min_bloch:
            return s
    raise RuntimeError(f"no sample reached Bloch floor {min_bloch} in {max_tries} tries")


def euler_unitary(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """ZYZ product e^{i alpha Z/2} e^{i beta Y/2} e^{i gamma Z/2}, written out."""
    cb = np.cos(0.5 * beta)
    sb = np.sin(0.5 * beta)
    return np.array(
        [
            [cb * np.exp(0.5j * (alpha + gamma)), sb * np.exp(0.5j * (alpha - gamma))],
            [-sb * np.exp(-0.5j * (alpha - gamma)), cb * np.exp(-0.5j * (alpha + gamma))],
        ]
    )


@dataclass(frozen=True)
class OracleFit:
    """Best local-unitary fit found by the brute-force search."""

    residual: float
    unitaries: tuple[np.ndarray, ...]
    evaluations: int
    budget_exhausted: bool


def _angles_to_unitaries(angles: np.ndarray, n: int) -> list[np.ndarray]:
    return [euler_unitary(*angles[3 * i : 3 * i + 3]) for i in range(n)]


def lu_fit_oracle(
    a: NQubitState,
    b: NQubitState,
    restarts: int = 20,
    seed: int = 0,
    max_evals: int = NM_MAX_EVALS,
    early_stop: float | None = None,
) -> OracleFit:
    """Multi-start Nelder-Mead fit of b by local conjugations of a.

    The returned residual is an upper bound on the true minimum; it never
    proves inequivalence on its own.  The first start is the identity, the
    rest are uniform random Euler angles.  When early_stop is set, restarts
    end as soon as the best residual drops below it.
    """
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    n = a.n
    rng = make_rng(seed)
    evals = 0
    exhausted = False

    def objective(angles):
        big = kron_all(_angles_to_unitaries(angles, n))
        return frobenius_distance(b.matrix, big @ a.matrix @ dagger(big))

    best_x = np.zeros(3 * n)
    best_f = objective(best_x)
    evals += 1

    for start in range(restarts):
        if early_stop is not None and best_f <= early_stop:
            break
        if start == 0:
            x0 = np.zeros(3 * n)
        else:
            x0 = rng.uniform(0.0, 2.0 * np.pi, size=3 * n)
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxfev": max_evals,
                "fatol": NM_TOL,
                "xatol": NM_TOL,
                "disp": False,
            },
        )
        evals += res.nfev
        if res.nfev >= max_evals:
            exhausted = True
        if res.fun < best_f:
            best_f = float(res.fun)
            best_x = res.x

    us = tuple(_angles_to_unitaries(best_x, n))
    return OracleFit(residual=float(best_f), unitaries=us, evaluations=evals, budget_exhausted=exhausted)
