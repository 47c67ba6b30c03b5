"""Canonical trace decomposition: rotate every qubit into its marginal eigenframe.

For a state rho with single-qubit marginals rho_i = V_i D_i V_i^dag
(D_i descending) the trace form is

    rho_t = (V_1^dag x ... x V_n^dag) rho (V_1 x ... x V_n),

whose marginals are the diagonal D_i.  Two states related by local unitaries
have trace forms related by diagonal phase conjugations only, which is what
the equivalence engine matches afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEGENERACY_TOL, dagger, eig_hermitian_2x2, kron_all
from .states import BlochVector, NQubitState, bloch_vector, reduced_qubit, validate_state


@dataclass(frozen=True)
class LocalEigenframe:
    """Marginal eigendata of one qubit (1-based index).

    eigenvalues is (p, 1-p) descending, v the eigenvector frame (columns),
    maximally_mixed marks a degenerate marginal, in which case v is the
    identity by convention.
    """

    qubit: int
    eigenvalues: np.ndarray
    v: np.ndarray
    bloch: BlochVector
    maximally_mixed: bool


@dataclass(frozen=True)
class TraceForm:
    state: NQubitState
    frames: tuple[LocalEigenframe, ...]


def local_eigenframes(
    state: NQubitState, degeneracy_tol: float = DEGENERACY_TOL
) -> tuple[LocalEigenframe, ...]:
    """Diagonalize every single-qubit marginal with the fixed phase convention."""
    frames = []
    for i in range(1, state.n + 1):
        q = reduced_qubit(state, i)
        pair = eig_hermitian_2x2(q, degeneracy_tol=degeneracy_tol)
        v = np.eye(2, dtype=complex) if pair.degenerate else pair.vectors
        frames.append(
            LocalEigenframe(
                qubit=i,
                eigenvalues=pair.eigenvalues,
                v=v,
                bloch=bloch_vector(q),
                maximally_mixed=pair.degenerate,
            )
        )
    return tuple(frames)


def to_trace_form(state: NQubitState, degeneracy_tol: float = DEGENERACY_TOL) -> TraceForm:
    """Conjugate the state into the tensor product of its marginal eigenframes."""
    frames = local_eigenframes(state, degeneracy_tol=degeneracy_tol)
    w = kron_all([dagger(f.v) for f in frames])
    rotated = w @ state.matrix @ dagger(w)
    return TraceForm(state=validate_state(rotated, max_qubits=state.n), frames=frames)
