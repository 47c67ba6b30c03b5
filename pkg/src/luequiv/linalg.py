"""Dense complex-matrix primitives for few-qubit work.

Everything here operates on plain complex128 ndarrays.  Qubit 1 is the
leftmost (most significant) tensor factor throughout the package, so the
computational-basis row index of an n-qubit matrix reads as the bit string
b1 b2 ... bn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# index order (0, x, y, z) <-> (0, 1, 2, 3), fixed across the package
PAULIS = np.stack([PAULI_I, PAULI_X, PAULI_Y, PAULI_Z])

# hard cap on Kronecker-product output dimension (2**10 states plus headroom)
MAX_KRON_DIM = 4096

HERMITICITY_TOL = 1e-10
DEGENERACY_TOL = 1e-10


def kron(a: np.ndarray, b: np.ndarray, max_dim: int = MAX_KRON_DIM) -> np.ndarray:
    """Kronecker product with an output-size guard."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects 2-d operands")
    if a.shape[0] * b.shape[0] > max_dim or a.shape[1] * b.shape[1] > max_dim:
        raise ValueError(
            f"kron output {a.shape[0] * b.shape[0]}x{a.shape[1] * b.shape[1]} "
            f"exceeds the {max_dim} dimension cap"
        )
    return np.kron(a, b)


def kron_all(mats, max_dim: int = MAX_KRON_DIM) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence (qubit 1 first)."""
    mats = list(mats)
    if not mats:
        raise ValueError("kron_all needs at least one factor")
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = kron(out, m, max_dim=max_dim)
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def frobenius_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of a - b.  Shapes must agree exactly."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def partial_trace(rho: np.ndarray, n: int, keep: int) -> np.ndarray:
    """Reduce an n-qubit density matrix to the single qubit `keep` (1-based).

    Args:
        rho: 2**n x 2**n matrix.
        n: qubit count.
        keep: index of the qubit to keep, 1 <= keep <= n.

    Returns:
        The 2x2 reduced matrix of qubit `keep`.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = 2**n
    if rho.shape != (dim, dim):
        raise ValueError(f"expected {dim}x{dim} matrix for n={n}, got {rho.shape}")
    if not 1 <= keep <= n:
        raise ValueError(f"keep={keep} out of range 1..{n}")
    left = 2 ** (keep - 1)
    right = 2 ** (n - keep)
    six = rho.reshape(left, 2, right, left, 2, right)
    return np.einsum("aibajb->ij", six)


@dataclass(frozen=True)
class EigenPair2:
    """Spectral data of a Hermitian 2x2 matrix.

    eigenvalues are descending; vectors holds the matching eigenvectors as
    columns; degenerate is set when the eigenvalue gap is below tolerance.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    degenerate: bool


def _fix_column_phase(v: np.ndarray) -> np.ndarray:
    # largest-modulus entry made real non-negative; ties go to the lower row
    idx = 0 if abs(v[0]) >= abs(v[1]) else 1
    a = v[idx]
    if abs(a) == 0.0:
        return v
    return v * (np.conj(a) / abs(a))


def eig_hermitian_2x2(
    h: np.ndarray,
    hermiticity_tol: float = HERMITICITY_TOL,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> EigenPair2:
    """Closed-form eigendecomposition of a Hermitian 2x2 matrix.

    No iterative solver: eigenvalues come from the characteristic polynomial
    and the second eigenvector is the exact orthogonal complement of the
    first, so the returned frame is unitary to machine precision even near
    degeneracy.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {h.shape}")
    if frobenius_distance(h, dagger(h)) > hermiticity_tol:
        raise ValueError("matrix is not Hermitian within tolerance")

    a = h[0, 0].real
    c = h[1, 1].real
    b = 0.5 * (h[0, 1] + np.conj(h[1, 0]))  # symmetrized off-diagonal

    half_tr = 0.5 * (a + c)
    root = 0.5 * np.sqrt((a - c) ** 2 + 4.0 * abs(b) ** 2)
    lo = half_tr + root
    hi = half_tr - root
    eigenvalues = np.array([lo, hi])
    degenerate = bool(lo - hi < degeneracy_tol)

    # eigenvectors are scale invariant; renormalizing the entries keeps
    # |b|^2 away from underflow for denormal-sized inputs
    scale = max(abs(a), abs(c), abs(b))
    if scale < np.finfo(float).tiny:
        b = 0.0  # zero to double precision: any orthonormal frame works
    else:
        a, c, b = a / scale, c / scale, b / scale
        lo = lo / scale
        if abs(b) < np.sqrt(np.finfo(float).tiny):
            # |b|^2 underflows: the off-diagonal is below double resolution
            # relative to the diagonal, so the aligned frame is exact
            b = 0.0

    if b == 0.0:
        vectors = np.eye(2, dtype=complex) if a >= c else np.array(
            [[0.0, 1.0], [1.0, 0.0]], dtype=complex
        )
    else:
        # two algebraically equivalent forms; keep the better conditioned one
        cand1 = np.array([b, lo - a])
        cand2 = np.array([lo - c, np.conj(b)])
        m1 = np.max(np.abs(cand1))
        m2 = np.max(np.abs(cand2))
        v0 = cand1 / m1 if m1 >= m2 else cand2 / m2  # max-abs first: |b| may be denormal
        v0 = v0 / np.linalg.norm(v0)
        v1 = np.array([-np.conj(v0[1]), np.conj(v0[0])])
        vectors = np.column_stack([_fix_column_phase(v0), _fix_column_phase(v1)])

    vectors = np.column_stack(
        [_fix_column_phase(vectors[:, 0]), _fix_column_phase(vectors[:, 1])]
    )
    return EigenPair2(eigenvalues=eigenvalues, vectors=vectors, degenerate=degenerate)
