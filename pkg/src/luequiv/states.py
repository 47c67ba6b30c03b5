"""Validated n-qubit density matrices and their basic reductions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import dagger, frobenius_distance, partial_trace

MAX_QUBITS = 10

TRACE_TOL = 1e-10
HERMITICITY_TOL = 1e-10
PSD_FLOOR = -1e-10
BLOCH_NORM_TOL = 1e-10


class StateValidationError(ValueError):
    """A density-matrix property failed, with the measured residual."""

    def __init__(self, check: str, residual: float, message: str):
        super().__init__(message)
        self.check = check
        self.residual = residual


@dataclass(frozen=True)
class NQubitState:
    """An n-qubit density matrix that passed validation.

    matrix is stored read-only; spectrum is the descending global spectrum
    (eigenvalues in [-1e-10, 0) clamped to 0), cached at construction.
    """

    n: int
    matrix: np.ndarray
    purity: float
    spectrum: np.ndarray

    @property
    def dim(self) -> int:
        return 2**self.n


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float
    norm: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "norm", float(np.sqrt(self.x**2 + self.y**2 + self.z**2)))


def validate_state(matrix: np.ndarray, max_qubits: int = MAX_QUBITS) -> NQubitState:
    """Check Hermiticity, unit trace and positivity, then freeze the state.

    Raises StateValidationError naming the first violated property and its
    residual.  The PSD check tolerates eigenvalues down to -1e-10 and clamps
    the stored spectrum at zero.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise StateValidationError("shape", 0.0, f"not a square matrix: {m.shape}")
    dim = m.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise StateValidationError("shape", 0.0, f"dimension {dim} is not a power of two >= 2")
    if n > max_qubits:
        raise StateValidationError("shape", float(n), f"{n} qubits exceeds the cap of {max_qubits}")
    if not np.all(np.isfinite(m)):
        raise StateValidationError("finite", float("nan"), "matrix has non-finite entries")

    herm = frobenius_distance(m, dagger(m))
    if herm > HERMITICITY_TOL:
        raise StateValidationError("hermiticity", herm, f"||m - m^dag|| = {herm:.3e}")

    m = 0.5 * (m + dagger(m))
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise StateValidationError("trace", abs(tr - 1.0), f"trace = {tr!r}, expected 1")

    eigs = np.linalg.eigvalsh(m)
    low = float(eigs.min())
    if low < PSD_FLOOR:
        raise StateValidationError("psd", -low, f"eigenvalue {low:.3e} below the PSD floor")
    spectrum = np.where(eigs < 0.0, 0.0, eigs)[::-1].copy()

    purity = float(np.sum(np.abs(m) ** 2))  # Tr(m @ m) for Hermitian m

    m = m.copy()
    m.flags.writeable = False
    spectrum.flags.writeable = False
    return NQubitState(n=n, matrix=m, purity=purity, spectrum=spectrum)


def from_pure_amplitudes(amplitudes, max_qubits: int = MAX_QUBITS) -> NQubitState:
    """Build the rank-1 density matrix of a pure state vector.

    The amplitude vector is normalized here; its length must be a power of
    two >= 2.
    """
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    dim = psi.size
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise StateValidationError("shape", 0.0, f"amplitude length {dim} is not a power of two >= 2")
    if not np.all(np.isfinite(psi)):
        raise StateValidationError("finite", float("nan"), "amplitudes have non-finite entries")
    norm = float(np.linalg.norm(psi))
    if norm < 1e-12:
        raise StateValidationError("norm", norm, "amplitude vector has (near) zero norm")
    psi = psi / norm
    return validate_state(np.outer(psi, np.conj(psi)), max_qubits=max_qubits)


def reduced_qubit(state: NQubitState, i: int) -> np.ndarray:
    """Single-qubit marginal of qubit i (1-based)."""
    return partial_trace(state.matrix, state.n, i)


def bloch_vector(q: np.ndarray) -> BlochVector:
    """Bloch components of a 2x2 trace-1 Hermitian matrix."""
    q = np.asarray(q, dtype=complex)
    if q.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {q.shape}")
    if frobenius_distance(q, dagger(q)) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    if abs(np.trace(q).real - 1.0) > 1e-8:
        raise ValueError(f"trace {np.trace(q)!r} is not 1")
    x = float((q[0, 1] + q[1, 0]).real)
    y = float((1j * (q[0, 1] - q[1, 0])).real)
    z = float((q[0, 0] - q[1, 1]).real)
    r = BlochVector(x=x, y=y, z=z)
    if r.norm > 1.0 + BLOCH_NORM_TOL:
        raise ValueError(f"Bloch norm {r.norm!r} exceeds 1")
    return r


def global_spectrum(state: NQubitState) -> np.ndarray:
    """Descending eigenvalues of the full density matrix."""
    return state.spectrum.copy()
