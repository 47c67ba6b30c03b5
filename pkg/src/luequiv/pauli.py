"""Real coefficients of density matrices in the tensor-product Pauli basis.

Index convention: a multi-index (a_1, ..., a_n) over (0, x, y, z) = (0, 1, 2, 3)
maps to the flat position sum_k a_k * 4**(n-k), i.e. base-4 row-major with
qubit 1 most significant.  Coefficients are c[alpha] = Tr(rho sigma_alpha) / 2**n,
so rho = sum_alpha c[alpha] sigma_alpha and ||rho||_F^2 = 2**n * sum c^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS
from .states import NQubitState

IMAG_RESIDUE_TOL = 1e-10

# PAULIS[a, c, r] read with the row index last is sigma_a[c, r]; contracting a
# qubit's (row, col) pair against (r, c) here yields Tr over that qubit.
_S_TRACE = PAULIS.copy()
# S_build[a, r, c] = sigma_a[r, c], for reconstruction.
_S_BUILD = PAULIS.copy()


@dataclass(frozen=True)
class PauliCoefficients:
    """Flat real coefficient vector of length 4**n."""

    n: int
    c: np.ndarray

    def tensor(self) -> np.ndarray:
        """View shaped (4,)*n, one axis per qubit."""
        return self.c.reshape((4,) * self.n)


def expand(state: NQubitState) -> PauliCoefficients:
    """Pauli coefficients of a state, contracting one qubit at a time."""
    n = state.n
    arr = state.matrix.reshape((2,) * (2 * n))
    # interleave to (r1, c1, r2, c2, ...)
    order = [ax for k in range(n) for ax in (k, n + k)]
    arr = arr.transpose(order)
    for _ in range(n):
        # eats the two leading axes, appends this qubit's Pauli axis at the end
        arr = np.tensordot(arr, _S_TRACE, axes=([0, 1], [2, 1]))
    residue = float(np.max(np.abs(arr.imag))) if n > 0 else 0.0
    if residue > IMAG_RESIDUE_TOL:
        raise ValueError(f"imaginary residue {residue:.3e} in Pauli traces")
    c = (arr.real / 2**n).reshape(-1).copy()
    c.flags.writeable = False
    return PauliCoefficients(n=n, c=c)


def reconstruct(p: PauliCoefficients) -> np.ndarray:
    """Dense matrix sum_alpha c[alpha] sigma_alpha."""
    n = p.n
    arr = p.tensor().astype(complex)
    for _ in range(n):
        arr = np.tensordot(arr, _S_BUILD, axes=([0], [0]))
    # axes are now (r1, c1, r2, c2, ...); split rows from columns
    order = [2 * k for k in range(n)] + [2 * k + 1 for k in range(n)]
    return arr.transpose(order).reshape(2**n, 2**n)


def rotate_phase(p: PauliCoefficients, k: int, omega: float) -> PauliCoefficients:
    """Coefficient image of conjugating qubit k by diag(e^{i w}, e^{-i w}).

    Only the x and y components of qubit k mix:
        (cx, cy) -> (cx cos 2w + cy sin 2w, -cx sin 2w + cy cos 2w).
    The action is pi-periodic in omega.
    """
    if not 1 <= k <= p.n:
        raise ValueError(f"qubit {k} out of range 1..{p.n}")
    t = p.tensor().copy()
    co, si = np.cos(2.0 * omega), np.sin(2.0 * omega)
    axis = k - 1
    sl_x = tuple(1 if ax == axis else slice(None) for ax in range(p.n))
    sl_y = tuple(2 if ax == axis else slice(None) for ax in range(p.n))
    cx = t[sl_x].copy()
    cy = t[sl_y].copy()
    t[sl_x] = co * cx + si * cy
    t[sl_y] = -si * cx + co * cy
    out = t.reshape(-1)
    out.flags.writeable = False
    return PauliCoefficients(n=p.n, c=out)
