"""Dense complex matrix kernel.

All functions accept either a single matrix of shape ``(r, c)`` or a stack of
matrices ``(..., r, c)``; the Monte-Carlo code relies on the stacked form.
"""

import numpy as np

PIVOT_FLOOR = 1e-12
HERMITIAN_RTOL = 1e-10


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """A Cholesky pivot fell below the floor.

    ``index`` is the position (in the flattened batch) of the first offending
    matrix, or ``None`` for a single matrix.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


def as_complex(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim < 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    return a


def hermitian(a):
    """Conjugate transpose of the last two axes."""
    return np.conj(np.swapaxes(as_complex(a), -1, -2))


def matmul(a, b):
    a = as_complex(a)
    b = as_complex(b)
    if a.shape[-1] != b.shape[-2]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def frobenius_norm_sq(a):
    a = as_complex(a)
    return np.sum(a.real**2 + a.imag**2, axis=(-2, -1))


def column_norm_sq(a, j=None):
    """Squared Euclidean norm of column `j`, or of every column if `j` is None."""
    a = as_complex(a)
    sq = np.sum(a.real**2 + a.imag**2, axis=-2)
    if j is None:
        return sq
    if not -a.shape[-1] <= j < a.shape[-1]:
        raise IndexError(f"column {j} out of range for {a.shape[-1]} columns")
    return sq[..., j]


def cholesky(g):
    """Lower-triangular ``L`` with ``g = L L^H`` for Hermitian positive-definite `g`.

    Raises
    ------
    NotPositiveDefiniteError
        If a pivot drops below ``PIVOT_FLOOR`` times the largest diagonal entry.
    """
    g = as_complex(g)
    n = g.shape[-1]
    if g.shape[-2] != n:
        raise ValueError(f"expected square matrices, got {g.shape}")
    scale = np.max(np.abs(g.real.diagonal(axis1=-2, axis2=-1)), axis=-1)
    floor = PIVOT_FLOOR * scale
    L = np.zeros_like(g)
    for j in range(n):
        row = L[..., j, :j]
        pivot = g[..., j, j].real - np.sum(row.real**2 + row.imag**2, axis=-1)
        bad = ~(pivot > floor)
        if np.any(bad):
            idx = None if g.ndim == 2 else int(np.flatnonzero(bad)[0])
            raise NotPositiveDefiniteError(f"not positive definite (pivot {j})", idx)
        d = np.sqrt(pivot)
        L[..., j, j] = d
        if j + 1 < n:
            below = g[..., j + 1:, j] - (L[..., j + 1:, :j] @ np.conj(row)[..., :, None])[..., 0]
            L[..., j + 1:, j] = below / d[..., None]
    return L


def _lower_inverse(L):
    n = L.shape[-1]
    inv = np.zeros_like(L)
    for i in range(n):
        acc = -(L[..., i:i + 1, :i] @ inv[..., :i, :])[..., 0, :]
        acc[..., i] += 1.0
        inv[..., i, :] = acc / L[..., i, i][..., None]
    return inv


def invert_hpd(g, check_hermitian=True):
    """Inverse of a Hermitian positive-definite matrix through its Cholesky factor."""
    g = as_complex(g)
    if check_hermitian:
        asym = np.max(np.abs(g - hermitian(g)))
        if asym > HERMITIAN_RTOL * max(np.max(np.abs(g)), 1.0):
            raise ValueError(f"matrix is not Hermitian (max asymmetry {asym:.3g})")
    linv = _lower_inverse(cholesky(g))
    return hermitian(linv) @ linv
