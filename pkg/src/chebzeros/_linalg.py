"""Small dense-matrix helpers shared by the synthesis modules."""

from __future__ import annotations

import numpy as np


def svd_kernel(A, rtol: float = 1e-10):
    """Numerical kernel of A via SVD.

    Returns (basis, rank, singvals): basis has shape (m, m - rank) with
    orthonormal columns spanning the right null space, rank counts
    singular values above rtol * s_max.
    """
    A = np.asarray(A, dtype=float)
    _, s, vh = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * smax)) if smax > 0.0 else 0
    basis = vh[rank:].T
    return basis, rank, s


def smallest_direction(A):
    """Right-singular vector of the smallest singular value, unit norm."""
    A = np.asarray(A, dtype=float)
    _, _, vh = np.linalg.svd(A)
    return vh[-1]


def fix_leading_sign(v, tol: float = 0.0):
    """Flip v so its first component of magnitude > tol is positive."""
    v = np.asarray(v, dtype=float)
    for x in v:
        if abs(x) > tol:
            return v if x > 0 else -v
    return v
