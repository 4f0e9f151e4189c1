"""Positive-definite kernels shared by the SVR and kernel ridge learners."""

import numpy as np

from ..data import ValidationError

KERNEL_KINDS = ("linear", "rbf", "polynomial")

#: Polynomial kernel offset: K = (gamma * <x, x'> + POLY_COEF0) ** degree.
POLY_COEF0 = 1.0


def squared_distances(A, B):
    """Pairwise squared Euclidean distances, clipped at zero."""
    aa = np.einsum("ij,ij->i", A, A)
    bb = np.einsum("ij,ij->i", B, B)
    d2 = aa[:, None] + bb[None, :] - 2.0 * (A @ B.T)
    np.maximum(d2, 0.0, out=d2)
    return d2


def kernel_matrix(kind, A, B, gamma=1.0, degree=3):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if kind == "linear":
        return A @ B.T
    if kind == "rbf":
        return np.exp(-gamma * squared_distances(A, B))
    if kind == "polynomial":
        return (gamma * (A @ B.T) + POLY_COEF0) ** degree
    raise ValidationError(f"unknown kernel {kind!r}")
