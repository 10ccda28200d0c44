"""Multi-convolution, its adjoint, and the matrix norms used throughout.

Shape conventions (fixed everywhere in the package):

* a signal is a 1-D float array of length ``N``,
* an encoding matrix ``R`` is ``(N - n + 1, K)``, non-negative on the
  feasible set,
* a dictionary ``D`` is ``(n, K)`` with unit-L2 columns on the feasible set.

Convolutions are "full" mode, so ``R ⊗ D`` has length
``(N - n + 1) + n - 1 = N``. All operations are pure functions of their
inputs and hold no state.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError, ParameterError

__all__ = [
    "multi_convolve",
    "valid_correlate",
    "lpq_norm",
    "objective_and_gradients",
    "convolution_matrix",
]


def _as_matrix(a, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    return a


def _as_vector(a, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty 1-D array, got shape {a.shape}")
    return a


def multi_convolve(R, D) -> np.ndarray:
    """Sum of full column-wise convolutions: ``sum_k R[:, k] * D[:, k]``.

    Bilinear in (R, D). Output length is ``R.shape[0] + D.shape[0] - 1``.
    """
    R = _as_matrix(R, "R")
    D = _as_matrix(D, "D")
    if R.shape[1] != D.shape[1]:
        raise DimensionError(
            f"column counts differ: R has {R.shape[1]}, D has {D.shape[1]}"
        )
    out = np.zeros(R.shape[0] + D.shape[0] - 1)
    for k in range(R.shape[1]):
        out += np.convolve(R[:, k], D[:, k], mode="full")
    return out


def valid_correlate(e, kernel) -> np.ndarray:
    """Valid cross-correlation ``out[j] = sum_m e[j + m] * kernel[m]``.

    This is the adjoint of full convolution by ``kernel``: it equals the
    transpose of the convolution matrix of ``kernel`` applied to ``e``.
    Output length is ``len(e) - len(kernel) + 1``.
    """
    e = _as_vector(e, "e")
    kernel = _as_vector(kernel, "kernel")
    if kernel.shape[0] > e.shape[0]:
        raise DimensionError(
            f"kernel (length {kernel.shape[0]}) longer than signal (length {e.shape[0]})"
        )
    return np.correlate(e, kernel, mode="valid")


def lpq_norm(A, p: float, q: float) -> float:
    """The q-norm of the vector of p-norms of the columns of ``A``.

    ``p`` or ``q`` equal to 0 counts nonzero entries (limit convention);
    infinity takes the maximum. (2, 2) is the Frobenius norm.
    """
    A = _as_matrix(A, "A")
    if not np.all(np.isfinite(A)):
        raise ParameterError("lpq_norm requires finite entries")
    if p < 0 or q < 0:
        raise ParameterError(f"p and q must lie in [0, inf], got p={p}, q={q}")
    absA = np.abs(A)
    if p == 0:
        cols = np.count_nonzero(absA, axis=0).astype(float)
    elif np.isinf(p):
        cols = absA.max(axis=0)
    else:
        cols = (absA**p).sum(axis=0) ** (1.0 / p)
    if q == 0:
        return float(np.count_nonzero(cols))
    if np.isinf(q):
        return float(cols.max())
    return float((cols**q).sum() ** (1.0 / q))


def objective_and_gradients(Y, R, D) -> tuple[float, np.ndarray, np.ndarray]:
    """Squared-error objective ``||Y - R ⊗ D||_2^2`` and its gradients.

    With residual ``E = R ⊗ D - Y``, the gradient with respect to column k
    of R is ``2 * valid_correlate(E, D[:, k])`` and with respect to column k
    of D is ``2 * valid_correlate(E, R[:, k])``.
    """
    Y = _as_vector(Y, "Y")
    R = _as_matrix(R, "R")
    D = _as_matrix(D, "D")
    if Y.shape[0] != R.shape[0] + D.shape[0] - 1:
        raise DimensionError(
            f"len(Y)={Y.shape[0]} incompatible with R rows {R.shape[0]} "
            f"and D rows {D.shape[0]}"
        )
    E = multi_convolve(R, D) - Y
    K = R.shape[1]
    grad_R = np.empty_like(R)
    grad_D = np.empty_like(D)
    for k in range(K):
        grad_R[:, k] = 2.0 * np.correlate(E, D[:, k], mode="valid")
        grad_D[:, k] = 2.0 * np.correlate(E, R[:, k], mode="valid")
    return float(E @ E), grad_R, grad_D


def convolution_matrix(source, target_length: int) -> np.ndarray:
    """Banded matrix ``T`` with ``T @ y == np.convolve(source, y, "full")``.

    ``T`` has shape ``(target_length, target_length - len(source) + 1)`` and
    entry ``(i, j) == source[i - j]`` when ``0 <= i - j < len(source)``.
    Kept as an explicit-matrix oracle for the convolution operations; the
    solver path never materializes it.
    """
    source = _as_vector(source, "source")
    n = source.shape[0]
    if target_length < n:
        raise DimensionError(
            f"target_length {target_length} shorter than source length {n}"
        )
    cols = target_length - n + 1
    T = np.zeros((target_length, cols))
    for j in range(cols):
        T[j : j + n, j] = source
    return T
