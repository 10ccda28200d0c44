"""Exact Euclidean projections and the proximal operator for the R update.

Three maps, all pure:

* per-column projection onto the unit sphere (dictionary step),
* projection onto {M >= 0, ||M||_{1,1} <= radius} (encoding step,
  constrained form),
* entrywise shrinkage max(v - t, 0), the proximal operator of
  t * ||.||_{1,1} plus the non-negativity indicator (penalized form).

The L_{1,1} constraint is on the whole matrix, so the ball projection
flattens its input and reduces to the classic vector problem: clip the
negatives, then subtract the unique water-filling threshold found by
sort-and-scan, which is exact in O(m log m).
"""

from __future__ import annotations

import numpy as np

from .exceptions import ParameterError

__all__ = [
    "project_columns_to_sphere",
    "project_nonneg_l11_ball",
    "prox_nonneg_l1",
]


def project_columns_to_sphere(D) -> np.ndarray:
    """Scale every column of ``D`` to unit L2 norm.

    A zero column has no well-defined direction; it is replaced by the first
    canonical basis vector, which keeps the map deterministic. (Under the
    Gaussian initialization this is a probability-zero event.)
    """
    D = np.asarray(D, dtype=float)
    norms = np.linalg.norm(D, axis=0)
    out = np.array(D, copy=True)
    zero = norms == 0.0
    if np.any(zero):
        out[:, zero] = 0.0
        out[0, zero] = 1.0
        norms = np.where(zero, 1.0, norms)
    return out / norms


def project_nonneg_l11_ball(R, radius: float) -> np.ndarray:
    """Euclidean projection of ``R`` onto {M >= 0, ||M||_{1,1} <= radius}.

    Clips negative entries to zero; if the clipped sum still exceeds the
    radius, subtracts the water-filling threshold tau >= 0 solving
    ``sum(max(v - tau, 0)) == radius`` over the flattened entries.
    """
    if radius < 0:
        raise ParameterError(f"radius must be >= 0, got {radius}")
    R = np.asarray(R, dtype=float)
    clipped = np.maximum(R, 0.0)
    if radius == 0.0:
        return np.zeros_like(clipped)
    total = clipped.sum()
    # Sums within 1e-10 of the radius count as inside (the feasibility
    # tolerance); this keeps reprojection of a boundary point a bit-exact
    # no-op instead of a one-ulp shrink.
    if total <= radius + 1e-10:
        return clipped
    v = np.sort(clipped.ravel())[::-1]
    cumsum = np.cumsum(v)
    ranks = np.arange(1, v.size + 1)
    # Largest prefix whose entries stay positive after the common shift.
    rho = int(np.nonzero(v * ranks > cumsum - radius)[0][-1]) + 1
    tau = (cumsum[rho - 1] - radius) / rho
    return np.maximum(clipped - tau, 0.0)


def prox_nonneg_l1(R, threshold: float) -> np.ndarray:
    """Entrywise ``max(v - threshold, 0)``.

    Exact proximal operator of ``threshold * ||.||_{1,1}`` restricted to the
    non-negative orthant; with threshold 0 it degenerates to the clip.
    """
    if threshold < 0:
        raise ParameterError(f"threshold must be >= 0, got {threshold}")
    R = np.asarray(R, dtype=float)
    return np.maximum(R - threshold, 0.0)
