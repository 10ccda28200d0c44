"""Seeded generation of planted instances and the three noise models.

An instance plants a ground-truth pair (R, D): dictionary columns drawn
uniformly from the unit sphere, and an integer-valued encoding built by
adding 1 to uniformly random coordinates until the target L_{1,1} mass is
reached (the same coordinate may be hit more than once). The observation is
``Y = R ⊗ D + eps`` with noise from one of:

* ``iid_gaussian`` - independent N(0, sigma^2) entries,
* ``correlated_gaussian`` - a single N(0, sigma^2) draw added to every entry,
* ``generalized_pareto`` - independent symmetric heavy-tailed entries with
  density ``(1 / (2 s)) (1 + shape (|x| - loc) / s)^(-1/shape - 1)`` on
  ``|x| >= loc``, sampled by inverting the magnitude CDF. With the default
  (loc, scale, shape) = (2, 1, 1/2) the p-th moment is finite iff p < 2.

Samplers take an explicit generator and never touch global RNG state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, ParameterError
from .seeding import instance_stream
from .tensor_ops import multi_convolve

__all__ = [
    "NoiseModel",
    "PlantedInstance",
    "sample_dictionary",
    "sample_encoding",
    "sample_noise",
    "plant_instance",
]

NOISE_KINDS = ("iid_gaussian", "correlated_gaussian", "generalized_pareto")


@dataclass(frozen=True)
class NoiseModel:
    kind: str
    sigma: float = 0.1
    gp_location: float = 2.0
    gp_scale: float = 1.0
    gp_shape: float = 0.5

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ParameterError(f"kind must be one of {NOISE_KINDS}, got {self.kind!r}")
        if self.sigma < 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")
        if self.gp_scale <= 0:
            raise ParameterError(f"gp_scale must be > 0, got {self.gp_scale}")
        if self.gp_shape <= 0:
            raise ParameterError(f"gp_shape must be > 0, got {self.gp_shape}")


@dataclass(frozen=True)
class PlantedInstance:
    R: np.ndarray
    D: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    noise: np.ndarray
    N: int
    n: int
    K: int
    target_sparsity: int
    model: NoiseModel
    seed: int


def sample_dictionary(n: int, K: int, rng: np.random.Generator) -> np.ndarray:
    """K columns drawn independently and uniformly from the L2 unit sphere in R^n."""
    if n < 1 or K < 1:
        raise ParameterError(f"n and K must be >= 1, got n={n}, K={K}")
    g = rng.standard_normal((n, K))
    norms = np.linalg.norm(g, axis=0)
    while np.any(norms == 0.0):  # probability-zero; redraw rather than pick a direction
        redo = norms == 0.0
        g[:, redo] = rng.standard_normal((n, int(redo.sum())))
        norms = np.linalg.norm(g, axis=0)
    return g / norms


def sample_encoding(
    N: int, n: int, K: int, target_sparsity: int, rng: np.random.Generator
) -> np.ndarray:
    """Non-negative integer encoding with ``||R||_{1,1}`` exactly ``target_sparsity``."""
    if n < 1 or K < 1:
        raise ParameterError(f"n and K must be >= 1, got n={n}, K={K}")
    if N < n:
        raise DimensionError(f"N={N} must be >= n={n}")
    if target_sparsity < 0 or int(target_sparsity) != target_sparsity:
        raise ParameterError(f"target_sparsity must be a non-negative integer, got {target_sparsity}")
    rows = N - n + 1
    R = np.zeros(rows * K)
    if target_sparsity > 0:
        hits = rng.integers(0, rows * K, size=int(target_sparsity))
        np.add.at(R, hits, 1.0)
    return R.reshape(rows, K)


def sample_noise(N: int, model: NoiseModel, rng: np.random.Generator) -> np.ndarray:
    """One realization of the noise vector of length N."""
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")
    if model.kind == "iid_gaussian":
        return rng.normal(0.0, model.sigma, size=N) if model.sigma > 0 else np.zeros(N)
    if model.kind == "correlated_gaussian":
        z = rng.normal(0.0, model.sigma) if model.sigma > 0 else 0.0
        return np.full(N, z)
    # Symmetric generalized Pareto: magnitude by inverse CDF, then a random sign.
    u = rng.random(N)
    magnitude = model.gp_location + (model.gp_scale / model.gp_shape) * (
        (1.0 - u) ** (-model.gp_shape) - 1.0
    )
    signs = 2.0 * rng.integers(0, 2, size=N) - 1.0
    return signs * magnitude


def plant_instance(
    N: int,
    n: int,
    K: int,
    target_sparsity: int,
    model: NoiseModel,
    seed: int,
) -> PlantedInstance:
    """Deterministically generate one instance of the generative model."""
    rng = instance_stream(seed)
    D = sample_dictionary(n, K, rng)
    R = sample_encoding(N, n, K, target_sparsity, rng)
    noise = sample_noise(N, model, rng)
    X = multi_convolve(R, D)
    return PlantedInstance(
        R=R,
        D=D,
        X=X,
        Y=X + noise,
        noise=noise,
        N=N,
        n=n,
        K=K,
        target_sparsity=int(target_sparsity),
        model=model,
        seed=int(seed),
    )
