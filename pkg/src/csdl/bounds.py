"""Closed-form risk-bound evaluators and the trivial-estimator baselines.

Each function evaluates one bound on the average per-coordinate squared
reconstruction error exactly as written, with natural logarithms throughout.
The evaluators take realized instance quantities (the exact encoding mass,
the actual N) rather than nominal targets so that comparisons against
empirical risk are exact. Nothing here is stochastic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import ParameterError
from .solver import recommended_lambda_prime
from .synthesis import PlantedInstance

__all__ = [
    "BoundInputs",
    "ub_componentwise",
    "ub_joint",
    "lb_componentwise",
    "lb_joint",
    "ub_moment",
    "ub_penalized",
    "ub_iid_sdl",
    "trivial_estimator_risks",
]


@dataclass(frozen=True)
class BoundInputs:
    """Problem parameters shared by the bound formulas.

    ``K`` is carried for provenance only; no formula uses it. ``mu_p``/``p``
    feed the finite-moment bound and ``delta`` the penalized bound; they may
    stay None when those evaluators are not called.
    """

    N: int
    n: int
    lam: float
    sigma: float
    K: int | None = None
    mu_p: float | None = None
    p: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if self.n < 1 or self.N < self.n:
            raise ParameterError(f"need N >= n >= 1, got N={self.N}, n={self.n}")
        if self.lam < 0:
            raise ParameterError(f"lam must be >= 0, got {self.lam}")
        if self.sigma < 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}")
        if self.mu_p is not None and self.mu_p < 0:
            raise ParameterError(f"mu_p must be >= 0, got {self.mu_p}")
        if self.p is not None and self.p < 1:
            raise ParameterError(f"p must be >= 1, got {self.p}")
        if self.delta is not None and not 0 < self.delta < 1:
            raise ParameterError(f"delta must lie in (0, 1), got {self.delta}")


def ub_componentwise(b: BoundInputs) -> float:
    """Upper bound under componentwise sub-Gaussian noise (arbitrary dependence)."""
    return 4.0 * b.lam * b.sigma * math.sqrt(2.0 * b.n * math.log(2.0 * b.N)) / b.N


def ub_joint(b: BoundInputs) -> float:
    """Upper bound under jointly sub-Gaussian noise; smaller by ~sqrt(n)."""
    return 4.0 * b.lam * b.sigma * math.sqrt(2.0 * math.log(2.0 * (b.N - b.n + 1))) / b.N


def lb_componentwise(b: BoundInputs) -> float:
    """Minimax lower bound matching the componentwise noise class."""
    return (
        b.lam
        / (8.0 * b.N)
        * min(b.lam, b.sigma * math.sqrt(b.n * math.log(b.N - b.n + 1)))
    )


def lb_joint(b: BoundInputs) -> float:
    """Minimax lower bound matching the jointly sub-Gaussian noise class."""
    return (
        b.lam
        / (8.0 * b.N)
        * min(b.lam, b.sigma * math.sqrt(math.log(b.N - b.n + 1)))
    )


def ub_moment(b: BoundInputs) -> float:
    """Upper bound when the noise has componentwise finite p-th moments mu_p."""
    if b.mu_p is None or b.p is None:
        raise ParameterError("ub_moment needs mu_p and p")
    n_exponent = max(0.0, (b.p - 2.0) / (2.0 * b.p))
    return 4.0 * b.lam * b.mu_p * b.N ** ((1.0 - b.p) / b.p) * b.n**n_exponent


def ub_penalized(b: BoundInputs) -> float:
    """High-probability bound for the penalized estimator at its recommended weight."""
    if b.delta is None:
        raise ParameterError("ub_penalized needs delta")
    lam_prime = recommended_lambda_prime(b.sigma, b.N, b.delta)
    return (
        4.0
        * lam_prime
        * b.sigma
        * math.sqrt(2.0 * b.n * math.log(2.0 * b.N / b.delta))
        / b.N
    )


def ub_iid_sdl(N_prime: int, d_prime: int, lam_prime: float, sigma: float) -> float:
    """Upper bound for the patch-based (IID) formulation, for comparison only.

    No solver for that formulation exists here; converting sequential data to
    patches can inflate the encoding mass by a factor of the patch width, and
    this evaluator makes that comparison concrete.
    """
    if N_prime < 1 or d_prime < 1:
        raise ParameterError(f"need N_prime, d_prime >= 1, got {N_prime}, {d_prime}")
    if lam_prime < 0 or sigma < 0:
        raise ParameterError("lam_prime and sigma must be >= 0")
    return (
        4.0
        * lam_prime
        * sigma
        * math.sqrt(2.0 * d_prime * math.log(2.0 * N_prime * d_prime))
        / (N_prime * d_prime)
    )


def trivial_estimator_risks(instance: PlantedInstance) -> tuple[float, float]:
    """Realized risks of the all-zero and identity estimators.

    Returns ``(||X||^2 / N, ||eps||^2 / N)``. The first never exceeds
    ``||R||_{1,1}^2 / N`` because the reconstruction's L2 norm is bounded by
    the encoding mass when the dictionary columns are unit vectors.
    """
    risk_zero = float(instance.X @ instance.X) / instance.N
    risk_identity = float(instance.noise @ instance.noise) / instance.N
    return risk_zero, risk_identity
