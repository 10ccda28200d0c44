"""Alternating projected gradient descent for the two estimator forms.

The constrained form minimizes ``||Y - R ⊗ D||_2^2`` over non-negative R
with ``||R||_{1,1} <= lam`` and unit-column D; the penalized form trades the
budget for a ``lam_prime * ||R||_{1,1}`` penalty handled by a proximal step.

One iteration is: gradient step in D, project columns to the sphere,
gradient step in R (at the updated D), project R back to its feasible set.
The step size decays as ``step_scale / sqrt(i)`` and the loop runs a fixed
number of iterations; the returned iterate is the last one, not the best
one (the objective trace lets callers pick otherwise). Early stopping,
random restarts, and a backtracking line search exist as config overrides
but are all off by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import DimensionError, InputError, NumericalError, ParameterError
from .projections import (
    project_columns_to_sphere,
    project_nonneg_l11_ball,
    prox_nonneg_l1,
)
from .seeding import solver_stream
from .tensor_ops import multi_convolve

__all__ = [
    "SolverConfig",
    "SolveResult",
    "solve_constrained",
    "solve_penalized",
    "recommended_lambda_prime",
    "proof_lambda_prime",
]

MODES = ("constrained", "penalized")

# First halving of the optional backtracking search that still counts as a
# try; after this many the step is rejected and the variable kept.
_LINE_SEARCH_MAX_HALVINGS = 20


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of one solve.

    ``lam`` is the L_{1,1} budget (constrained mode); ``lam_prime`` is the
    penalty weight (penalized mode). Only the one matching ``mode`` is
    consulted.
    """

    mode: str
    n: int
    K: int
    lam: float | None = None
    lam_prime: float | None = None
    iterations: int = 200
    step_scale: float = 0.01
    seed: int = 0
    early_stop_tol: float = 0.0  # 0 disables; relative objective change
    restarts: int = 1
    line_search: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n < 1 or self.K < 1:
            raise ParameterError(f"n and K must be >= 1, got n={self.n}, K={self.K}")
        if self.iterations < 1:
            raise ParameterError(f"iterations must be >= 1, got {self.iterations}")
        if self.step_scale <= 0:
            raise ParameterError(f"step_scale must be > 0, got {self.step_scale}")
        if self.mode == "constrained":
            if self.lam is None or self.lam < 0:
                raise ParameterError("constrained mode needs lam >= 0")
        else:
            if self.lam_prime is None or self.lam_prime < 0:
                raise ParameterError("penalized mode needs lam_prime >= 0")
        if self.early_stop_tol < 0:
            raise ParameterError("early_stop_tol must be >= 0")
        if self.restarts < 1:
            raise ParameterError("restarts must be >= 1")


@dataclass(frozen=True)
class SolveResult:
    """Final feasible iterate plus the reconstruction it induces."""

    R_hat: np.ndarray
    D_hat: np.ndarray
    X_hat: np.ndarray
    objective_trace: np.ndarray
    final_objective: float


def recommended_lambda_prime(sigma: float, N: int, delta: float) -> float:
    """Penalty weight ``sigma * sqrt(2 log(2 N / delta))`` for the penalized form."""
    if sigma < 0:
        raise ParameterError(f"sigma must be >= 0, got {sigma}")
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    return sigma * math.sqrt(2.0 * math.log(2.0 * N / delta))


def proof_lambda_prime(sigma: float, n: int, N: int, delta: float) -> float:
    """Variant with an extra sqrt(n): ``sigma * sqrt(2 n log(2 N / delta))``.

    The bound statement and its derivation disagree by this factor; the
    harness exposes both so the choice stays visible.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return recommended_lambda_prime(sigma, N, delta) * math.sqrt(n)


def _check_input(Y, cfg: SolverConfig) -> np.ndarray:
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 1:
        raise DimensionError(f"Y must be 1-D, got shape {Y.shape}")
    if Y.shape[0] < cfg.n:
        raise DimensionError(f"len(Y)={Y.shape[0]} shorter than dictionary length n={cfg.n}")
    if not np.all(np.isfinite(Y)):
        raise InputError("Y contains non-finite entries")
    return Y


def _gradient_R(E: np.ndarray, D: np.ndarray) -> np.ndarray:
    K = D.shape[1]
    g = np.empty((E.shape[0] - D.shape[0] + 1, K))
    for k in range(K):
        g[:, k] = 2.0 * np.correlate(E, D[:, k], mode="valid")
    return g


def _gradient_D(E: np.ndarray, R: np.ndarray) -> np.ndarray:
    K = R.shape[1]
    g = np.empty((E.shape[0] - R.shape[0] + 1, K))
    for k in range(K):
        g[:, k] = 2.0 * np.correlate(E, R[:, k], mode="valid")
    return g


def _step(current, grad, gamma, project, Y, other_multi, line_search, current_obj):
    """One projected gradient step; optionally backtrack until non-increasing."""
    if not line_search:
        return project(current - gamma * grad)
    g = gamma
    for _ in range(_LINE_SEARCH_MAX_HALVINGS):
        candidate = project(current - g * grad)
        E = other_multi(candidate) - Y
        if float(E @ E) <= current_obj:
            return candidate
        g /= 2.0
    return current


def _solve_once(Y, cfg: SolverConfig, restart: int, callback) -> SolveResult:
    rng = solver_stream(cfg.seed, restart)
    n, K = cfg.n, cfg.K
    rows = Y.shape[0] - n + 1

    D = project_columns_to_sphere(rng.standard_normal((n, K)))
    if cfg.mode == "constrained":
        R = project_nonneg_l11_ball(rng.standard_normal((rows, K)), cfg.lam)
        project_R = lambda M, gamma: project_nonneg_l11_ball(M, cfg.lam)  # noqa: E731
    else:
        # Penalized codes start at zero, the usual proximal-gradient choice; a
        # clipped Gaussian start carries ~0.4*rows*K of mass that the decaying
        # shrinkage steps cannot remove within the iteration budget.
        R = np.zeros((rows, K))
        project_R = lambda M, gamma: prox_nonneg_l1(M, gamma * cfg.lam_prime)  # noqa: E731

    E = multi_convolve(R, D) - Y
    trace = []
    for i in range(1, cfg.iterations + 1):
        gamma = cfg.step_scale / math.sqrt(i)
        current_obj = float(E @ E)

        D = _step(
            D,
            _gradient_D(E, R),
            gamma,
            project_columns_to_sphere,
            Y,
            lambda Dc: multi_convolve(R, Dc),
            cfg.line_search,
            current_obj,
        )
        E = multi_convolve(R, D) - Y

        R = _step(
            R,
            _gradient_R(E, D),
            gamma,
            lambda M: project_R(M, gamma),
            Y,
            lambda Rc: multi_convolve(Rc, D),
            cfg.line_search,
            float(E @ E),
        )
        E = multi_convolve(R, D) - Y

        trace.append(float(E @ E))
        if callback is not None:
            callback(i, R, D)
        if (
            cfg.early_stop_tol > 0.0
            and len(trace) >= 2
            and abs(trace[-2] - trace[-1]) <= cfg.early_stop_tol * max(1.0, abs(trace[-2]))
        ):
            break

    X_hat = multi_convolve(R, D)
    resid = X_hat - Y
    return SolveResult(
        R_hat=R,
        D_hat=D,
        X_hat=X_hat,
        objective_trace=np.asarray(trace),
        final_objective=float(resid @ resid),
    )


def _solve(Y, cfg: SolverConfig, callback) -> SolveResult:
    Y = _check_input(Y, cfg)
    best = None
    for restart in range(cfg.restarts):
        result = _solve_once(Y, cfg, restart, callback)
        if not np.all(np.isfinite(result.objective_trace)):
            raise NumericalError(
                f"objective diverged to non-finite values (restart {restart})"
            )
        if best is None or result.final_objective < best.final_objective:
            best = result
    return best


def solve_constrained(
    Y,
    cfg: SolverConfig,
    callback: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
) -> SolveResult:
    """Budget-constrained solve; ``callback(i, R, D)`` runs after iteration i."""
    if cfg.mode != "constrained":
        raise ParameterError(f"solve_constrained needs mode='constrained', got {cfg.mode!r}")
    return _solve(Y, cfg, callback)


def solve_penalized(
    Y,
    cfg: SolverConfig,
    callback: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
) -> SolveResult:
    """Penalized solve; the R step shrinks by ``gamma * lam_prime`` each iteration."""
    if cfg.mode != "penalized":
        raise ParameterError(f"solve_penalized needs mode='penalized', got {cfg.mode!r}")
    return _solve(Y, cfg, callback)
