"""Convolutional sparse dictionary learning toolkit.

Estimators for decomposing a long 1-D signal into a sparse non-negative
encoding convolved with short unit-norm dictionary atoms, closed-form
evaluators for the matching minimax risk bounds, seeded synthetic-data
generators, and a CLI experiment harness that checks empirical risk against
the bounds.
"""

from .bounds import (
    BoundInputs,
    lb_componentwise,
    lb_joint,
    trivial_estimator_risks,
    ub_componentwise,
    ub_iid_sdl,
    ub_joint,
    ub_moment,
    ub_penalized,
)
from .exceptions import (
    CsdlError,
    DimensionError,
    InputError,
    NumericalError,
    OutputError,
    ParameterError,
)
from .projections import (
    project_columns_to_sphere,
    project_nonneg_l11_ball,
    prox_nonneg_l1,
)
from .solver import (
    SolveResult,
    SolverConfig,
    proof_lambda_prime,
    recommended_lambda_prime,
    solve_constrained,
    solve_penalized,
)
from .synthesis import (
    NoiseModel,
    PlantedInstance,
    plant_instance,
    sample_dictionary,
    sample_encoding,
    sample_noise,
)
from .tensor_ops import (
    convolution_matrix,
    lpq_norm,
    multi_convolve,
    objective_and_gradients,
    valid_correlate,
)

__version__ = "0.1.0"

__all__ = [
    "BoundInputs",
    "CsdlError",
    "DimensionError",
    "InputError",
    "NoiseModel",
    "NumericalError",
    "OutputError",
    "ParameterError",
    "PlantedInstance",
    "SolveResult",
    "SolverConfig",
    "convolution_matrix",
    "lb_componentwise",
    "lb_joint",
    "lpq_norm",
    "multi_convolve",
    "objective_and_gradients",
    "plant_instance",
    "project_columns_to_sphere",
    "project_nonneg_l11_ball",
    "proof_lambda_prime",
    "prox_nonneg_l1",
    "recommended_lambda_prime",
    "sample_dictionary",
    "sample_encoding",
    "sample_noise",
    "solve_constrained",
    "solve_penalized",
    "trivial_estimator_risks",
    "ub_componentwise",
    "ub_iid_sdl",
    "ub_joint",
    "ub_moment",
    "ub_penalized",
    "valid_correlate",
]
