"""Obstacle problem for the p-elastic energy of graphs.

Core operations are implemented in C++ and exposed through the compiled
``_pelastica`` module: generalized trigonometric functions, the free
p-elastica curve family, sharp cone-height thresholds, the constrained
minimization solver, post-solve diagnostics, and the symmetric decreasing
rearrangement.
"""

from ._pelastica import (  # noqa: F401
    AssumptionError,
    NoMinimizerError,
    PElastica,
    asin_gen,
    c_p,
    comparison_uc,
    cos_gen,
    diagnostics_json,
    endpoint_constants,
    energy_discrete,
    exact_cone_minimizer,
    h_star,
    minimize,
    nonexistence_H,
    nonexistence_bound,
    pi_gen,
    profile_U0,
    rearrange_minimizer,
    sin_gen,
    threshold_verdict,
)

__version__ = "0.1.0"
