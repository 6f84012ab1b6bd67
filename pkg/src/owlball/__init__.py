"""Fast Euclidean projection onto ordered weighted L1 norm balls.

The ordered weighted L1 norm pairs the sorted magnitudes of a vector
with a nonincreasing weight vector; its ball interpolates between the
L1 ball (constant weights) and the L-infinity dual (a single leading
weight).  Projecting onto it reduces to an isotonic subproblem whose
scalar dual is solved by a semismooth Newton method in O(n) per
iteration and a handful of iterations in practice.

Typical use::

    import numpy as np
    from owlball import Instance, Weights, project_ball

    w = Weights(np.linspace(2.0, 1.0, 5))
    inst = Instance(np.random.randn(5), w, tau=1.5)
    x = project_ball(inst).x
"""

from .core import (
    INSIDE_RTOL,
    Instance,
    SignedSort,
    Weights,
    is_trivial,
    owl_norm,
    signed_sort,
)
from .isotonic import ConeProjection, active_set, project_cone
from .jacobian import (
    BallJacobian,
    BlockPartition,
    ConeJacobian,
    apply_ball_jacobian,
    apply_cone_jacobian,
    ball_jacobian,
    cone_jacobian,
    curvature,
    dense_cone_jacobian,
    difference_matrix,
    partition_from_active_set,
)
from .projector import ProjectionResult, project_ball, prox_owl
from .rootfind import (
    BracketError,
    NonConvergenceError,
    RootfindReport,
    dual_norm,
    solve_root,
)
from .ssn import SsnParams, SsnReport, StepRecord, dual_gradient, dual_value
from .ssn import solve as ssn_solve

__version__ = "0.1.0"

__all__ = [
    "INSIDE_RTOL",
    "Instance",
    "SignedSort",
    "Weights",
    "is_trivial",
    "owl_norm",
    "signed_sort",
    "ConeProjection",
    "active_set",
    "project_cone",
    "BallJacobian",
    "BlockPartition",
    "ConeJacobian",
    "apply_ball_jacobian",
    "apply_cone_jacobian",
    "ball_jacobian",
    "cone_jacobian",
    "curvature",
    "dense_cone_jacobian",
    "difference_matrix",
    "partition_from_active_set",
    "ProjectionResult",
    "project_ball",
    "prox_owl",
    "BracketError",
    "NonConvergenceError",
    "RootfindReport",
    "dual_norm",
    "solve_root",
    "SsnParams",
    "SsnReport",
    "StepRecord",
    "dual_gradient",
    "dual_value",
    "ssn_solve",
    "__version__",
]
