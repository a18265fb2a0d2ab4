"""
Half-space polytopes, rigid poses and the linear programs around them.
"""

from .enclosing import covering_ball, min_enclosing_ball, vertices
from .feasibility import support
from .generation import box_polytope, random_polytope, regular_simplex
from .io import load_polytope, polytope_from_dict, polytope_to_dict, save_polytope
from .polytope import (
    SUBSET_METHODS,
    HalfSpace,
    HalfSpacePolytope,
    contains,
    make_polytope,
    max_positive_subset,
    max_simultaneous_positive,
    transform,
)
from .pose import RigidPose, rotation_dof, rotation_matrix, torque

__all__ = [
    "SUBSET_METHODS",
    "HalfSpace",
    "HalfSpacePolytope",
    "RigidPose",
    "make_polytope",
    "contains",
    "transform",
    "max_simultaneous_positive",
    "max_positive_subset",
    "random_polytope",
    "box_polytope",
    "regular_simplex",
    "vertices",
    "covering_ball",
    "min_enclosing_ball",
    "support",
    "rotation_matrix",
    "rotation_dof",
    "torque",
    "load_polytope",
    "save_polytope",
    "polytope_to_dict",
    "polytope_from_dict",
]
