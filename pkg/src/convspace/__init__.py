"""Finite convexity spaces, their combinatorial invariants and certificate-producing executors."""
from .builtins import (
    box_lower_bound_family,
    make_box_space,
    make_explicit_space,
    make_lattice_space,
)
from .errors import (
    CapExceededError,
    ConvexityError,
    HypothesisViolation,
    ParseError,
    SeparationError,
    VerificationError,
)
from .family import SetFamily
from .pointset import PointSet
from .space import (
    ConvexitySpace,
    GroundPoint,
    Halfspace,
    check_axioms,
    enumerate_convex_sets,
    enumerate_halfspaces,
    hull,
    is_convex,
    is_separable,
    separate,
)

__version__ = "0.1.0"
