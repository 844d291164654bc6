"""Stability conditions, masses and the Thurston-type boundary for a K3 surface
whose numerical lattice is spanned by ``[O_X]`` and ``[k_x]``."""

__version__ = "0.1.0"

from .boundary import (
    RED_POINT,
    VERTEX_P0,
    LaxDescriptor,
    SquareCoord,
    blue_point,
    hom_functional,
    phase_cloud,
    pi_param,
    semistable_class_predicate,
    support_minimum,
    support_ratio,
    threshold_witness,
    vertex_P,
    vertex_Q,
)
from .chart import (
    ChartPoint,
    Region,
    StabilityPoint,
    canonicalize,
    central_charge,
    phase_of_stable,
    region,
)
from .errors import (
    AmbiguousWindow,
    DomainError,
    K3StabError,
    NoConvergence,
    NotStable,
    PhaseOrderViolation,
    TriangleViolation,
)
from .hn import Factor, hn_closed_form, hn_factors, hn_oracle, phase_spread, twist_reduce
from .lattice import Atom, AtomKind, ClassType, MukaiVector, classify_class, pairing, twist_class
from .mass import (
    CellId,
    CellKind,
    InvertCell,
    MassFunction,
    Tail,
    TriangleStatus,
    classify_mass_point,
    invert_cell,
    locate,
    mass_abc,
    mass_from_factors,
    mass_vector,
    triangle_check,
)
from .tiling import RenderMode, RenderSpec, halfplane_triangles, render
