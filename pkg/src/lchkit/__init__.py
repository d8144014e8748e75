"""Combinatorial holomorphic-disk invariants of Legendrian links in the
standard contact 3-space, computed from front event words."""

from .disks import (
    AnnulusCandidate,
    ChordTable,
    CornerRecord,
    Differential,
    DiskRegion,
    boundary_components,
    classify_corner,
    dga_differential,
    enumerate_rigid_disks,
    grade_chords,
    index2_census,
    lift_boundary_labels,
)
from .errors import LchkitError
from .frontdiagram import FrontDiagram, FrontEvent, classical_invariants, parse_front, platify
from .index import (
    BranchData,
    CurveTopology,
    LrsBoundaryData,
    index_branch,
    index_crit,
    index_from_maslov,
    maslov_of_boundary,
    moduli_dim,
)
from .obstruction import (
    FlatAnnulus,
    FourierBoundary,
    find_obstruction_zero,
    harmonic_extend,
    obstruction_integral,
)
from .resolution import (
    Arc,
    BoundaryPath,
    Cap,
    Crossing,
    Face,
    LagrangianDiagram,
    check_left_right_simple,
    compute_faces,
    n_copy,
    path_rotation,
    resolve,
)

__version__ = "0.1.0"
