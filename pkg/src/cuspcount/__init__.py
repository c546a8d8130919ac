"""Exact lattice-path enumeration of unicuspidal and nodal curve counts on
toric surfaces.

The count of curves with one cusp (or, in the baseline mode, only nodes) of a
given degree and genus reduces to a finite sum over pairs (lambda-path, marked
admissible subdivision of the Newton polygon).  This package implements that
enumeration over exact integer and rational arithmetic.
"""

from .engine import (
    Contribution,
    CountResult,
    InvariantViolationError,
    ResourceLimitError,
    count,
    decompose_families,
)
from .factors import (
    FragmentKind,
    elliptic_edge_factor,
    flat_cycle_factor,
    flat_vertex_factor,
    quad_factor,
    sigma_polygon,
    theta,
    theta_table,
)
from .kontsevich import kontsevich_oracle
from .lattice import (
    LatticePoint,
    LatticePolygon,
    LatticeSegment,
    boundary_lattice_points,
    convex_hull,
    interior_lattice_points,
    is_h_transversal,
    lattice_area,
    lattice_length,
    lattice_points,
    minkowski_sum,
    mixed_area,
    unimodular_apply,
)
from .multiplicity import cuspidal_multiplicity, severi_multiplicity
from .paths import (
    LambdaPath,
    Side,
    enumerate_lambda_paths,
    lambda_less,
    path_count,
    side_of,
)
from .problem import (
    Mode,
    ProblemInstance,
    ValidationError,
    degree_of,
    has_quadrangle_witness,
    parse_polygon_spec,
    validate_instance,
)
from .report import emit_csv, emit_json, emit_svg, emit_table
from .subdivision import (
    MarkedEdge,
    MarkedSubdivision,
    Subdivision,
    Tile,
    TileKind,
    check_admissible,
    enumerate_markings,
    find_pivot,
    interior_edges,
    irreducible,
    run_recursion,
    step_candidates,
)

__version__ = "0.1.0"
