"""Pachner moves, stellar operations and elementary shellings on pure simplicial complexes."""

from .core import (
    Complex,
    FVector,
    are_isomorphic,
    boundary_complex,
    cone,
    euler_characteristic,
    f_vector,
    faces,
    from_facets,
    full_simplex,
    generate,
    is_closed_pseudomanifold,
    is_combinatorial_manifold,
    is_orientable,
    join,
    link,
    relabel,
    sphere,
    star,
    suspension,
)
from .errors import PachnerError
from .explore import (
    FlipGraph,
    SearchReport,
    build_flip_graph,
    connectivity_certificate,
    random_walk,
    simplify,
)
from .moves import (
    MoveSite,
    admissible_move_at,
    apply_move,
    enumerate_moves,
    factor_via_stellar,
    inverse_site,
    stellar_subdivide,
    stellar_weld,
)
from .shellings import (
    BoundaryMoveWitness,
    ShellingSite,
    apply_inverse_shelling,
    apply_shelling,
    enumerate_shellings,
    shell_to_facet,
)
from .trace import Trace, replay

__version__ = "0.1.0"
