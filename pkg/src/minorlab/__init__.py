"""minorlab: a graph-minor packing/covering laboratory.

Certified algorithms around clique minors: branch-set search with independent
verification, tree/path decompositions, a packing-or-hitting-set solver for
bounded treewidth, explicit gadget graphs (ladders, fans, walls), linkage
rerouting (singular linkages, combs, orthogonal families), and rotation-system
surface embeddings with face-width machinery and the apexed tightness
construction.
"""

from .graphs import (
    Graph,
    GraphError,
    complete_graph,
    contract_edge,
    cycle_graph,
    disjoint_paths,
    disjoint_union,
    grid_graph,
    induced_subgraph,
    path_graph,
    petersen_graph,
    vertex_connectivity,
)
from .minors import (
    ABSENT,
    BUDGET_EXCEEDED,
    Budget,
    MinorModel,
    Violation,
    find_disjoint_minors,
    find_minor,
    verify_model,
)
from .treedec import (
    PathDecomposition,
    SizeLimitError,
    TreeDecomposition,
    exact_pathwidth,
    exact_treewidth,
    heuristic_decomposition,
    restrict_decomposition,
    validate_decomposition,
)
from .erdos_posa import (
    HittingSet,
    Packing,
    ep_solve,
    f_w,
    required_connectivity,
    tight_connectivity,
    verify_certificate,
)
from .gadgets import (
    Fan,
    Ladder,
    Wall,
    boundary_cycles,
    build_fan,
    build_ladder,
    build_wall,
    fan_kp_model,
    fan_packing_model,
)
from .linkage import (
    Comb,
    Linkage,
    extract_comb,
    is_orthogonal,
    is_singular,
    orthogonalize,
    subcomb,
)
from .surface import (
    UNBOUNDED,
    EmbeddedGraph,
    cut_contractibility,
    double_torus_base,
    euler_genus,
    face_width,
    face_width_deletion_check,
    refine_all_faces,
    torus_grid,
    trace_faces,
)
from .tightness import (
    TightConstruction,
    boost_degrees,
    build_tight_construction,
    genus_budget_ok,
)

__version__ = "0.1.0"
