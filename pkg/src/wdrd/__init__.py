"""Weakly distance-regular digraphs."""
from ._backend import BACKEND
from .constructions import (
    CayleySpec,
    cartesian_product,
    cayley,
    complete_graph,
    doob,
    folded_cube,
    hamming,
    paley_tournament,
    product_all,
    shrikhande,
)
from .graph import (
    Digraph,
    GraphError,
    NotStronglyConnected,
    TwoWayDistanceTable,
    degrees,
    girth,
    induced_subdigraph,
    is_complete,
    is_semicomplete,
    is_strongly_connected,
    is_undirected,
    new_digraph,
    two_way_distance,
    underlying_graph,
)
from .isomorphism import are_isomorphic, dedup_isomorphic, is_isomorphism
from .schemes import (
    IntersectionArray,
    IntersectionTensor,
    RegularityWitness,
    RelationPartition,
    drg_check,
    is_commutative,
    relation_partition,
    scheme_axioms_check,
    semicomplete_wdrd_profile,
    verify_structural_lemmas,
    wdrd_check,
)
from .search import (
    ClassificationReport,
    OrientationSearchConfig,
    classify_orientations,
    enumerate_orientations,
    orient,
)
from .theorems import verify_product_proposition, verify_theorem

__version__ = "0.1.0"
