"""Order types, SAT-based point-set embeddability, universal point sets.

The toolkit covers the full pipeline: exact orientation maps of point
sets and their abstract (axiomatic) counterparts with a compact binary
codec, exhaustive one-point extension for enumerating order types,
stacked-triangulation generation and recognition, a CNF encoding of
"graph G draws plane and straight-line on point set S" solved by a small
built-in CDCL solver, the phased universal-point-set search, and the
counting bounds.
"""

from .bounds import (
    BoundReport,
    asymptotic_ratio,
    labeled_stacked_count,
    min_universal_size_counting,
    solve_alpha,
)
from .chirotope import (
    AbstractOrderType,
    SmallLambdaMatrix,
    canonical_form,
    canonical_order_type,
    chirotope_from_points,
    convex_layers,
    decode_olm,
    encode_olm,
    extreme_points,
    orientation,
    parse_point_list,
    point_in_triangle,
    record_size,
    reflect,
    restrict,
    segments_cross,
    signotope_check,
    small_lambda,
    validate_point_set,
)
from .embedding import (
    CnfFormula,
    crossing_pairs,
    decide_embeddable,
    encode_embedding,
    export_dimacs,
    verify_witness,
)
from .enumeration import (
    ExtensionShard,
    enumerate_order_types,
    extend_by_one,
    merge_dedup,
    run_extension,
)
from .graphs import (
    Graph,
    StackingOrder,
    count_labeled_stackings,
    emit_edge_list,
    filter_max_degree,
    generate_stacked,
    is_triangulation_candidate,
    parse_edge_list,
    parse_graph6,
    recognize_stacked,
    triangulation_certificate,
)
from .search import (
    ConflictCollection,
    StatMatrix,
    build_stat,
    export_lp,
    filter_phase1,
    has_nested_triangle_structure,
    min_hitting_set,
    read_stat,
    test_universal,
    verify_conflict_collection,
    write_stat,
)

__version__ = "0.1.0"
