"""knotcert: exact certification of knot-free spatial graph diagrams.

The package splits into four layers: `graphcore` (simple graphs and the
triangle-Y / Y-triangle move calculus), `diagram` (combinatorial spatial
diagrams, validation, cycle enumeration, knot/link extraction, symmetry),
`invariants` (integer-exact Kauffman bracket, Jones normalization, linking
numbers), and `cli` (the `knotcert` executable with reproducible reports).
"""

from .graphcore import (
    Graph,
    MoveScript,
    apply_script,
    complete_graph,
    construct_g7,
    contract_edge,
    delete_edge,
    delta_y,
    is_isomorphic,
    verify_automorphism,
    y_delta,
)
from .diagram import (
    Diagram,
    check_symmetry,
    disjoint_cycle_pairs,
    enumerate_cycles,
    extract_component_pd,
    parse_diagram,
    serialize_diagram,
    underlying_graph,
    validate,
)
from .invariants import (
    ComponentPD,
    LaurentPoly,
    UnknotVerdict,
    classify_knot,
    jones_normalized,
    kauffman_bracket,
    linking_number,
    writhe,
)

__all__ = [
    "Graph", "MoveScript", "apply_script", "complete_graph", "construct_g7",
    "contract_edge", "delete_edge", "delta_y", "is_isomorphic",
    "verify_automorphism", "y_delta",
    "Diagram", "check_symmetry", "disjoint_cycle_pairs", "enumerate_cycles",
    "extract_component_pd", "parse_diagram", "serialize_diagram",
    "underlying_graph", "validate",
    "ComponentPD", "LaurentPoly", "UnknotVerdict", "classify_knot",
    "jones_normalized", "kauffman_bracket", "linking_number", "writhe",
]
