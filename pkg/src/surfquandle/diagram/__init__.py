from .build import add_edge, circle, disjoint_union, from_braid, handcuff, theta
from .canon import canonical_code, canonicalize, isomorphic
from .model import (
    LEFT,
    RIGHT,
    Arc,
    Component,
    ComponentStructure,
    Crossing,
    Diagram,
    DiagramError,
    End,
    Region,
    Segment,
    Vertex,
    compute_regions,
    genus,
    parse_diagram,
    restrict,
    serialize_diagram,
    split_components,
)
from .moves import MOVES, MoveError, Site, apply_move, apply_move_with_inverse, move_sites, stabilize

__all__ = [
    "LEFT", "RIGHT", "Arc", "Component", "ComponentStructure", "Crossing", "Diagram", "DiagramError",
    "End", "Region", "Segment", "Vertex", "compute_regions", "genus", "parse_diagram", "restrict",
    "serialize_diagram", "split_components", "add_edge", "circle", "disjoint_union", "from_braid",
    "handcuff", "theta", "canonical_code", "canonicalize", "isomorphic", "MOVES", "MoveError", "Site",
    "apply_move", "apply_move_with_inverse", "move_sites", "stabilize",
]
