"""Frame matroids of biased graphs, their binarity forms, and the graphs whose
cycle matroids they equal."""

from .biased import (
    BiasedGraph,
    SignedGraph,
    Switching,
    all_positive_switching,
    blocking_vertices,
    from_signed,
    has_two_vertex_disjoint_unbalanced_cycles,
    is_balanced,
    signed_representability,
    switch,
    validate_theta_property,
)
from .budget import Budget
from .classify import BudgetExceeded, NotGraphic, find_graphic_witness, zaslavsky_form
from .errors import BiasmatError, BudgetError, InputError, InternalError, ParseError, ValidationError
from .families import (
    ConsecutiveTwistingParts,
    CurlingSpec,
    FatThetaParts,
    FourTwistingParts,
    PinchSpec,
    Witness,
    curling_decompose,
    even_twisting_condition,
    is_simple,
    make_4_twisting,
    make_balanced,
    make_consecutive_twisting,
    make_curling,
    make_fat_theta,
    make_pinch,
    pinch_split,
)
from .graph_core import MultiGraph, block_decomposition, enumerate_cycles, enumerate_thetas
from .matroid import (
    Matroid,
    cycle_matroid,
    frame_matroid,
    is_binary,
    is_connected,
    is_isomorphic,
    lift_matroid,
    minor,
)
from .whitney import FlipSpec, is_2_isomorphic, whitney_flip

__version__ = "0.1.0"
