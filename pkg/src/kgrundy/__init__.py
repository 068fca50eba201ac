"""Exact k-Grundy domination numbers, k-forcing and constructive witnesses."""

from .constructions import (
    ClosedForm,
    InapplicableError,
    closed_form_value,
    cycle_witness,
    degree_upper_bound,
    gadget_L2_witness,
    grid_witness,
    hypercube_L_witness,
    standard_pattern,
)
from .forcing import ForcingResult, ForcingTrace, closure, k_forcing_number, z_sequence_from_forcing
from .graph import Family, FamilySpec, Graph, GraphError, cartesian_product, generate, min_degree
from .graphio import GraphFormat, GraphParseError, parse, serialize
from .sequences import (
    FootprintState,
    GrundySequence,
    TieRule,
    Variant,
    append,
    greedy_extend,
    legal_witnesses,
    new_state,
    verify,
)
from .solver import Bounds, SolveResult, SolverConfig, grundy_bounds, grundy_number

__version__ = "0.1.0"
