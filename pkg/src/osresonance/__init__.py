"""Exact resonance computations for line arrangements."""

from .errors import DomainError, InputError, SearchBudgetExceeded, VerificationError
from .incidence import Arrangement, arrangement_from_incidence, flats_from_rational_lines, generate
from .qforms import FlatCollection, BlockMatrix, build_J, build_Q, matrix_Q, nullspace_star
from .vinberg import Kind, classify_block, classify_collection
from .resonance import (
    ResonanceComponent,
    cocycle_space_direct,
    cocycle_space_q,
    component_of_weight,
    enumerate_all_components,
    enumerate_components,
    h1_dimension,
    support_flats,
)
from .labelings import LabeledGraph, enumerate_affine_labelings
from .realizer import Realization, realize, realization_from_latin_squares
from .pencils import blowup_intersection_matrix, euler_feasible_k, f_bound

__version__ = "0.1.0"
