"""Combinatorics of Ekedahl-Oort and Newton strata of principally polarised abelian varieties."""
from .classifier import DEFAULT_LEDGER, FactsLedger, Status, classify, explain
from .eo_seq import (
    ElementarySeq,
    a_number,
    enumerate_elementary,
    eo_dimension,
    p_rank,
    parse_elementary,
    stretch,
)
from .errors import *  # noqa: F401,F403
from .final_type import (
    FinalType,
    base_type,
    elementary_of,
    es_decompose,
    es_sum,
    final_type_of,
    ft_sum,
    is_sum_indecomposable,
    minimal_sequence,
    nu_values,
    pi_map,
)
from .newton import NewtonPolygon, enumerate_symmetric_np, np_first_slope, np_p_rank, parse_np
from .slope import first_newton_slope, slope_trace
from .weyl import SymplecticPerm, bc_below, closure_below, closure_poset, poset_to_dot, weyl_element

__version__ = "0.1.0"
