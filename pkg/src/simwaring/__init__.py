"""Simultaneous Waring ranks and explicit power-sum decompositions for monomials."""
from .errors import CapacityError, DimensionMismatch, HypothesisError, ParseError, SimWaringError
from .monomial import Monomial, gcd, lcm, min_positions, parse_monomial, render, waring_rank
from .ideal import (
    MonomialIdeal,
    StandardMonomialSet,
    apolar_ideal,
    colon,
    contains,
    hilbert_function,
    ideal_sum,
    intersect,
    is_artinian,
    standard_monomial_count,
)
from .simrank import (
    BaseVariable,
    Collection,
    Justification,
    RankVerdict,
    alternating_sum,
    binomial_upper_bound,
    bounds,
    check_11_free,
    check_free,
    derivative_collection,
    derivative_collection_rank,
    find_base_variable,
    free_collection_rank,
    generic_ternary_pair_rank,
    high_rank_pair,
    high_rank_pair_formula,
    lower_bound,
    pair_rank_different_support,
    pair_rank_same_support,
    simultaneous_rank,
    upper_bound_lcm,
)

__version__ = "0.1.0"
