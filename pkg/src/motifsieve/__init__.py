"""Graph motif problems by constrained multilinear monomial sieving over GF(2^b)."""
from .errors import GuardError, InstanceError, MotifError, ParameterError, ParseError
from .gf2 import FieldParams, is_irreducible, minimal_bits, params_for_k, smallest_irreducible
from .graph import (
    CostSpec,
    HostGraph,
    MotifInstance,
    make_instance,
    parse_instance,
    preprocess,
    random_connected_graph,
    random_instance,
    relabel,
    serialize_instance,
)
from .motif import (
    BivariateCostPoly,
    Decision,
    EditParameters,
    decide_closest_motif,
    decide_exact_motif,
    decide_max_motif,
    decide_min_add,
    decide_min_substitute,
    min_edit_cost,
    subsumption_detects,
)
from .oracle import (
    brute_decide_closest,
    brute_decide_max_motif,
    edit_distance,
    edit_distance_bfs,
    enumerate_connected_k_subsets,
    symbolic_sieve_check,
    witness_predicate,
)
from .reductions import (
    SetCoverInstance,
    brute_set_cover,
    random_set_cover,
    reduce_two_colors,
    reduce_unique_colors,
)
from .sieve import ShadeTable, sieve_sum, walk_sieve
from .walkgen import eval_walk_poly, eval_walk_poly_fast

__version__ = "0.1.0"
