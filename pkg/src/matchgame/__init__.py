"""Exact nucleolus computation for weighted cooperative matching games.

The solver runs entirely over arbitrary-precision rationals: leastcore
via matching separation, a compact description of the leastcore built
from a universal allocation and matching-polytope duals, and the
iterative narrowing scheme that ends at the nucleolus.  An exhaustive
reference implementation certifies every step on small instances.
"""

from ._rational import Q, rat, rat_str
from .game import (
    Allocation,
    GameFormatError,
    GameInstance,
    Matching,
    coalition_excess,
    edge_excess,
    excess,
    load_game,
    make_game,
    matched_nodes,
    save_game,
    sym,
)
from .leastcore import (
    Decomposition,
    LeastcoreResult,
    build_decomposition,
    build_face_description,
    core_is_empty,
    solve_leastcore,
    universal_allocation,
    universal_matchings,
)
from .maschler import (
    MaschlerState,
    NucleolusResult,
    advance_round,
    compact_p1,
    nucleolus,
    run_compact,
    run_nonempty_core,
)
from .matching import (
    EnumerationLimitError,
    MatchingDual,
    MatchingResult,
    coalition_value,
    enumerate_matchings,
    game_value,
    max_weight_matching,
    max_weight_matching_exposing,
    max_weight_matching_forcing_edge,
    optimal_duals,
    uncross,
)
from .oracle import (
    ThetaVector,
    brute_nucleolus,
    coalition_values_table,
    prekernel_check,
    random_game,
    theta_compare,
    theta_vector,
    verify_cardinality_lemma,
    verify_restricted_cardinality_polytope,
)

__version__ = "1.0.0"

__all__ = [
    "Allocation",
    "Decomposition",
    "EnumerationLimitError",
    "GameFormatError",
    "GameInstance",
    "LeastcoreResult",
    "MaschlerState",
    "Matching",
    "MatchingDual",
    "MatchingResult",
    "NucleolusResult",
    "Q",
    "ThetaVector",
    "advance_round",
    "brute_nucleolus",
    "build_decomposition",
    "build_face_description",
    "coalition_excess",
    "coalition_value",
    "coalition_values_table",
    "compact_p1",
    "core_is_empty",
    "edge_excess",
    "enumerate_matchings",
    "excess",
    "game_value",
    "load_game",
    "make_game",
    "matched_nodes",
    "max_weight_matching",
    "max_weight_matching_exposing",
    "max_weight_matching_forcing_edge",
    "nucleolus",
    "optimal_duals",
    "prekernel_check",
    "random_game",
    "rat",
    "rat_str",
    "run_compact",
    "run_nonempty_core",
    "save_game",
    "solve_leastcore",
    "sym",
    "theta_compare",
    "theta_vector",
    "uncross",
    "universal_allocation",
    "universal_matchings",
    "verify_cardinality_lemma",
    "verify_restricted_cardinality_polytope",
]
