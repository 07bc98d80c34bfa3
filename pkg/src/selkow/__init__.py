"""Caro-Wei and Selkow lower bounds on the independence number, the random
two-phase construction behind them, and an exact small-graph oracle."""

from .bounds import BoundReport, caro_wei, selkow_bound, selkow_correction, selkow_excess
from .graph import (
    CounterexampleSpec,
    Graph,
    GraphError,
    GraphParseError,
    counterexample_graph,
    counterexample_spec,
    from_edge_list,
    generate,
    induced_subgraph,
    parse_dimacs,
    parse_edge_list,
)
from .oracle import (
    EnumerationLimitError,
    ExactStats,
    brute_force_alpha,
    enumerate_exact,
    refutation_check,
    verify_proof_chain,
)
from .sampler import (
    Ordering,
    TwoPhaseResult,
    las_vegas_search,
    min_degree_greedy,
    monte_carlo,
    phase_one,
    phase_two,
    residual,
    sample_ordering,
    two_phase,
)

__version__ = "0.1.0"
