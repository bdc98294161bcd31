"""direkit: exact toolkit for diverse + representative committee selection.

Model constrained multiwinner elections, solve the winner-determination
problem exactly at desk scale, audit committees against envy-freeness
criteria, and generate vertex-cover gadget instances as executable tests.
"""

from .constraints import (
    FeasibilityReport,
    GroupShortfall,
    PopulationShortfall,
    check_diversity,
    check_representation,
    is_dire,
)
from .core import (
    DireInstance,
    Election,
    Group,
    GroupSystem,
    Population,
    PopulationSystem,
    ScoringRule,
    ValidationReport,
    Voter,
    ordered_committee,
    population_winning_committee,
    position_of,
    priority_index,
    resolved_population_committees,
    validate,
)
from .errors import (
    CapExceededError,
    CommitteeSizeError,
    InfeasibleError,
    ParseError,
)
from .fairness import (
    PopulationUtility,
    borda_within_wp,
    fec_envy,
    is_fec,
    is_fec_up_to,
    is_uec,
    is_uec_up_to,
    is_wec,
    is_wec_up_to,
    max_fec_envy,
    optimal_fair_dire,
    population_utilities,
    uec_spread,
    utility,
    wec_spread,
    weighted_utility,
    wp_ranking,
)
from .fileio import (
    load_election,
    load_graph,
    parse_election,
    parse_graph,
    save_election,
    save_graph,
    save_reduction_map,
    write_election,
    write_graph,
    write_reduction_map,
)
from .reduction import (
    EquivalenceReport,
    Graph,
    ReductionInstance,
    gen_3regular,
    is_three_regular,
    is_vertex_cover,
    min_vertex_cover_size,
    reduce_even,
    reduce_odd,
    transform_add_complement_attribute,
    transform_add_top,
    vc_brute,
    verify_equivalence,
    witness_committee,
)
from .scoring import (
    all_candidate_scores,
    candidate_score,
    committee_score,
    k_borda,
)
from .solver import (
    Propagation,
    SolveResult,
    enumerate_dire,
    propagate,
    solve,
    solve_brute,
)

__version__ = "0.1.0"
