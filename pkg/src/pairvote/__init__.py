"""Sequential pairwise-voting agenda control: strategies, oracles, advisor."""

from .relations import (
    GeneralWill,
    InvalidRelationError,
    ProtoRanking,
    ProtocolViolationError,
    Ranking,
    Relation,
    Tournament,
    adjacent_pairs,
    alignment_subset_check,
    all_general_wills,
    all_rankings,
    all_tournaments,
    chain_ranking,
    has_cycle,
    is_more_aligned,
    order_interval,
    record_vote,
    relabel,
    transitive_closure,
)
from .feasibility import (
    EnumerationBoundError,
    FeasibleSet,
    chair_benefits,
    enumerate_feasible,
    is_feasible,
    is_unimprovable,
    is_w_efficient,
    unimprovable_fraction,
)
from .protocol import History, Strategy, TerminalHistoryError, play
from .strategies import (
    greedy_error_free,
    insertion_sort,
    misses_opportunity,
    non_error_pairs,
    outcome_equivalent,
    recursive_amendment,
    takes_risk,
)

__version__ = "0.1.0"
