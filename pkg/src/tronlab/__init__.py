"""Exact analysis workbench for the weighted Tron game on trees.

Two players grow vertex-disjoint paths on a weighted graph; Bob tries to
end up heavier than Alice. This package computes exact game values with
two cross-checking solver backends, reconstructs the crossing-edge
decomposition behind the one-fifth guarantee, checks every strategy
certificate with exact rational arithmetic, fuzzes the theorem at desk
scale, and serves interactive human-vs-engine play.
"""

__version__ = "0.1.0"

from .certificates import CertificateReport, certify, format_certificate
from .decomposition import (
    Decomposition,
    SideDecomposition,
    bob_reply_table,
    crossing_edge,
    decompose,
    locate_e,
)
from .engine import (
    GameState,
    IllegalMoveError,
    Move,
    Outcome,
    Phase,
    Player,
    apply_move,
    initial_state,
    legal_moves,
    outcome,
    replay_transcript,
)
from .graphs import (
    Graph,
    Instance,
    TronParseError,
    VertexPath,
    heaviest_path,
    heaviest_path_from,
    load_instance,
    parse_instance,
    save_instance,
    serialize_instance,
)
from .lab import (
    GeneratorConfig,
    SearchConfig,
    SearchResult,
    TheoremViolation,
    conjecture_scan,
    extremal_search,
    fuzz_theorem,
    generate,
    run_theorem_corpus,
    theorem_corpus,
)
from .policies import (
    AvoidBobPolicy,
    LongestPathBobPolicy,
    OptimalPolicy,
    Policy,
    Transcript,
    applicable,
    avoid_bob,
    longest_path_bob,
    optimal_policy,
    simulate,
)
from .solver import (
    GENERAL,
    TREEPATH,
    CrossCheck,
    SolveRecord,
    SolverBudgetError,
    ValueReport,
    best_move,
    cross_check,
    game_value,
    solve_from,
)
