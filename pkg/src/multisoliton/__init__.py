"""Multi-soliton automata: graph semantics, burst languages, determinism."""

from .automaton import (
    DeterminismReport,
    SolitonAutomaton,
    Witness,
    analyze,
    build,
    degree_of_nondeterminism,
    is_deterministic,
    is_perfectly_deterministic,
    is_strongly_deterministic,
    run_burst_sequence,
    states_fixpoint,
)
from .bursts import (
    Burst,
    BurstBindError,
    BurstParseError,
    PositionMap,
    bind_burst,
    burst_length,
    burst_universe,
    initial_position_map,
    is_final,
    parse_burst,
    parse_burst_set,
)
from .classify import (
    Bounds,
    ClassifyReport,
    classify_report,
    graph_determinism_bounded,
    impervious_paths_bounded,
    is_chestnut,
    is_tree,
    used_edges_bounded,
)
from .engine import (
    Configuration,
    ExtendedConfiguration,
    SolitonPath,
    Trail,
    enumerate_perfect_trails,
    potential_successor_maps,
    result,
    soliton_path,
    start_configuration,
    successor_equivalent,
    successor_set,
    trail_multiplicity,
    trail_successors,
    used_edges,
)
from .families import gen_chestnut, gen_gg, gen_tree, search_non_perfect
from .graphs import (
    GraphParseError,
    SolitonGraph,
    ValidationReport,
    WeightedGraph,
    export_dot,
    exterior_nodes,
    format_graph,
    parse_graph,
    state_key,
    validate,
)

__version__ = "0.1.0"
