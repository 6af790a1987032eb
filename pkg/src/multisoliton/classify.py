"""Structural classification and bounded behavioural checks.

Tree and chestnut recognition are purely structural.  The behavioural checks
(used edges, impervious-path candidates, graph-level determinism) quantify
over every burst within explicit length and gap bounds; their verdicts are
exact for that bounded burst universe and are always reported together with
the bounds used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from . import engine
from .automaton import Witness
from .bursts import Burst, burst_universe
from .graphs import Edge, NodeId, SolitonGraph, WeightedGraph, edge_key

IMPERVIOUSNESS_CAVEAT = (
    "bounded check: edges unused within these burst bounds may still be used "
    "by longer or more widely spaced bursts"
)


@dataclass(frozen=True)
class Bounds:
    """Finite burst universe: lengths up to max_burst_length, gaps up to max_gap."""

    max_burst_length: int
    max_gap: int

    def __post_init__(self):
        if self.max_burst_length < 1:
            raise ValueError("max_burst_length must be at least 1")
        if self.max_gap < 0:
            raise ValueError("max_gap must be non-negative")


@dataclass(frozen=True)
class ChestnutEvidence:
    """Why a graph is or is not a chestnut."""

    cycle: tuple[NodeId, ...] = ()
    entry_points: tuple[NodeId, ...] = ()
    entry_distances: tuple[tuple[NodeId, NodeId, int, int], ...] = ()
    failures: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "entry_points": list(self.entry_points),
            "entry_distances": [list(t) for t in self.entry_distances],
            "failures": list(self.failures),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class UsedEdgeReport:
    used: frozenset[Edge]
    unused: frozenset[Edge]
    complete: bool
    bounds: Bounds


@dataclass(frozen=True)
class ImperviousReport:
    paths: tuple[tuple[NodeId, ...], ...]
    complete: bool
    bounds: Bounds
    caveat: str = IMPERVIOUSNESS_CAVEAT


@dataclass(frozen=True)
class ClassifyReport:
    is_tree: bool
    is_chestnut: bool
    chestnut_evidence: ChestnutEvidence
    indecomposable_bounded: tuple[bool, Bounds]
    unused_edges_bounded: frozenset[Edge]
    impervious_paths: tuple[tuple[NodeId, ...], ...]
    complete: bool
    caveat: str = IMPERVIOUSNESS_CAVEAT

    def to_dict(self) -> dict:
        ok, bounds = self.indecomposable_bounded
        return {
            "is_tree": self.is_tree,
            "is_chestnut": self.is_chestnut,
            "chestnut_evidence": self.chestnut_evidence.to_dict(),
            "indecomposable_bounded": ok,
            "bounds": {
                "max_burst_length": bounds.max_burst_length,
                "max_gap": bounds.max_gap,
            },
            "unused_edges_bounded": sorted(f"{u}-{v}" for u, v in self.unused_edges_bounded),
            "impervious_paths": [list(p) for p in self.impervious_paths],
            "complete": self.complete,
            "caveat": self.caveat,
        }


def is_tree(g: SolitonGraph) -> bool:
    """Connected and acyclic."""
    return len(g.components()) == 1 and len(g.edges) == len(g.nodes) - 1


def _unique_cycle(g: WeightedGraph) -> tuple[NodeId, ...] | None:
    """The node cycle of a connected unicyclic graph, in traversal order."""
    if len(g.components()) != 1 or len(g.edges) != len(g.nodes):
        return None
    # peel leaves until only the cycle remains
    degree = {n: g.degree(n) for n in g.nodes}
    queue = [n for n in g.nodes if degree[n] == 1]
    removed = set()
    while queue:
        n = queue.pop()
        removed.add(n)
        for nb in g.neighbors(n):
            if nb in removed:
                continue
            degree[nb] -= 1
            if degree[nb] == 1:
                queue.append(nb)
    cycle_nodes = {n for n in g.nodes if n not in removed}
    start = min(cycle_nodes)
    first = min(nb for nb in g.neighbors(start) if nb in cycle_nodes)
    order = [start, first]
    while True:
        cur, prev = order[-1], order[-2]
        nxt = next(nb for nb in g.neighbors(cur) if nb in cycle_nodes and nb != prev)
        if nxt == start:
            break
        order.append(nxt)
    return tuple(order)


def is_chestnut(g: SolitonGraph) -> tuple[bool, ChestnutEvidence]:
    """A single even cycle with hanging trees whose geometry keeps every
    entry point and every meeting point at even distances."""
    failures: list[str] = []
    notes: list[str] = []
    cycle = _unique_cycle(g)
    if cycle is None:
        return False, ChestnutEvidence(failures=("not a connected unicyclic graph",))
    if len(cycle) % 2:
        return False, ChestnutEvidence(
            cycle=cycle, failures=(f"cycle length {len(cycle)} is odd",)
        )
    cycle_set = set(cycle)
    position = {n: i for i, n in enumerate(cycle)}
    entries = tuple(n for n in cycle if g.degree(n) == 3)
    length = len(cycle)

    distances = []
    for i, a in enumerate(entries):
        for b in entries[i + 1 :]:
            arc = abs(position[a] - position[b])
            arc2 = length - arc
            distances.append((a, b, min(arc, arc2), max(arc, arc2)))
            if arc % 2:
                failures.append(f"entry points {a} and {b} at odd cycle distance {arc}")

    # walk each hanging tree; a degree-3 node off the cycle is a meeting
    # point of entry paths and must sit at even distance from its entry
    for entry in entries:
        stack = [(nb, 1) for nb in g.neighbors(entry) if nb not in cycle_set]
        seen = {entry}
        while stack:
            node, dist = stack.pop()
            seen.add(node)
            if g.degree(node) == 3:
                if dist % 2:
                    failures.append(
                        f"paths meet at {node}, odd distance {dist} from entry {entry}"
                    )
                else:
                    notes.append(f"paths meet at {node}, distance {dist} from entry {entry}")
            for nb in g.neighbors(node):
                if nb not in seen:
                    stack.append((nb, dist + 1))

    # weight pattern expected of a chestnut, reported but not decided on
    for entry in entries:
        for nb in g.neighbors(entry):
            if nb not in cycle_set and g.weight(entry, nb) != 1:
                notes.append(f"entry edge {nb}-{entry} has weight 2, not the usual 1")

    ok = not failures
    return ok, ChestnutEvidence(
        cycle=cycle,
        entry_points=entries,
        entry_distances=tuple(distances),
        failures=tuple(failures),
        notes=tuple(notes),
    )


@dataclass
class _BoundedSweep:
    """States and per-(state, burst) explorations for a bounded burst universe.

    The frontier is expanded with the end graphs of each exploration, which
    coincide with the burst results; explorations are kept so that several
    analyses can share the memoized successor relation.
    """

    graph: SolitonGraph
    bounds: Bounds
    alphabet: list[Burst] = field(init=False)
    states: dict[str, SolitonGraph] = field(init=False)
    explorers: dict[tuple[str, Burst], engine.TrailExplorer] = field(init=False)
    result_keys: dict[tuple[str, Burst], frozenset[str]] = field(init=False)
    complete: bool = True

    def __post_init__(self):
        self.alphabet = burst_universe(
            self.graph, self.bounds.max_burst_length, self.bounds.max_gap
        )
        self.states = {self.graph.state_key(): self.graph}
        self.explorers = {}
        self.result_keys = {}
        frontier = [self.graph]
        try:
            while frontier:
                nxt = []
                for state in frontier:
                    skey = state.state_key()
                    for b in self.alphabet:
                        ex = engine.explorer(state, b)
                        self.explorers[skey, b] = ex
                        keys = set()
                        for mask in ex.final_masks():
                            end = SolitonGraph.from_weighted(ex._decode_graph(mask))
                            ekey = end.state_key()
                            keys.add(ekey)
                            if ekey not in self.states:
                                self.states[ekey] = end
                                nxt.append(end)
                        self.result_keys[skey, b] = frozenset(keys)
                frontier = nxt
        except engine.ResourceCapError:
            self.complete = False

    def pairs(self):
        for skey in sorted(self.states):
            for b in self.alphabet:
                if (skey, b) in self.result_keys:
                    yield skey, b


def used_edges_bounded(g: SolitonGraph, bounds: Bounds) -> UsedEdgeReport:
    """Edges used by any legal trail, over every reachable state and every
    burst within the bounds.  Partial trails count: an edge is used as soon
    as some soliton can ever cross it."""
    sweep = _BoundedSweep(g, bounds)
    mask = 0
    for key in sweep.pairs():
        try:
            mask |= sweep.explorers[key].used_edge_mask()
        except engine.ResourceCapError:
            sweep.complete = False
    used = frozenset(e for i, e in enumerate(g.edges) if mask >> i & 1)
    return UsedEdgeReport(
        used=used,
        unused=frozenset(g.edges) - used,
        complete=sweep.complete,
        bounds=bounds,
    )


def _maximal_paths(g: WeightedGraph, edges: frozenset[Edge]) -> tuple[tuple[NodeId, ...], ...]:
    """Split an edge set into maximal paths, breaking at branch points."""
    if not edges:
        return ()
    adj: dict[NodeId, list[NodeId]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for lst in adj.values():
        lst.sort()
    endpoints = sorted(n for n, ns in adj.items() if len(ns) != 2)
    paths = []
    walked: set[Edge] = set()
    for start in endpoints:
        for first in adj[start]:
            if edge_key(start, first) in walked:
                continue
            path = [start, first]
            walked.add(edge_key(start, first))
            while len(adj[path[-1]]) == 2:
                a, b = adj[path[-1]]
                nxt = b if a == path[-2] else a
                if edge_key(path[-1], nxt) in walked:
                    break
                walked.add(edge_key(path[-1], nxt))
                path.append(nxt)
            paths.append(tuple(path))
    # remaining edges form pure cycles; walk each from its smallest node
    remaining = sorted(e for e in edges if e not in walked)
    while remaining:
        start = remaining[0][0]
        path = [start]
        prev = None
        while True:
            nxt = next(
                nb
                for nb in adj[path[-1]]
                if nb != prev and edge_key(path[-1], nb) not in walked
            )
            walked.add(edge_key(path[-1], nxt))
            prev = path[-1]
            path.append(nxt)
            if nxt == start:
                break
        paths.append(tuple(path))
        remaining = sorted(e for e in edges if e not in walked)
    return tuple(sorted(paths))


def impervious_paths_bounded(g: SolitonGraph, bounds: Bounds) -> ImperviousReport:
    """Maximal paths made of edges unused within the bounds.

    An over-approximation of true imperviousness: only wider burst universes
    could rule the remaining edges in.
    """
    scan = used_edges_bounded(g, bounds)
    return ImperviousReport(
        paths=_maximal_paths(g, scan.unused),
        complete=scan.complete,
        bounds=bounds,
    )


DeterminismKind = Literal["det", "strong", "perfect"]


def graph_determinism_bounded(
    g: SolitonGraph, kind: DeterminismKind, bounds: Bounds
) -> tuple[bool, tuple[Witness, ...]]:
    """Decide the chosen determinism notion for the automaton induced by the
    full burst universe within the bounds; exact for that universe."""
    if kind not in ("det", "strong", "perfect"):
        raise ValueError(f"unknown determinism kind {kind!r}")
    sweep = _BoundedSweep(g, bounds)
    if not sweep.complete:
        # a verdict over a truncated universe would be unsound
        raise engine.ResourceCapError(engine.max_configurations())
    for skey, b in sweep.pairs():
        if kind == "det":
            outcome = sweep.result_keys[skey, b]
            size = len(outcome) if outcome else 1  # empty result loops back
            if size != 1:
                evidence = f"|Result| = {size}: {', '.join(sorted(outcome))}"
                return False, (Witness(skey, b.text(), "nondeterministic-result", evidence),)
        elif kind == "strong":
            count = sweep.explorers[skey, b].multiplicity()
            if count not in (0, 1):
                shown = "infinite" if count == math.inf else str(count)
                return False, (
                    Witness(skey, b.text(), "multiple-trails", f"trail multiplicity = {shown}"),
                )
        else:
            found = sweep.explorers[skey, b].perfect_trail_paths(cap=2)
            if len(found) > 1:
                return False, (
                    Witness(skey, b.text(), "multiple-perfect-trails", "at least 2 perfect total trails"),
                )
    return True, ()


def classify_report(g: SolitonGraph, bounds: Bounds) -> ClassifyReport:
    tree = is_tree(g)
    chestnut, evidence = is_chestnut(g)
    scan = used_edges_bounded(g, bounds)
    paths = _maximal_paths(g, scan.unused)
    return ClassifyReport(
        is_tree=tree,
        is_chestnut=chestnut,
        chestnut_evidence=evidence,
        indecomposable_bounded=(not paths, bounds),
        unused_edges_bounded=scan.unused,
        impervious_paths=paths,
        complete=scan.complete,
    )
