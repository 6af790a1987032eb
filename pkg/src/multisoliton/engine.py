"""Operational semantics of soliton movement.

A configuration pairs a weight assignment with a position map; a trail is a
sequence of configurations obeying the movement rules: waiting solitons count
down and enter at their entry port, solitons inside the graph move to an
adjacent node every step, alternate bond weights at interior nodes, never
turn around on the spot, and leave the graph exactly when they reach their
exit port over an edge.  Each traversed edge toggles between single and
double bond.  Legality additionally forbids two solitons departing one node
toward the same target, swapping across an edge, or entering one port
simultaneously.

The exploration kernel encodes a configuration as a weight bitmask plus an
integer position tuple and memoizes successor sets, so the same object can
serve trail enumeration, multiplicity counting and burst results.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .bursts import (
    Burst,
    PositionMap,
    bind_burst,
    initial_position_map,
    is_final,
)
from .graphs import Edge, NodeId, SolitonGraph, WeightedGraph, edge_key

MAX_CONFIGS_ENV = "MULTISOLITON_MAX_CONFIGS"
DEFAULT_MAX_CONFIGS = 10**6

#: Encoded extended configuration: (weight bitmask, positions, previous positions)
EncodedEC = tuple


class ResourceCapError(RuntimeError):
    """Raised when an exploration exceeds the extended-configuration cap."""

    def __init__(self, cap: int):
        super().__init__(f"exploration exceeded {cap} extended configurations")
        self.cap = cap


def max_configurations() -> int:
    raw = os.environ.get(MAX_CONFIGS_ENV)
    if raw is None:
        return DEFAULT_MAX_CONFIGS
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{MAX_CONFIGS_ENV} must be positive")
    return value


@dataclass(frozen=True)
class Configuration:
    """Current weights plus current soliton positions."""

    graph: WeightedGraph
    positions: PositionMap


@dataclass(frozen=True)
class ExtendedConfiguration:
    """A configuration together with the previous position map.

    The previous map is ``None`` only at the start of a trail.  One step of
    lookback suffices to continue a trail: the only older fact the movement
    rules consult is the pre-traversal weight of the edge a soliton just
    crossed, and that is the toggle of its current weight because no two
    solitons may cross one edge in the same step.
    """

    current: Configuration
    previous_positions: PositionMap | None = None


@dataclass(frozen=True)
class SolitonPath:
    """Node sequence visited by one soliton (1-based index) within a trail."""

    soliton: int
    nodes: tuple[NodeId, ...]

    @property
    def entered(self) -> bool:
        return bool(self.nodes)


@dataclass(frozen=True)
class Trail:
    """A legal configuration sequence; total when every soliton has left."""

    configurations: tuple[Configuration, ...]
    perfect: bool | None = None
    legal: bool = True

    @property
    def total(self) -> bool:
        return is_final(self.configurations[-1].positions)

    def end_graph(self) -> WeightedGraph:
        return self.configurations[-1].graph


class TrailExplorer:
    """Shared exploration state for one (graph, burst) pair.

    Successor computation is memoized, so result extraction, multiplicity
    counting and perfect-trail search amortize each other when run on the
    same explorer.
    """

    def __init__(self, graph: WeightedGraph, burst: Burst, cap: int | None = None):
        bind_burst(burst, graph)
        self.base = graph
        self.burst = burst
        self.cap = max_configurations() if cap is None else cap

        names = graph.nodes
        self.V = len(names)
        self.DEP = self.V
        index = {n: i for i, n in enumerate(names)}
        self._index = index
        self._names = names

        eindex: dict[tuple[int, int], int] = {}
        adj: list[list[tuple[int, int]]] = [[] for _ in names]
        for e, (u, v) in enumerate(graph.edges):
            ui, vi = index[u], index[v]
            eindex[ui, vi] = e
            eindex[vi, ui] = e
            adj[ui].append((vi, e))
            adj[vi].append((ui, e))
        for lst in adj:
            lst.sort()
        self._adj = [tuple(lst) for lst in adj]
        self._eindex = eindex

        m = burst.length
        self.m = m
        self._entry = tuple(index[p[0]] for p in burst.pairs)
        self._exit = tuple(index[p[1]] for p in burst.pairs)
        self._pairs = tuple((i, j) for i in range(m) for j in range(i + 1, m))

        w0 = 0
        for e, w in enumerate(graph.weights):
            if w == 2:
                w0 |= 1 << e
        self.w0 = w0
        self.pm0 = self._encode_pm(initial_position_map(burst))
        self.start = (w0, self.pm0, None)

        self._succ: dict[EncodedEC, tuple[EncodedEC, ...]] = {}
        self._reachable: dict[EncodedEC, tuple[EncodedEC, ...]] | None = None
        self._live: tuple[set, list] | None = None
        self.pruned_imperfect = False

    # -- encoding ----------------------------------------------------------

    def _encode_pm(self, pm: PositionMap) -> tuple[int, ...]:
        dep = self.DEP
        out = []
        for p in pm:
            if isinstance(p, int):
                out.append(dep + p)
            else:
                out.append(self._index[p])
        return tuple(out)

    def _decode_pm(self, pm: tuple[int, ...]) -> PositionMap:
        dep = self.DEP
        return tuple(self._names[p] if p < dep else p - dep for p in pm)

    def _decode_graph(self, wmask: int) -> WeightedGraph:
        weights = tuple(
            2 if wmask >> e & 1 else 1 for e in range(len(self.base.edges))
        )
        return self.base.with_weights(weights)

    def encode(self, ec: ExtendedConfiguration) -> EncodedEC:
        g = ec.current.graph
        if (g.nodes, g.edges) != (self.base.nodes, self.base.edges):
            raise ValueError("configuration does not share this explorer's structure")
        wmask = 0
        for e, w in enumerate(g.weights):
            if w == 2:
                wmask |= 1 << e
        prev = ec.previous_positions
        return (
            wmask,
            self._encode_pm(ec.current.positions),
            None if prev is None else self._encode_pm(prev),
        )

    def decode(self, ec: EncodedEC) -> ExtendedConfiguration:
        wmask, pm, prev = ec
        return ExtendedConfiguration(
            Configuration(self._decode_graph(wmask), self._decode_pm(pm)),
            None if prev is None else self._decode_pm(prev),
        )

    def decode_trail(self, path: Iterable[EncodedEC], perfect=None) -> Trail:
        configs = tuple(
            Configuration(self._decode_graph(w), self._decode_pm(pm))
            for w, pm, _ in path
        )
        return Trail(configs, perfect=perfect)

    def final(self, pm: tuple[int, ...]) -> bool:
        dep = self.DEP
        return all(p == dep for p in pm)

    # -- successor relation -------------------------------------------------

    def potential_maps(self, ec: EncodedEC) -> list[tuple[int, ...]]:
        """Per-soliton moves before any trail conditions are applied:
        countdowns tick, entrants appear at their entry port, solitons at a
        node may step to any neighbor (plus departure when at their exit)."""
        _, pm, _ = ec
        dep = self.DEP
        per = []
        for i in range(self.m):
            p = pm[i]
            if p == dep:
                per.append((dep,))
            elif p > dep:
                per.append((p - 1,) if p > dep + 1 else (self._entry[i],))
            else:
                opts = [nb for nb, _ in self._adj[p]]
                if p == self._exit[i]:
                    opts.append(dep)
                per.append(tuple(opts))
        return [tuple(c) for c in product(*per)]

    def successors(self, ec: EncodedEC) -> tuple[EncodedEC, ...]:
        cached = self._succ.get(ec)
        if cached is not None:
            return cached
        wmask, pm, prev = ec
        dep = self.DEP
        adj = self._adj
        per: list[tuple[tuple[int, int], ...]] = []
        for i in range(self.m):
            p = pm[i]
            if p == dep:
                per.append(((dep, -1),))
                continue
            if p > dep:
                per.append(((p - 1, -1),) if p > dep + 1 else ((self._entry[i], -1),))
                continue
            pv = prev[i] if prev is not None else None
            if pv is not None and pv < dep:
                # arrived here over an edge last step
                if p == self._exit[i] and len(adj[p]) == 1:
                    per.append(((dep, -1),))  # must leave through its exit port
                    continue
                in_edge = self._eindex[pv, p]
                # pre-traversal weight of the inbound edge is the toggle of its
                # current weight (the soliton itself flipped it last step)
                in_old = 1 if wmask >> in_edge & 1 else 2
                opts = []
                for nb, e in adj[p]:
                    if nb == pv:
                        continue  # no turning straight around
                    if len(adj[p]) > 1 and (2 if wmask >> e & 1 else 1) == in_old:
                        continue  # interior nodes demand alternating weights
                    opts.append((nb, e))
                per.append(tuple(opts))
            else:
                # initial placement or fresh entry: must move into the graph
                per.append(adj[p])

        pairs = self._pairs
        out = []
        for combo in product(*per):
            ok = True
            for i, j in pairs:
                pi, pj = pm[i], pm[j]
                ni, nj = combo[i][0], combo[j][0]
                if pi < dep and pj < dep:
                    if pi == pj:
                        if ni == nj:
                            ok = False  # same node: must split up (and never co-exit)
                            break
                    elif ni == pj and nj == pi and (pi, pj) in self._eindex:
                        ok = False  # may not swap across an edge
                        break
                elif pi >= dep and pj >= dep and ni == nj and ni < dep:
                    ok = False  # two solitons may not enter one port together
                    break
            if not ok:
                continue
            flips = 0
            for move in combo:
                if move[1] >= 0:
                    flips ^= 1 << move[1]
            out.append((wmask ^ flips, tuple(move[0] for move in combo), pm))

        result = tuple(out)
        self._succ[ec] = result
        if len(self._succ) > self.cap:
            raise ResourceCapError(self.cap)
        return result

    def successor_maps(self, ec: EncodedEC) -> frozenset:
        if self.final(ec[1]):
            return frozenset()
        return frozenset(s[1] for s in self.successors(ec))

    # -- reachability -------------------------------------------------------

    def explore(self) -> dict[EncodedEC, tuple[EncodedEC, ...]]:
        """Breadth-first closure of the extended-configuration graph."""
        if self._reachable is not None:
            return self._reachable
        succ: dict[EncodedEC, tuple[EncodedEC, ...]] = {}
        frontier = [self.start]
        while frontier:
            nxt = []
            for ec in frontier:
                if ec in succ:
                    continue
                succ[ec] = () if self.final(ec[1]) else self.successors(ec)
                nxt.extend(s for s in succ[ec] if s not in succ)
            frontier = nxt
        self._reachable = succ
        return succ

    def final_masks(self) -> frozenset[int]:
        """Weight assignments of every reachable all-departed configuration."""
        succ = self.explore()
        return frozenset(ec[0] for ec in succ if self.final(ec[1]))

    def _live_subgraph(self):
        """Restrict the reachable graph to nodes that can still complete."""
        if self._live is not None:
            return self._live
        succ = self.explore()
        preds: dict[EncodedEC, list[EncodedEC]] = {ec: [] for ec in succ}
        for ec, ss in succ.items():
            for s in ss:
                preds[s].append(ec)
        finals = [ec for ec in succ if self.final(ec[1])]
        live = set(finals)
        stack = list(finals)
        while stack:
            ec = stack.pop()
            for p in preds[ec]:
                if p not in live:
                    live.add(p)
                    stack.append(p)
        self._live = (live, finals)
        return self._live

    def multiplicity(self) -> int | float:
        """Exact number of total legal trails; ``math.inf`` when unbounded."""
        live, finals = self._live_subgraph()
        if not finals or self.start not in live:
            return 0
        succ = self.explore()
        indegree = {ec: 0 for ec in live}
        for ec in live:
            for s in succ[ec]:
                if s in live:
                    indegree[s] += 1
        order = [ec for ec in live if indegree[ec] == 0]
        i = 0
        while i < len(order):
            for s in succ[order[i]]:
                if s in live:
                    indegree[s] -= 1
                    if indegree[s] == 0:
                        order.append(s)
            i += 1
        if len(order) < len(live):
            return math.inf  # a loop on a completing branch pumps forever
        counts: dict[EncodedEC, int] = {}
        for ec in reversed(order):
            if self.final(ec[1]):
                counts[ec] = 1
            else:
                counts[ec] = sum(counts[s] for s in succ[ec] if s in live)
        return counts[self.start]

    def used_edge_mask(self) -> int:
        """Edges crossed by any soliton anywhere in the reachable trail space."""
        succ = self.explore()
        mask = 0
        for ec, ss in succ.items():
            w = ec[0]
            for s in ss:
                mask |= w ^ s[0]
        return mask

    # -- perfect trails ------------------------------------------------------

    def perfect_trail_paths(self, cap: int = 0) -> list[tuple[EncodedEC, ...]]:
        """All total trails that never revisit a successor-equivalent
        configuration, depth-first in canonical order. ``cap`` > 0 stops early."""
        results: list[tuple[EncodedEC, ...]] = []
        path: list[tuple[EncodedEC, frozenset]] = []
        iters = []

        def try_push(ec: EncodedEC) -> bool:
            sc = self.successor_maps(ec)
            w, pm = ec[0], ec[1]
            for other, other_sc in path:
                if other[0] == w and other[1] == pm and other_sc == sc:
                    self.pruned_imperfect = True
                    return False
            path.append((ec, sc))
            if self.final(pm):
                iters.append(iter(()))
                results.append(tuple(e for e, _ in path))
            else:
                iters.append(iter(self.successors(ec)))
            # a perfect trail never repeats an extended configuration
            assert len(path) <= len(self._succ) + 2
            return True

        try_push(self.start)
        while path:
            if cap and len(results) >= cap:
                break
            descended = False
            for s in iters[-1]:
                if try_push(s):
                    descended = True
                    break
            if not descended:
                path.pop()
                iters.pop()
        return results

    # -- exhaustive listing (for the CLI) ------------------------------------

    def total_trail_paths(self, limit: int) -> tuple[list[tuple[EncodedEC, ...]], bool]:
        """Up to ``limit`` total legal trails, shortest first, plus an
        exhausted flag.  With unbounded multiplicity the listing truncates."""
        count = self.multiplicity()
        if count == 0:
            return [], True
        live, _ = self._live_subgraph()
        succ = self.explore()
        results: list[tuple[EncodedEC, ...]] = []

        if count is not math.inf:
            target = min(limit, count) if limit else count
            stack: list[tuple[EncodedEC, ...]] = [(self.start,)]
            while stack and len(results) < target:
                trail = stack.pop()
                ec = trail[-1]
                if self.final(ec[1]):
                    results.append(trail)
                    continue
                for s in reversed(succ[ec]):
                    if s in live:
                        stack.append(trail + (s,))
            results.sort(key=len)
            return results, target == count

        # unbounded: iterative deepening yields the shortest trails first
        max_depth = (limit + 2) * (len(live) + 1)
        for depth in range(1, max_depth + 1):
            stack = [(self.start,)]
            while stack and len(results) < limit:
                trail = stack.pop()
                ec = trail[-1]
                if self.final(ec[1]):
                    if len(trail) == depth:
                        results.append(trail)
                    continue
                if len(trail) >= depth:
                    continue
                for s in reversed(succ[ec]):
                    if s in live:
                        stack.append(trail + (s,))
            if len(results) >= limit:
                break
        return results, False


def start_configuration(g: WeightedGraph, b: Burst) -> ExtendedConfiguration:
    """The trail start: original weights, initial position map, no history."""
    bind_burst(b, g)
    return ExtendedConfiguration(Configuration(g, initial_position_map(b)), None)


def explorer(g: WeightedGraph, b: Burst, cap: int | None = None) -> TrailExplorer:
    return TrailExplorer(g, b, cap)


def potential_successor_maps(ec: ExtendedConfiguration, b: Burst) -> frozenset[PositionMap]:
    """Unfiltered per-soliton moves, combined over all solitons."""
    ex = TrailExplorer(ec.current.graph, b)
    enc = ex.encode(ec)
    return frozenset(ex._decode_pm(pm) for pm in ex.potential_maps(enc))


def trail_successors(ec: ExtendedConfiguration, b: Burst) -> tuple[ExtendedConfiguration, ...]:
    """All one-step continuations permitted by the movement and legality
    rules, weights already toggled, in canonical order."""
    if is_final(ec.current.positions):
        return ()
    ex = TrailExplorer(ec.current.graph, b)
    enc = ex.encode(ec)
    return tuple(ex.decode(s) for s in ex.successors(enc))


def successor_set(ec: ExtendedConfiguration, b: Burst) -> frozenset[PositionMap]:
    """Position maps reachable in one step; empty for final configurations."""
    if is_final(ec.current.positions):
        return frozenset()
    ex = TrailExplorer(ec.current.graph, b)
    return frozenset(ex._decode_pm(pm) for pm in ex.successor_maps(ex.encode(ec)))


def successor_equivalent(
    e1: ExtendedConfiguration, e2: ExtendedConfiguration, b: Burst
) -> bool:
    """Equal weights and positions with identical one-step continuations."""
    c1, c2 = e1.current, e2.current
    if (c1.graph.nodes, c1.graph.edges) != (c2.graph.nodes, c2.graph.edges):
        raise ValueError("configurations live on different graphs")
    if c1.graph.weights != c2.graph.weights or c1.positions != c2.positions:
        return False
    return successor_set(e1, b) == successor_set(e2, b)


def enumerate_perfect_trails(
    g: WeightedGraph,
    b: Burst,
    cap: int = 0,
    ex: TrailExplorer | None = None,
) -> tuple[Trail, ...]:
    """Total legal trails with no two successor-equivalent configurations.

    ``cap`` bounds how many trails are collected (0 means all); termination
    is guaranteed because a perfect trail cannot revisit an equivalence
    class and there are finitely many of them.
    """
    if ex is None:
        ex = TrailExplorer(g, b)
    return tuple(ex.decode_trail(p, perfect=True) for p in ex.perfect_trail_paths(cap))


def trail_multiplicity(
    g: WeightedGraph, b: Burst, ex: TrailExplorer | None = None
) -> int | float:
    """0, an exact positive count, or ``math.inf`` of total legal trails."""
    if ex is None:
        ex = TrailExplorer(g, b)
    return ex.multiplicity()


def imperfect_trail_exists(g: WeightedGraph, b: Burst) -> bool:
    """Whether any legal trail here contains two successor-equivalent
    configurations (a diagnostic; total trails are counted separately)."""
    ex = TrailExplorer(g, b)
    ex.perfect_trail_paths()
    return ex.pruned_imperfect


def result(
    g: WeightedGraph, b: Burst, ex: TrailExplorer | None = None
) -> frozenset[SolitonGraph]:
    """End graphs of the total legal trails for (g, b).

    Computed from perfect trails, which reach the same end graphs as the
    full trail space; every outcome is again a valid soliton graph.
    """
    if ex is None:
        ex = TrailExplorer(g, b)
    masks = {p[-1][0] for p in ex.perfect_trail_paths()}
    return frozenset(
        SolitonGraph.from_weighted(ex._decode_graph(mask)) for mask in masks
    )


def list_total_trails(
    g: WeightedGraph, b: Burst, limit: int
) -> tuple[tuple[Trail, ...], bool]:
    """Up to ``limit`` total legal trails plus an ``exhausted`` flag."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    ex = TrailExplorer(g, b)
    paths, exhausted = ex.total_trail_paths(limit)
    return tuple(ex.decode_trail(p) for p in paths), exhausted


def soliton_path(trail: Trail, soliton: int) -> SolitonPath:
    """Node sequence of the given soliton (1-based) between its first and
    last node-valued steps; empty when it never entered."""
    if not 1 <= soliton <= len(trail.configurations[0].positions):
        raise ValueError(f"no soliton {soliton} in this trail")
    idx = soliton - 1
    nodes = [
        c.positions[idx]
        for c in trail.configurations
        if isinstance(c.positions[idx], str)
    ]
    return SolitonPath(soliton, tuple(nodes))


def used_edges(trail: Trail) -> frozenset[Edge]:
    """Edges traversed by any soliton at any step of the trail."""
    out = set()
    configs = trail.configurations
    for j in range(1, len(configs)):
        before = configs[j - 1].positions
        after = configs[j].positions
        for a, b in zip(before, after):
            if isinstance(a, str) and isinstance(b, str):
                out.add(edge_key(a, b))
    return frozenset(out)
