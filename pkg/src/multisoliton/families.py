"""Generators for graph families used in the analyses and for witness search.

* a two-port family whose single crossing burst has exactly g outcomes,
* parametric chestnuts (even cycle plus attachment paths),
* random trees with weights that make them valid soliton graphs.
"""

from __future__ import annotations

import random
import string
from itertools import combinations, product
from typing import Iterator, Sequence

from . import engine
from .bursts import Burst, burst_universe
from .classify import Bounds
from .graphs import SolitonGraph, WeightedGraph, exterior_nodes


def _letters() -> Iterator[str]:
    for c in string.ascii_lowercase:
        yield c
    for a in string.ascii_lowercase:
        for b in string.ascii_lowercase:
            yield a + b


def gen_gg(g: int) -> SolitonGraph:
    """The g-th member of the family whose degree of non-determinism is g.

    Ports 1 and 2 are joined by a chain 1, n1, ..., n2g with alternating
    weights starting single at the port, and by an inner chain collecting a
    single-weight branch from every even chain node down to port 2.
    """
    if g < 1:
        raise ValueError("g must be at least 1")
    chain = ["1"] + [f"n{i}" for i in range(1, 2 * g + 1)]
    edge_weights = []
    w = 1
    for a, b in zip(chain, chain[1:]):
        edge_weights.append((a, b, w))
        w = 3 - w
    if g == 1:
        edge_weights += [("n2", "v1", 1), ("v1", "2", 2)]
    else:
        inner = [f"v{i}" for i in range(1, 2 * g - 2)]
        edge_weights.append(("n2", "v1", 1))
        for k in range(2, g + 1):
            edge_weights.append((f"n{2 * k}", f"v{2 * k - 3}", 1))
        w = 2
        for a, b in zip(inner, inner[1:]):
            edge_weights.append((a, b, w))
            w = 3 - w
        edge_weights.append((inner[-1], "2", 2))
    return SolitonGraph.from_weighted(WeightedGraph.build(edge_weights))


def gen_chestnut(
    cycle_len: int, attachments: Sequence[tuple[int, int]]
) -> SolitonGraph:
    """An even cycle with simple paths attached at the given positions.

    Positions must be pairwise at even cycle distance and distinct (the
    degree cap admits one path per cycle node); path lengths are at least 1.
    Cycle weights alternate; each path carries weight 1 next to the cycle
    and alternates outward.
    """
    if cycle_len < 4 or cycle_len % 2:
        raise ValueError("cycle length must be even and at least 4")
    if not attachments:
        raise ValueError("at least one attachment path is required")
    positions = [p for p, _ in attachments]
    if any(not 0 <= p < cycle_len for p in positions):
        raise ValueError("attachment position out of range")
    if len(set(positions)) != len(positions):
        raise ValueError("duplicate attachment position exceeds the degree cap")
    if any((p - positions[0]) % 2 for p in positions):
        raise ValueError("attachment positions must sit at even cycle distances")
    if any(length < 1 for _, length in attachments):
        raise ValueError("path length must be at least 1")

    names = _letters()
    cycle = [next(names) for _ in range(cycle_len)]
    edge_weights = []
    for i in range(cycle_len):
        edge_weights.append((cycle[i], cycle[(i + 1) % cycle_len], 2 if i % 2 == 0 else 1))
    for idx, (pos, length) in enumerate(attachments):
        inner = [next(names) for _ in range(length - 1)]
        seq = [str(idx + 1)] + inner + [cycle[pos]]
        for i in range(length):
            dist_from_cycle = length - 1 - i
            edge_weights.append((seq[i], seq[i + 1], 1 if dist_from_cycle % 2 == 0 else 2))
    return SolitonGraph.from_weighted(WeightedGraph.build(edge_weights))


def _interior_cover(n: int, parent: list[int | None], degree: list[int]) -> set[int] | None:
    """Pick tree edges to carry weight 2 so every interior node gets exactly
    one; returns the chosen child node per selected (parent, child) edge."""
    children: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n):
        children[parent[i]].append(i)

    can_in = [False] * n
    can_out = [False] * n
    pick_for_out: list[int | None] = [None] * n
    # construction guarantees parent[i] < i, so reverse id order is bottom-up
    for u in range(n - 1, 0, -1):
        ch = children[u]
        if not ch:
            can_in[u] = can_out[u] = True  # a leaf port is unconstrained
            continue
        can_in[u] = all(can_out[c] for c in ch)
        for c in ch:
            if can_in[c] and all(can_out[d] for d in ch if d != c):
                pick_for_out[u] = c
                can_out[u] = True
                break

    chosen: set[int] = set()

    def assign(u: int, edge_to_parent_doubled: bool) -> None:
        ch = children[u]
        if not ch:
            return
        selected = None if edge_to_parent_doubled else pick_for_out[u]
        for c in ch:
            if c == selected:
                chosen.add(c)
                assign(c, True)
            else:
                assign(c, False)

    root_children = children[0]
    if degree[0] == 1:
        c = root_children[0]
        if can_out[c]:
            assign(c, False)
        elif can_in[c]:
            chosen.add(c)
            assign(c, True)
        else:
            return None
    else:
        selected = None
        for c in root_children:
            if can_in[c] and all(can_out[d] for d in root_children if d != c):
                selected = c
                break
        if selected is None:
            return None
        for c in root_children:
            if c == selected:
                chosen.add(c)
                assign(c, True)
            else:
                if not can_out[c]:
                    return None
                assign(c, False)
    return chosen


def gen_tree(n: int, seed: int, max_retries: int = 64) -> SolitonGraph:
    """A random tree with maximum degree 3, weighted into a valid soliton
    graph: each interior node touches exactly one double bond.

    Exterior nodes are numbered, interior nodes lettered.  Redraws when the
    sampled shape admits no such weighting, up to ``max_retries``.
    """
    if n < 2:
        raise ValueError("a tree needs at least two nodes")
    rng = random.Random(seed)
    for _ in range(max_retries):
        parent: list[int | None] = [None] * n
        degree = [0] * n
        for i in range(1, n):
            candidates = [j for j in range(i) if degree[j] < 3]
            p = rng.choice(candidates)
            parent[i] = p
            degree[p] += 1
            degree[i] += 1
        doubled = _interior_cover(n, parent, degree)
        if doubled is None:
            continue
        names = {}
        ext = 0
        letters = _letters()
        for i in range(n):
            if degree[i] == 1:
                ext += 1
                names[i] = str(ext)
            else:
                names[i] = next(letters)
        edge_weights = [
            (names[parent[i]], names[i], 2 if i in doubled else 1) for i in range(1, n)
        ]
        return SolitonGraph.from_weighted(WeightedGraph.build(edge_weights))
    raise ValueError(f"no weightable tree with {n} nodes found for seed {seed}")


def chestnut_candidates(
    max_cycle: int, max_paths: int, max_path_length: int = 2
) -> Iterator[SolitonGraph]:
    """Chestnuts in canonical order: smaller cycles, fewer paths, shorter
    paths first; the first attachment is pinned to cycle position 0."""
    for cycle_len in range(4, max_cycle + 1, 2):
        for count in range(1, max_paths + 1):
            other = range(2, cycle_len, 2)
            for rest in combinations(other, count - 1):
                positions = (0,) + rest
                for lengths in product(range(1, max_path_length + 1), repeat=count):
                    yield gen_chestnut(cycle_len, tuple(zip(positions, lengths)))


def search_non_perfect(
    max_cycle: int,
    max_paths: int,
    bounds: Bounds,
    max_path_length: int = 2,
) -> tuple[SolitonGraph, Burst] | None:
    """First (chestnut, burst) admitting two or more perfect total trails,
    sweeping graphs before bursts, smallest first; None when the bounded
    space holds no witness."""
    for graph in chestnut_candidates(max_cycle, max_paths, max_path_length):
        for burst in burst_universe(
            exterior_nodes(graph), bounds.max_burst_length, bounds.max_gap
        ):
            ex = engine.explorer(graph, burst)
            if len(ex.perfect_trail_paths(cap=2)) >= 2:
                return graph, burst
    return None
