"""Soliton graphs: weighted-graph model, validation, canonical identity, text I/O.

A soliton graph abstracts a polyacetylene-like molecule.  Interior nodes are
atoms joined by single or double bonds (edge weights 1 and 2); exterior nodes
(degree 1) are the ports where travelling disturbances enter and leave.  The
weight pattern is constrained: an interior node of degree d carries total
bond weight d + 1, so a degree-2 node has one single and one double bond and
a degree-3 node has exactly one double bond.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

NodeId = str
Edge = tuple[NodeId, NodeId]

_NAME = re.compile(r"^[A-Za-z0-9_]+$")

RULE_DEGREE = "degree"
RULE_EXTERIOR_WEIGHT = "exterior-weight"
RULE_INTERIOR_WEIGHT = "interior-weight"
RULE_COMPONENT = "component-exterior"
RULE_EMPTY = "empty"


class GraphParseError(ValueError):
    """Malformed graph-file text."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        if line and column:
            message = f"line {line}, column {column}: {message}"
        elif line:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


def edge_key(u: NodeId, v: NodeId) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Finite undirected graph with bond weights in {1, 2}.

    ``nodes`` and ``edges`` are kept sorted so that equality, hashing and
    :meth:`state_key` do not depend on construction order.  Instances are
    immutable and safe for unrestricted concurrent reads.
    """

    nodes: tuple[NodeId, ...]
    edges: tuple[Edge, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        node_set = set(self.nodes)
        if self.nodes != tuple(sorted(node_set)):
            raise ValueError("nodes must be sorted and unique")
        if len(self.weights) != len(self.edges):
            raise ValueError("exactly one weight per edge required")
        if self.edges != tuple(sorted(set(self.edges))):
            raise ValueError("edges must be sorted and unique")
        for (u, v), w in zip(self.edges, self.weights):
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if (u, v) != edge_key(u, v):
                raise ValueError(f"edge {(u, v)!r} not in canonical order")
            if u not in node_set or v not in node_set:
                raise ValueError(f"edge {(u, v)!r} uses an unknown node")
            if w not in (1, 2):
                raise ValueError(f"edge {(u, v)!r} has weight {w!r}, expected 1 or 2")

    @classmethod
    def build(
        cls,
        edge_weights: Iterable[tuple[NodeId, NodeId, int]],
        extra_nodes: Iterable[NodeId] = (),
    ) -> "WeightedGraph":
        """Create a graph from (u, v, weight) triples plus optional bare nodes."""
        weight_by_edge: dict[Edge, int] = {}
        nodes = set(extra_nodes)
        for u, v, w in edge_weights:
            e = edge_key(u, v)
            if e in weight_by_edge:
                raise ValueError(f"duplicate edge {e!r}")
            weight_by_edge[e] = w
            nodes.add(u)
            nodes.add(v)
        edges = tuple(sorted(weight_by_edge))
        return cls(tuple(sorted(nodes)), edges, tuple(weight_by_edge[e] for e in edges))

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.edges == other.edges
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.nodes, self.edges, self.weights))

    @cached_property
    def _weight_map(self) -> dict[Edge, int]:
        return dict(zip(self.edges, self.weights))

    @cached_property
    def adjacency(self) -> dict[NodeId, tuple[NodeId, ...]]:
        nbrs: dict[NodeId, list[NodeId]] = {n: [] for n in self.nodes}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {n: tuple(sorted(ns)) for n, ns in nbrs.items()}

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return edge_key(u, v) in self._weight_map

    def weight(self, u: NodeId, v: NodeId) -> int:
        try:
            return self._weight_map[edge_key(u, v)]
        except KeyError:
            raise ValueError(f"no edge between {u!r} and {v!r}") from None

    def neighbors(self, n: NodeId) -> tuple[NodeId, ...]:
        return self.adjacency[n]

    def degree(self, n: NodeId) -> int:
        return len(self.adjacency[n])

    def node_weight(self, n: NodeId) -> int:
        """Sum of the weights of all bonds incident to ``n``."""
        return sum(self.weight(n, nb) for nb in self.adjacency[n])

    def is_exterior(self, n: NodeId) -> bool:
        return self.degree(n) == 1

    def with_weights(
        self, weights: Mapping[Edge, int] | tuple[int, ...]
    ) -> "WeightedGraph":
        """Same node and edge structure with a different weight assignment."""
        if isinstance(weights, tuple):
            new = weights
        else:
            new = tuple(weights[e] for e in self.edges)
        return WeightedGraph(self.nodes, self.edges, new)

    def components(self) -> tuple[frozenset[NodeId], ...]:
        seen: set[NodeId] = set()
        out = []
        for n in self.nodes:
            if n in seen:
                continue
            comp = {n}
            stack = [n]
            while stack:
                cur = stack.pop()
                for nb in self.adjacency[cur]:
                    if nb not in comp:
                        comp.add(nb)
                        stack.append(nb)
            seen |= comp
            out.append(frozenset(comp))
        return tuple(out)

    def state_key(self) -> str:
        """Fingerprint of the weight assignment over the fixed edge order.

        Two graphs over the same node and edge structure compare equal under
        this key exactly when their weight functions agree pointwise.
        """
        return "".join(map(str, self.weights))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the soliton-graph check: ok, or one entry per violation."""

    ok: bool
    violations: tuple[tuple[str, str, str], ...]


def validate(g: WeightedGraph) -> ValidationReport:
    """Check the soliton-graph conditions on degrees, node weights and components.

    Structural edge rules (no self-loops, single edge per pair, weights in
    {1, 2}) are already enforced by :class:`WeightedGraph` construction.
    """
    violations: list[tuple[str, str, str]] = []
    if not g.nodes:
        violations.append((RULE_EMPTY, "", "graph has no nodes"))
    for n in g.nodes:
        d = g.degree(n)
        if not 1 <= d <= 3:
            violations.append((RULE_DEGREE, n, f"degree {d} outside 1..3"))
            continue
        wn = g.node_weight(n)
        if d == 1:
            if wn not in (1, 2):
                violations.append(
                    (RULE_EXTERIOR_WEIGHT, n, f"exterior node weight {wn} not in {{1, 2}}")
                )
        elif wn != d + 1:
            violations.append(
                (RULE_INTERIOR_WEIGHT, n, f"interior node weight {wn}, expected {d + 1}")
            )
    for comp in g.components():
        if not any(g.degree(n) == 1 for n in comp):
            subject = "{" + ",".join(sorted(comp)) + "}"
            violations.append((RULE_COMPONENT, subject, "component has no exterior node"))
    return ValidationReport(not violations, tuple(violations))


@dataclass(frozen=True, eq=False)
class SolitonGraph(WeightedGraph):
    """A :class:`WeightedGraph` that passes :func:`validate` on construction."""

    def __post_init__(self):
        super().__post_init__()
        report = validate(self)
        if not report.ok:
            detail = "; ".join(f"{rule} at {subject}: {msg}" for rule, subject, msg in report.violations)
            raise ValueError(f"not a soliton graph: {detail}")

    @classmethod
    def from_weighted(cls, g: WeightedGraph) -> "SolitonGraph":
        return cls(g.nodes, g.edges, g.weights)


def exterior_nodes(g: WeightedGraph) -> frozenset[NodeId]:
    """The degree-1 nodes: the ports of the graph."""
    return frozenset(n for n in g.nodes if g.degree(n) == 1)


def state_key(g: WeightedGraph) -> str:
    return g.state_key()


def parse_graph(text: str) -> WeightedGraph:
    """Parse the line-based graph format.

    Lines are whitespace separated and order insensitive::

        # comment
        node <id> [exterior|interior]
        edge <id> <id> <1|2>

    A declared role is checked against the role computed from the node's
    degree once the whole file is read; the computed role always wins.
    """
    edge_weights: list[tuple[NodeId, NodeId, int]] = []
    seen_edges: set[Edge] = set()
    declared: list[tuple[NodeId, str, int]] = []
    extra_nodes: list[NodeId] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue

        def col(token: str) -> int:
            return body.find(token) + 1

        kind = tokens[0]
        if kind == "node":
            if len(tokens) not in (2, 3):
                raise GraphParseError("expected: node <id> [exterior|interior]", lineno, 1)
            name = tokens[1]
            if not _NAME.match(name):
                raise GraphParseError(f"bad node name {name!r}", lineno, col(name))
            extra_nodes.append(name)
            if len(tokens) == 3:
                role = tokens[2]
                if role not in ("exterior", "interior"):
                    raise GraphParseError(f"unknown role {role!r}", lineno, col(role))
                declared.append((name, role, lineno))
        elif kind == "edge":
            if len(tokens) != 4:
                raise GraphParseError("expected: edge <id> <id> <1|2>", lineno, 1)
            u, v, w = tokens[1], tokens[2], tokens[3]
            for name in (u, v):
                if not _NAME.match(name):
                    raise GraphParseError(f"bad node name {name!r}", lineno, col(name))
            if w not in ("1", "2"):
                raise GraphParseError(f"edge weight {w!r} outside {{1, 2}}", lineno, col(w))
            if u == v:
                raise GraphParseError(f"self-loop at {u!r}", lineno, col(v))
            e = edge_key(u, v)
            if e in seen_edges:
                raise GraphParseError(f"duplicate edge {u}-{v}", lineno, 1)
            seen_edges.add(e)
            edge_weights.append((u, v, int(w)))
        else:
            raise GraphParseError(f"unknown directive {kind!r}", lineno, 1)

    g = WeightedGraph.build(edge_weights, extra_nodes)
    for name, role, lineno in declared:
        actual = "exterior" if g.degree(name) == 1 else "interior"
        if role != actual:
            raise GraphParseError(
                f"node {name!r} declared {role} but has degree {g.degree(name)}", lineno
            )
    return g


def format_graph(g: WeightedGraph, header: Iterable[str] = ()) -> str:
    """Render a graph in the line format accepted by :func:`parse_graph`."""
    lines = [f"# {h}" for h in header]
    in_edges = {n for e in g.edges for n in e}
    for n in g.nodes:
        if n not in in_edges:
            lines.append(f"node {n}")
    for (u, v), w in zip(g.edges, g.weights):
        lines.append(f"edge {u} {v} {w}")
    return "\n".join(lines) + "\n"


def export_dot(g: WeightedGraph) -> str:
    """Render as DOT; double bonds are drawn with a bold style."""
    lines = ["graph {"]
    for n in g.nodes:
        lines.append(f'  "{n}";')
    for (u, v), w in zip(g.edges, g.weights):
        if w == 2:
            lines.append(f'  "{u}" -- "{v}" [style=bold];')
        else:
            lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def all_weight_assignments(g: WeightedGraph) -> Iterator[WeightedGraph]:
    """Every graph over the same (N, E) with weights drawn from {1, 2}."""
    n = len(g.edges)
    for bits in range(1 << n):
        yield g.with_weights(tuple(2 if bits >> i & 1 else 1 for i in range(n)))
