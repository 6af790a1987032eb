"""The burst language: timed sequences of (entry, exit) port pairs.

A burst ``(n1,x1)|k1(n2,x2)|k2...(nm,xm)!`` injects m solitons.  Soliton 1
starts immediately; soliton i+1 follows k_i steps after soliton i.  The
``!`` terminator marks the point where input pauses until the graph has
stabilized.  Position maps track each soliton as a node name, a positive
countdown of steps until entry, or 0 once it has left the graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Union

from .graphs import NodeId, WeightedGraph, exterior_nodes

Position = Union[NodeId, int]
PositionMap = tuple[Position, ...]

DEPARTED = 0

_TOKEN = re.compile(r"[(),|!]|[A-Za-z0-9_]+")


class BurstParseError(ValueError):
    pass


class BurstBindError(ValueError):
    pass


@dataclass(frozen=True)
class Burst:
    """m entry/exit pairs separated by m-1 non-negative gaps."""

    pairs: tuple[tuple[NodeId, NodeId], ...]
    gaps: tuple[int, ...]

    def __post_init__(self):
        if len(self.pairs) < 1:
            raise ValueError("a burst has at least one pair")
        if len(self.gaps) != len(self.pairs) - 1:
            raise ValueError("a burst of length m has exactly m-1 gaps")
        if any(k < 0 for k in self.gaps):
            raise ValueError("gaps are non-negative")

    @property
    def length(self) -> int:
        return len(self.pairs)

    def text(self) -> str:
        parts = []
        for i, (entry, exit_) in enumerate(self.pairs):
            if i:
                parts.append(f"|{self.gaps[i - 1]}")
            parts.append(f"({entry},{exit_})")
        parts.append("!")
        return "".join(parts)

    def __str__(self) -> str:
        return self.text()


def burst_length(b: Burst) -> int:
    return b.length


def parse_burst(text: str) -> Burst:
    """Parse the ASCII burst syntax ``(a,b)|k(c,d)...!`` (whitespace ignored)."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != "".join(text.split()):
        raise BurstParseError(f"unexpected characters in burst {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise BurstParseError(
                f"expected {expected or 'token'} at position {pos} in {text!r}"
            )
        pos += 1
        return tok

    def take_pair():
        take("(")
        entry = take()
        if not re.fullmatch(r"[A-Za-z0-9_]+", entry):
            raise BurstParseError(f"bad node name {entry!r} in {text!r}")
        take(",")
        exit_ = take()
        if not re.fullmatch(r"[A-Za-z0-9_]+", exit_):
            raise BurstParseError(f"bad node name {exit_!r} in {text!r}")
        take(")")
        return entry, exit_

    pairs = [take_pair()]
    gaps = []
    while peek() == "|":
        take("|")
        gap = peek()
        if gap is None or not gap.isdigit():
            raise BurstParseError(f"missing gap after '|' in {text!r}")
        take()
        gaps.append(int(gap))
        pairs.append(take_pair())
    take("!")
    if pos != len(tokens):
        raise BurstParseError(f"trailing input after '!' in {text!r}")
    return Burst(tuple(pairs), tuple(gaps))


def parse_burst_set(text: str) -> tuple[Burst, ...]:
    """One burst per line; blank lines and ``#`` comments are skipped."""
    bursts = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            bursts.append(parse_burst(line))
    return tuple(bursts)


def initial_position_map(b: Burst) -> PositionMap:
    """Starting positions: the leading zero-gap block of solitons stands at
    its entry nodes, the rest wait out their accumulated delays."""
    m = b.length
    r = m - 1
    for i, k in enumerate(b.gaps):
        if k > 0:
            r = i
            break
    positions: list[Position] = [b.pairs[i][0] for i in range(r + 1)]
    if r + 1 < m:
        positions.append(b.gaps[r])
        for i in range(r + 2, m):
            positions.append(positions[-1] + b.gaps[i - 1])
    return tuple(positions)


def is_final(pm: PositionMap) -> bool:
    """True when every soliton has left the graph."""
    return all(p == DEPARTED for p in pm)


def bind_burst(b: Burst, g: WeightedGraph) -> Burst:
    """Check that every entry and exit names an exterior node of ``g``."""
    ext = exterior_nodes(g)
    node_set = set(g.nodes)
    for entry, exit_ in b.pairs:
        for name in (entry, exit_):
            if name not in node_set:
                raise BurstBindError(f"unknown node {name!r} in burst {b}")
            if name not in ext:
                raise BurstBindError(f"interior node {name!r} used as port in burst {b}")
    return b


def burst_universe(
    ports: Iterable[NodeId] | WeightedGraph, max_length: int, max_gap: int
) -> list[Burst]:
    """All bursts over the given ports up to the given length and gap bound.

    Canonical order: by length, then pair sequence, then gap sequence, with
    node names compared lexicographically.
    """
    if isinstance(ports, WeightedGraph):
        names = sorted(exterior_nodes(ports))
    else:
        names = sorted(set(ports))
    pairs = [(a, b) for a in names for b in names]
    out = []
    for m in range(1, max_length + 1):
        for combo in product(pairs, repeat=m):
            for gaps in product(range(max_gap + 1), repeat=m - 1):
                out.append(Burst(combo, gaps))
    return out
