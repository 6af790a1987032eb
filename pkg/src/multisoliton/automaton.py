"""Induced automata over soliton graphs and the determinism analyses.

States are the weight assignments reachable from the initial graph by
repeatedly firing bursts; the transition for a burst maps a state to the set
of end graphs of its total legal trails, or loops when no trail completes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import engine
from .bursts import Burst, bind_burst
from .graphs import SolitonGraph

StateKey = str


@dataclass(frozen=True)
class Witness:
    """Where and how an analysis failed: state, burst and evidence."""

    state: StateKey
    burst: str
    kind: str
    evidence: str

    def to_dict(self) -> dict:
        return {
            "state": self.state,
            "burst": self.burst,
            "kind": self.kind,
            "evidence": self.evidence,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        return cls(d["state"], d["burst"], d["kind"], d["evidence"])


@dataclass(frozen=True)
class DeterminismReport:
    deterministic: bool
    strongly_deterministic: bool
    perfectly_deterministic: bool
    degree: int
    witnesses: tuple[Witness, ...] = ()

    def to_dict(self) -> dict:
        return {
            "deterministic": self.deterministic,
            "strongly_deterministic": self.strongly_deterministic,
            "perfectly_deterministic": self.perfectly_deterministic,
            "degree": self.degree,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "DeterminismReport":
        return cls(
            d["deterministic"],
            d["strongly_deterministic"],
            d["perfectly_deterministic"],
            d["degree"],
            tuple(Witness.from_dict(w) for w in d["witnesses"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "DeterminismReport":
        return cls.from_dict(json.loads(text))


@dataclass
class SolitonAutomaton:
    """States, alphabet and the non-deterministic transition relation."""

    initial: SolitonGraph
    alphabet: tuple[Burst, ...]
    states: dict[StateKey, SolitonGraph]
    results: dict[tuple[StateKey, Burst], frozenset[StateKey]]
    _explorers: dict[tuple[StateKey, Burst], engine.TrailExplorer] = field(
        default_factory=dict, repr=False
    )

    @property
    def initial_key(self) -> StateKey:
        return self.initial.state_key()

    def state_keys(self) -> list[StateKey]:
        return sorted(self.states)

    def transition(self, state: StateKey, burst: Burst) -> frozenset[StateKey]:
        """Result of the burst, or a self-loop when no trail completes."""
        out = self.results[state, burst]
        return out if out else frozenset({state})

    def explorer(self, state: StateKey, burst: Burst) -> engine.TrailExplorer:
        key = (state, burst)
        ex = self._explorers.get(key)
        if ex is None:
            ex = engine.explorer(self.states[state], burst)
            self._explorers[key] = ex
        return ex


def build(g: SolitonGraph, bursts: Iterable[Burst]) -> SolitonAutomaton:
    """Close the state set under all bursts, recording every transition."""
    alphabet = tuple(sorted(set(bursts), key=lambda b: (b.length, b.text())))
    if not alphabet:
        raise ValueError("the burst alphabet must not be empty")
    for b in alphabet:
        bind_burst(b, g)
    states: dict[StateKey, SolitonGraph] = {g.state_key(): g}
    results: dict[tuple[StateKey, Burst], frozenset[StateKey]] = {}
    explorers: dict[tuple[StateKey, Burst], engine.TrailExplorer] = {}
    frontier = [g]
    while frontier:
        nxt = []
        for state in frontier:
            skey = state.state_key()
            for b in alphabet:
                ex = engine.explorer(state, b)
                explorers[skey, b] = ex
                outcome = engine.result(state, b, ex=ex)
                results[skey, b] = frozenset(r.state_key() for r in outcome)
                for r in outcome:
                    rkey = r.state_key()
                    if rkey not in states:
                        states[rkey] = r
                        nxt.append(r)
        frontier = nxt
    assert len(states) <= 2 ** len(g.edges)
    return SolitonAutomaton(g, alphabet, states, results, explorers)


def states_fixpoint(g: SolitonGraph, bursts: Iterable[Burst]) -> frozenset[SolitonGraph]:
    """The reachable weight assignments, the initial graph included."""
    return frozenset(build(g, bursts).states.values())


def run_burst_sequence(
    a: SolitonAutomaton, s0: StateKey, word: Sequence[Burst]
) -> frozenset[StateKey]:
    """Subset-construction image of the state under a burst sequence."""
    if s0 not in a.states:
        raise ValueError(f"unknown state {s0!r}")
    known = set(a.alphabet)
    current = frozenset({s0})
    for b in word:
        if b not in known:
            raise ValueError(f"burst {b} is not in the alphabet")
        current = frozenset().union(*(a.transition(s, b) for s in current))
    return current


def _iter_pairs(a: SolitonAutomaton):
    for skey in sorted(a.states):
        for b in a.alphabet:
            yield skey, b


def is_deterministic(a: SolitonAutomaton) -> tuple[bool, tuple[Witness, ...]]:
    """Every transition value has exactly one element (self-loops count)."""
    for skey, b in _iter_pairs(a):
        out = a.transition(skey, b)
        if len(out) != 1:
            evidence = f"|Result| = {len(out)}: {', '.join(sorted(out))}"
            return False, (Witness(skey, b.text(), "nondeterministic-result", evidence),)
    return True, ()


def is_strongly_deterministic(a: SolitonAutomaton) -> tuple[bool, tuple[Witness, ...]]:
    """At most one total legal trail for every state and burst."""
    for skey, b in _iter_pairs(a):
        count = a.explorer(skey, b).multiplicity()
        if count not in (0, 1):
            shown = "infinite" if count == math.inf else str(count)
            return False, (
                Witness(skey, b.text(), "multiple-trails", f"trail multiplicity = {shown}"),
            )
    return True, ()


def is_perfectly_deterministic(a: SolitonAutomaton) -> tuple[bool, tuple[Witness, ...]]:
    """At most one perfect total legal trail for every state and burst."""
    for skey, b in _iter_pairs(a):
        found = a.explorer(skey, b).perfect_trail_paths(cap=2)
        if len(found) > 1:
            return False, (
                Witness(skey, b.text(), "multiple-perfect-trails", "at least 2 perfect total trails"),
            )
    return True, ()


def degree_of_nondeterminism(a: SolitonAutomaton) -> int:
    """Smallest bound on |Result| over all states and bursts (at least 1)."""
    return max(len(a.transition(skey, b)) for skey, b in _iter_pairs(a))


def analyze(a: SolitonAutomaton) -> DeterminismReport:
    det, w1 = is_deterministic(a)
    strong, w2 = is_strongly_deterministic(a)
    perfect, w3 = is_perfectly_deterministic(a)
    return DeterminismReport(
        deterministic=det,
        strongly_deterministic=strong,
        perfectly_deterministic=perfect,
        degree=degree_of_nondeterminism(a),
        witnesses=w1 + w2 + w3,
    )


def export_dot(a: SolitonAutomaton) -> str:
    """The automaton as a DOT digraph: states carry weight signatures,
    edges carry burst text."""
    lines = ["digraph {"]
    for skey in sorted(a.states):
        shape = "doublecircle" if skey == a.initial_key else "circle"
        lines.append(f'  "{skey}" [shape={shape}];')
    for skey in sorted(a.states):
        for b in a.alphabet:
            for target in sorted(a.transition(skey, b)):
                lines.append(f'  "{skey}" -> "{target}" [label="{b.text()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "DeterminismReport",
    "SolitonAutomaton",
    "StateKey",
    "Witness",
    "analyze",
    "build",
    "degree_of_nondeterminism",
    "export_dot",
    "is_deterministic",
    "is_perfectly_deterministic",
    "is_strongly_deterministic",
    "run_burst_sequence",
    "states_fixpoint",
]
