"""Engine results against the independent history-based reference semantics."""

from __future__ import annotations

import random

import pytest

from multisoliton.bursts import Burst, parse_burst
from multisoliton.engine import result
from multisoliton.families import gen_chestnut, gen_gg, gen_tree
from multisoliton.graphs import exterior_nodes

from oracle import brute_force_end_weights, brute_force_total_count, end_weights_of


def random_instances(count, seed):
    """Deterministic mix of small graphs with random short bursts."""
    rng = random.Random(seed)
    shapes = []
    for s in range(8):
        shapes.append(gen_tree(rng.randint(2, 9), seed=seed * 100 + s))
    shapes.append(gen_chestnut(4, [(0, 1)]))
    shapes.append(gen_chestnut(4, [(0, 1), (2, 1)]))
    shapes.append(gen_chestnut(6, [(0, 1)]))
    shapes.append(gen_chestnut(6, [(0, 2), (2, 1)]))
    shapes.append(gen_gg(1))
    shapes.append(gen_gg(2))
    shapes = [g for g in shapes if len(g.edges) <= 12]
    out = []
    for _ in range(count):
        g = rng.choice(shapes)
        ports = sorted(exterior_nodes(g))
        m = rng.randint(1, 2)
        pairs = tuple((rng.choice(ports), rng.choice(ports)) for _ in range(m))
        gaps = tuple(rng.randint(0, 2) for _ in range(m - 1))
        out.append((g, Burst(pairs, gaps)))
    return out


@pytest.mark.parametrize("seed", [3, 7])
def test_results_match_brute_force(seed):
    for g, b in random_instances(20, seed):
        assert end_weights_of(result(g, b)) == brute_force_end_weights(g, b), (
            g.state_key(),
            b.text(),
        )


def test_finite_trail_counts_match_brute_force(seed=5):
    import math

    from multisoliton.engine import trail_multiplicity

    checked = 0
    for g, b in random_instances(25, seed):
        count = trail_multiplicity(g, b)
        if count is math.inf:
            continue
        assert brute_force_total_count(g, b) == count, (g.state_key(), b.text())
        checked += 1
    assert checked >= 10


def test_oracle_agrees_on_reference_cases(path_graph, c4_chestnut, star):
    cases = [
        (path_graph, "(1,2)!"),
        (path_graph, "(1,1)!"),
        (c4_chestnut, "(1,1)!"),
        (c4_chestnut, "(1,1)|1(1,1)!"),
        (c4_chestnut, "(1,1)|2(1,1)!"),
        (star, "(2,1)!"),
        (star, "(1,3)!"),
    ]
    for g, text in cases:
        b = parse_burst(text)
        assert end_weights_of(result(g, b)) == brute_force_end_weights(g, b), text
