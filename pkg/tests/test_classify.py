"""Structural classification and the bounded behavioural checks."""

from __future__ import annotations

import pytest

from multisoliton.classify import (
    Bounds,
    classify_report,
    graph_determinism_bounded,
    impervious_paths_bounded,
    is_chestnut,
    is_tree,
    used_edges_bounded,
)
from multisoliton.families import gen_chestnut, gen_gg, gen_tree


def test_is_tree(path_graph, c4_chestnut):
    assert is_tree(path_graph)
    assert not is_tree(c4_chestnut)
    assert not is_tree(gen_gg(2))


def test_c4_is_chestnut(c4_chestnut):
    ok, evidence = is_chestnut(c4_chestnut)
    assert ok
    assert evidence.cycle == ("a", "b", "c", "d")
    assert evidence.entry_points == ("a",)
    assert not evidence.failures


def test_g2_is_not_a_chestnut():
    ok, evidence = is_chestnut(gen_gg(2))
    assert not ok
    assert len(evidence.cycle) == 4
    assert set(evidence.entry_points) == {"n2", "v1"}
    assert any("odd cycle distance" in f for f in evidence.failures)


def test_path_is_not_a_chestnut(path_graph):
    ok, evidence = is_chestnut(path_graph)
    assert not ok
    assert "unicyclic" in evidence.failures[0]


def test_two_entry_chestnut_distances():
    g = gen_chestnut(6, [(0, 1), (2, 2)])
    ok, evidence = is_chestnut(g)
    assert ok
    ((a, b, near, far),) = evidence.entry_distances
    assert (near, far) == (2, 4)


def test_chestnut_with_odd_meeting_point_rejected():
    # a 4-cycle entry tree where two paths merge one step above the cycle
    from conftest import sg

    g = sg(
        ("a", "b", 2), ("b", "c", 1), ("c", "d", 2), ("a", "d", 1),
        ("a", "e", 1), ("e", "1", 2), ("e", "2", 1),
    )
    ok, evidence = is_chestnut(g)
    assert not ok
    assert any("meet" in f for f in evidence.failures)


def test_chestnut_with_even_meeting_point_accepted():
    from conftest import sg

    g = sg(
        ("a", "b", 2), ("b", "c", 1), ("c", "d", 2), ("a", "d", 1),
        ("a", "e", 1), ("e", "f", 2), ("f", "g", 1), ("f", "h", 1),
        ("g", "1", 2), ("h", "2", 2),
    )
    ok, evidence = is_chestnut(g)
    assert ok, evidence
    assert any("meet" in n for n in evidence.notes)


def test_tree_and_chestnut_exclusive():
    for seed in range(6):
        t = gen_tree(7, seed)
        assert is_tree(t) and not is_chestnut(t)[0]
    for g in (gen_chestnut(4, [(0, 1)]), gen_chestnut(6, [(0, 1), (2, 1)])):
        assert is_chestnut(g)[0] and not is_tree(g)


def test_used_edges_cover_small_graphs(path_graph, c4_chestnut):
    assert used_edges_bounded(path_graph, Bounds(1, 0)).used == set(path_graph.edges)
    assert used_edges_bounded(c4_chestnut, Bounds(1, 0)).used == set(c4_chestnut.edges)


def test_used_edges_monotone_in_bounds(fig1_like):
    small = used_edges_bounded(fig1_like, Bounds(1, 0)).used
    larger = used_edges_bounded(fig1_like, Bounds(2, 1)).used
    assert small <= larger


def test_impervious_path_found(fig1_like):
    report = impervious_paths_bounded(fig1_like, Bounds(1, 0))
    assert report.paths == (("h", "i", "j", "k"),)
    assert report.complete
    assert "bounded" in report.caveat


def test_no_impervious_paths_on_small_graphs(path_graph, c4_chestnut):
    assert impervious_paths_bounded(path_graph, Bounds(1, 0)).paths == ()
    assert impervious_paths_bounded(c4_chestnut, Bounds(1, 0)).paths == ()


def test_graph_determinism_bounded_tree(path_graph):
    ok, witnesses = graph_determinism_bounded(path_graph, "strong", Bounds(2, 2))
    assert ok and not witnesses


def test_graph_determinism_bounded_chestnut(c4_chestnut):
    ok, witnesses = graph_determinism_bounded(c4_chestnut, "strong", Bounds(2, 1))
    assert not ok
    assert witnesses[0].burst == "(1,1)|1(1,1)!"
    # single-soliton bursts keep the chestnut strongly deterministic
    assert graph_determinism_bounded(c4_chestnut, "strong", Bounds(1, 0))[0]
    assert graph_determinism_bounded(c4_chestnut, "det", Bounds(1, 0))[0]


def test_graph_determinism_bounded_perfect(c4_chestnut):
    assert graph_determinism_bounded(c4_chestnut, "perfect", Bounds(2, 1))[0]
    ok, witnesses = graph_determinism_bounded(c4_chestnut, "perfect", Bounds(3, 1))
    assert not ok
    assert witnesses[0].kind == "multiple-perfect-trails"


def test_graph_determinism_rejects_unknown_kind(path_graph):
    with pytest.raises(ValueError):
        graph_determinism_bounded(path_graph, "weird", Bounds(1, 0))


def test_random_trees_strongly_deterministic():
    for seed in range(8):
        t = gen_tree(6, seed)
        assert graph_determinism_bounded(t, "strong", Bounds(2, 1))[0], t


def test_generated_chestnuts_not_strongly_deterministic():
    for g in (gen_chestnut(4, [(0, 1)]), gen_chestnut(6, [(0, 1)]),
              gen_chestnut(6, [(0, 2), (2, 1)])):
        ok, witnesses = graph_determinism_bounded(g, "strong", Bounds(2, 1))
        assert not ok and witnesses


def test_classify_report_round_trip(c4_chestnut):
    report = classify_report(c4_chestnut, Bounds(1, 0))
    d = report.to_dict()
    assert d["is_chestnut"] and not d["is_tree"]
    assert d["bounds"] == {"max_burst_length": 1, "max_gap": 0}
    assert d["indecomposable_bounded"] is True
    assert d["unused_edges_bounded"] == []
    assert d["complete"] is True


def test_classify_report_fig1(fig1_like):
    report = classify_report(fig1_like, Bounds(1, 0))
    assert not report.is_tree and not report.is_chestnut
    ok, bounds = report.indecomposable_bounded
    assert not ok
    assert report.impervious_paths == (("h", "i", "j", "k"),)
    assert sorted(report.unused_edges_bounded) == [("h", "i"), ("i", "j"), ("j", "k")]


def test_bounds_validation():
    with pytest.raises(ValueError):
        Bounds(0, 0)
    with pytest.raises(ValueError):
        Bounds(1, -1)


def test_resource_cap_flags_partial_result(c4_chestnut, monkeypatch):
    monkeypatch.setenv("MULTISOLITON_MAX_CONFIGS", "3")
    report = used_edges_bounded(c4_chestnut, Bounds(2, 1))
    assert not report.complete
