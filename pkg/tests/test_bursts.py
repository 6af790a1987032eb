"""Burst parsing, printing, position maps and binding."""

from __future__ import annotations

import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multisoliton.bursts import (
    Burst,
    BurstBindError,
    BurstParseError,
    bind_burst,
    burst_length,
    burst_universe,
    initial_position_map,
    is_final,
    parse_burst,
    parse_burst_set,
)


def test_parse_single_pair():
    b = parse_burst("(1,2)!")
    assert b.pairs == (("1", "2"),)
    assert b.gaps == ()
    assert burst_length(b) == 1


def test_parse_two_solitons():
    b = parse_burst("(1,1)|1(1,1)!")
    assert b.pairs == (("1", "1"), ("1", "1"))
    assert b.gaps == (1,)


def test_parse_three_solitons():
    b = parse_burst("(1,1)|3(3,1)|1(3,1)!")
    assert burst_length(b) == 3
    assert b.gaps == (3, 1)


def test_parse_ignores_whitespace():
    assert parse_burst(" ( 1 , 2 ) ! ") == parse_burst("(1,2)!")


@pytest.mark.parametrize(
    "text",
    ["", "(1,2)", "(1,2", "(1;2)!", "(1,2)|(3,4)!", "(1,2)!x", "(1,2)|-1(3,4)!", "!"],
)
def test_parse_rejects_bad_syntax(text):
    with pytest.raises(BurstParseError):
        parse_burst(text)


def test_text_is_canonical():
    b = Burst((("1", "1"), ("3", "1"), ("3", "1")), (3, 1))
    assert b.text() == "(1,1)|3(3,1)|1(3,1)!"
    assert parse_burst(b.text()) == b


def test_zero_length_rejected():
    with pytest.raises(ValueError):
        Burst((), ())


def test_burst_set_file():
    bursts = parse_burst_set("# comment\n(1,2)!\n\n(2,1)!  # inline\n")
    assert [b.text() for b in bursts] == ["(1,2)!", "(2,1)!"]


def test_initial_position_map_reference_table():
    pairs = tuple((f"n{i}", f"x{i}") for i in range(1, 6))
    b = Burst(pairs, (0, 3, 1, 0))
    assert initial_position_map(b) == ("n1", "n2", 3, 4, 4)


def test_initial_position_map_single():
    assert initial_position_map(parse_burst("(1,2)!")) == ("1",)


def test_initial_position_map_leading_gap():
    assert initial_position_map(parse_burst("(1,1)|1(1,1)!")) == ("1", 1)


def test_initial_position_map_all_zero_gaps():
    b = Burst((("1", "2"), ("2", "1"), ("1", "1")), (0, 0))
    assert initial_position_map(b) == ("1", "2", "1")


def test_is_final():
    assert is_final((0, 0))
    assert not is_final(("a", 0))
    assert not is_final((1,))
    # a node that happens to be named "0" is still a node
    assert not is_final(("0",))


def test_bind_checks_ports(path_graph):
    bind_burst(parse_burst("(1,2)!"), path_graph)
    with pytest.raises(BurstBindError, match="interior"):
        bind_burst(parse_burst("(a,2)!"), path_graph)
    with pytest.raises(BurstBindError, match="unknown"):
        bind_burst(parse_burst("(7,2)!"), path_graph)


def test_bind_allows_equal_entry_and_exit(c4_chestnut):
    bind_burst(parse_burst("(1,1)!"), c4_chestnut)


def test_universe_counts_and_order():
    universe = burst_universe(["1", "2"], 2, 1)
    assert len(universe) == 4 + 16 * 2
    assert universe[0].text() == "(1,1)!"
    lengths = [b.length for b in universe]
    assert lengths == sorted(lengths)
    assert len(set(universe)) == len(universe)


names = st.text(alphabet=string.ascii_lowercase + string.digits, min_size=1, max_size=3)


@st.composite
def bursts(draw):
    m = draw(st.integers(min_value=1, max_value=4))
    pairs = tuple((draw(names), draw(names)) for _ in range(m))
    gaps = tuple(draw(st.integers(min_value=0, max_value=5)) for _ in range(m - 1))
    return Burst(pairs, gaps)


@settings(max_examples=120, deadline=None)
@given(bursts())
def test_print_parse_identity(b):
    assert parse_burst(b.text()) == b


@settings(max_examples=120, deadline=None)
@given(bursts())
def test_initial_map_shape(b):
    pm = initial_position_map(b)
    assert len(pm) == b.length
    r = next((i for i, k in enumerate(b.gaps) if k > 0), b.length - 1)
    for i, p in enumerate(pm):
        if i <= r:
            assert p == b.pairs[i][0]
        else:
            assert isinstance(p, int) and p >= 1
    countdowns = [p for p in pm if isinstance(p, int)]
    assert countdowns == sorted(countdowns)
