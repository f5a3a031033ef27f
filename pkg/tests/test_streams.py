"""Strictly increasing index streams and their wire names."""

import pytest
from hypothesis import given, strategies as st

from schreier_lab.streams import IndexStream, STREAM_CATALOG, parse_stream


def test_builtin_values():
    assert IndexStream.all_indices().prefix(5) == (1, 2, 3, 4, 5)
    assert IndexStream.shift(3).prefix(4) == (4, 5, 6, 7)
    assert IndexStream.cubes().prefix(4) == (1, 8, 27, 64)
    assert IndexStream.evens().prefix(4) == (2, 4, 6, 8)


def test_element_is_one_indexed():
    assert IndexStream.cubes().element(3) == 27
    with pytest.raises(IndexError):
        IndexStream.cubes().element(0)


def test_drop():
    M = IndexStream.all_indices().drop(2)
    assert M.prefix(3) == (3, 4, 5)
    assert M.drop(1).prefix(2) == (4, 5)
    assert IndexStream.cubes().drop(1).element(1) == 8


def test_compose():
    # element(n) of the outer stream at the positions the inner one picks
    M = IndexStream.evens().compose(IndexStream.evens())
    assert M.prefix(3) == (4, 8, 12)
    N = IndexStream.cubes().compose(IndexStream.shift(1))
    assert N.prefix(3) == (8, 27, 64)


def test_index_of_inverts_element():
    for M in (IndexStream.all_indices(), IndexStream.shift(4),
              IndexStream.cubes(), IndexStream.evens().drop(3)):
        for n in range(1, 12):
            assert M.index_of(M.element(n)) == n
    assert IndexStream.cubes().index_of(9) is None
    assert IndexStream.evens().index_of(7) is None


def test_contains():
    assert 27 in IndexStream.cubes()
    assert 28 not in IndexStream.cubes()
    assert 5 in IndexStream.shift(4)
    assert 4 not in IndexStream.shift(4)


def test_explicit():
    # Past the listed prefix the stream continues as n + tail_shift.
    M = IndexStream.explicit((2, 5, 9), 9)
    assert M.prefix(5) == (2, 5, 9, 13, 14)
    with pytest.raises(ValueError):
        IndexStream.explicit((5, 2), 5)  # not increasing
    with pytest.raises(ValueError):
        IndexStream.explicit((2, 5), 2)  # tail collides with the prefix


def test_custom():
    M = IndexStream.custom(lambda n: n * n, "squares")
    assert M.prefix(4) == (1, 4, 9, 16)
    assert M.name == "custom:squares"
    decreasing = IndexStream.custom(lambda n: 10 - n, "down")
    with pytest.raises(ValueError):
        decreasing.prefix(3)


def test_parse_stream():
    assert parse_stream("all").prefix(2) == (1, 2)
    assert parse_stream("shift:2").prefix(2) == (3, 4)
    assert parse_stream("cubes").element(2) == 8
    assert parse_stream("evens").element(2) == 4
    for bad in ("", "unknown", "shift", "shift:x", "shift:-1"):
        with pytest.raises(ValueError):
            parse_stream(bad)


def test_names_round_trip():
    for name in ("all", "shift:5", "cubes", "evens"):
        assert parse_stream(name).name == name
    assert "shift:<k>" in STREAM_CATALOG


def test_value_equality():
    assert parse_stream("shift:2") == parse_stream("shift:2")
    assert parse_stream("shift:2") != parse_stream("shift:3")
    assert len({parse_stream("cubes"), parse_stream("cubes")}) == 1
    assert IndexStream.all_indices().drop(2) == IndexStream.all_indices().drop(2)


_STREAMS = st.sampled_from([IndexStream.all_indices(), IndexStream.shift(2),
                            IndexStream.cubes(), IndexStream.evens(),
                            IndexStream.all_indices().drop(5)])


@given(M=_STREAMS, n=st.integers(min_value=1, max_value=200))
def test_strictly_increasing(M, n):
    assert M.element(n) < M.element(n + 1)


@given(M=_STREAMS, k=st.integers(min_value=0, max_value=20),
       n=st.integers(min_value=1, max_value=50))
def test_drop_is_a_shift_of_positions(M, k, n):
    assert M.drop(k).element(n) == M.element(n + k)
