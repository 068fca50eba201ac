import pytest
from hypothesis import given, settings, strategies as st

from kgrundy.graph import Graph, cycle, er_random, hypercube, path
from kgrundy.graphio import (
    GraphFormat,
    GraphParseError,
    from_edge_list,
    from_graph6,
    parse,
    read_graph,
    read_graph6_file,
    serialize,
    to_graph6,
)


def test_graph6_example():
    g = from_graph6("D?{")
    # bits 000000 111100: vertex 4 adjacent to 0..3
    assert g.n == 5 and g.edges == ((0, 4), (1, 4), (2, 4), (3, 4))
    assert to_graph6(g) == "D?{"


def test_graph6_known_strings():
    # standard encodings of small named graphs
    # C4: (0,1),(0,2),(1,2),(0,3),(1,3),(2,3) -> 101101
    assert to_graph6(cycle(4)) == "Cl"
    assert to_graph6(path(3)) == "Bg"
    assert to_graph6(Graph(0)) == "?"
    assert to_graph6(Graph(1)) == "@"


def test_graph6_long_form():
    g = er_random(70, 0.1, seed=3)
    s = to_graph6(g)
    assert s[0] == "~" and from_graph6(s) == g


def test_graph6_header_accepted():
    assert from_graph6(">>graph6<<Cl") == cycle(4)


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("C r", 1),      # space is not a graph6 byte
    ("Crr", 1),      # body too long
    ("Bh", 1),       # P3 with a padding bit set
    (">>graph6<<C", 11),
])
def test_graph6_errors_carry_offset(text, offset):
    with pytest.raises(GraphParseError) as err:
        from_graph6(text)
    assert err.value.offset == offset
    assert "byte" in str(err.value)


def test_edge_list():
    assert from_edge_list("0 1\n1 2") == path(3)
    assert from_edge_list("# n 5\n0 1\n") == Graph(5, [(0, 1)])
    assert from_edge_list("# comment\n\n2 1\n") == Graph(3, [(1, 2)])


@pytest.mark.parametrize("text,offset", [
    ("1 1", 0),
    ("0 1\n1 0\n", 4),
    ("0 1\n1 x\n", 4),
    ("0 1 2", 0),
    ("0 -1", 0),
    ("# n 2\n0 5", 0),
])
def test_edge_list_errors(text, offset):
    with pytest.raises(GraphParseError) as err:
        from_edge_list(text)
    assert err.value.offset == offset


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 20), st.floats(0, 1), st.integers(0, 10**6))
def test_round_trips(n, p, seed):
    g = er_random(n, p, seed) if n else Graph(0)
    s6 = serialize(g, GraphFormat.GRAPH6)
    assert parse(s6, "g6") == g
    assert serialize(parse(s6)) == s6
    assert parse(serialize(g, "edges"), "edges") == g


def test_files(tmp_path):
    f = tmp_path / "two.g6"
    f.write_text("Cr\n\nBo\n")
    assert [name for name, _ in read_graph6_file(f)] == ["two.g6:1", "two.g6:3"]
    with pytest.raises(GraphParseError):
        read_graph(f)
    one = tmp_path / "q3.edges"
    one.write_text(serialize(hypercube(3), "edges"))
    assert read_graph(one) == hypercube(3)
    bad = tmp_path / "bad.g6"
    bad.write_text("Cr\nC!\n")
    with pytest.raises(GraphParseError, match="bad.g6:2"):
        list(read_graph6_file(bad))


def test_catalog_is_well_formed(catalog):
    assert len(catalog) == 996
    by_n = {}
    for _, g in catalog:
        assert g.is_connected()
        by_n[g.n] = by_n.get(g.n, 0) + 1
    # connected graphs up to isomorphism on 1..7 vertices (OEIS A001349)
    assert by_n == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
