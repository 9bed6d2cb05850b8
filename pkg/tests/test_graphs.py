"""Graph container, formats, PRNG, and fixture constructions."""

import networkx as nx
import pytest

from walkiso import (
    Graph,
    GraphParseError,
    Permutation,
    SplitMix64,
    apply_permutation,
    complete_graph,
    connected_components,
    contains_triangle,
    cycle_graph,
    fixture_graph,
    induced_subgraph,
    is_connected,
    neighborhood_subgraph,
    parse_edge_list,
    parse_graph6,
    parse_graph_auto,
    path_graph,
    petersen_graph,
    random_graph,
    random_permutation,
    rook_4x4_graph,
    shrikhande_graph,
    write_edge_list,
    write_graph6,
)


def test_graph_basic_accessors():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.n == 4
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert not g.has_edge(0, 2)
    assert g.degree(1) == 2
    assert g.neighbors(1) == [0, 2]
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.edge_count == 3
    assert g.degree_sequence() == (1, 1, 2, 2)
    assert g.matrix()[0] == [0, 1, 0, 0]


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(0, ())
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0b10))  # loop on vertex 0
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_matrix([[0, 1], [1, 0], [0, 0]])


def test_from_matrix_round_trip():
    g = Graph.from_edges(5, [(0, 4), (1, 2), (2, 3)])
    assert Graph.from_matrix(g.matrix()) == g


def test_permutation():
    p = Permutation((2, 0, 1))
    assert p(0) == 2 and p(2) == 1
    assert p.inverse().mapping == (1, 2, 0)
    assert Permutation.identity(3).mapping == (0, 1, 2)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_apply_permutation_moves_edges():
    g = Graph.from_edges(3, [(0, 1)])
    h = apply_permutation(g, Permutation((2, 0, 1)))
    # vertex 0 -> 2, vertex 1 -> 0, so the edge lands on (0, 2)
    assert h.edges() == [(0, 2)]


def test_splitmix64_reference_vectors():
    # published reference outputs of SplitMix64 for seed 0
    sm = SplitMix64(0)
    assert [sm.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_random_graph_deterministic_and_distinct():
    a = random_graph(12, 0.5, 7)
    b = random_graph(12, 0.5, 7)
    c = random_graph(12, 0.5, 8)
    assert a == b
    assert a != c
    assert random_graph(10, 0.0, 3).edge_count == 0
    assert random_graph(10, 1.0, 3).edge_count == 45


def test_random_graph_edge_rate():
    g = random_graph(60, 0.3, 11)
    rate = 2 * g.edge_count / (60 * 59)
    assert 0.2 < rate < 0.4


def test_random_permutation_is_bijection():
    for seed in range(5):
        p = random_permutation(9, seed)
        assert sorted(p.mapping) == list(range(9))
    assert random_permutation(9, 1).mapping == random_permutation(9, 1).mapping


def test_connectivity_helpers():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert not is_connected(g)
    assert connected_components(g) == [[0, 1, 2], [3, 4]]
    assert is_connected(path_graph(6))
    assert is_connected(Graph(1, (0,)))


def test_induced_subgraph():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    sub = induced_subgraph(g, [0, 1, 4])
    assert sub.n == 3
    assert sub.edges() == [(0, 1), (0, 2)]


def test_neighborhood_and_triangle():
    k4 = complete_graph(4)
    nb = neighborhood_subgraph(k4, 0)
    assert nb.n == 3 and nb.edge_count == 3
    assert contains_triangle(k4)
    assert not contains_triangle(cycle_graph(5))
    assert not contains_triangle(neighborhood_subgraph(cycle_graph(5), 0))


def test_graph6_hand_values():
    assert write_graph6(complete_graph(3)) == "Bw"
    assert write_graph6(path_graph(3)) == "Bg"
    assert write_graph6(Graph(1, (0,))) == "@"
    assert parse_graph6("Bw") == complete_graph(3)
    assert parse_graph6("Bg") == path_graph(3)
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)


def test_graph6_errors_name_offsets():
    with pytest.raises(GraphParseError) as exc:
        parse_graph6("B" + chr(0x20))  # byte below the printable graph6 range
    assert exc.value.offset == 1
    with pytest.raises(GraphParseError):
        parse_graph6("B")  # truncated body
    with pytest.raises(GraphParseError):
        parse_graph6("Bw" + "w")  # trailing junk
    with pytest.raises(GraphParseError):
        parse_graph6("")


def test_graph6_padding_bits_checked():
    # K3 body uses 3 of 6 bits; set a padding bit and expect a parse error
    bad = "B" + chr(0x77 + 1)
    with pytest.raises(GraphParseError):
        parse_graph6(bad)


def test_graph6_round_trip_against_networkx():
    for seed in range(20):
        n = 2 + seed % 9
        g = random_graph(n, 0.4, seed)
        line = write_graph6(g)
        h = nx.from_graph6_bytes(line.encode())
        assert set(h.edges()) == set(g.edges())
        assert parse_graph6(nx.to_graph6_bytes(h, header=False).decode().strip()) == g


def test_graph6_long_form_boundary():
    # n = 62 uses the short form, n = 63 switches to the 4-byte length form
    for n in (61, 62, 63, 64, 70):
        g = random_graph(n, 0.2, n)
        line = write_graph6(g)
        assert parse_graph6(line) == g
        assert (line[0] == "~") == (n > 62)
        h = nx.from_graph6_bytes(line.encode())
        assert set(h.edges()) == set(g.edges())


def test_edge_list_round_trip():
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    text = write_edge_list(g)
    assert parse_edge_list(text) == g
    assert parse_graph_auto(text) == g
    assert parse_graph_auto("Bw\n") == complete_graph(3)


def test_edge_list_errors():
    with pytest.raises(GraphParseError):
        parse_edge_list("3 1\n0 0\n")  # self loop
    with pytest.raises(GraphParseError):
        parse_edge_list("3 2\n0 1\n0 1\n")  # duplicate
    with pytest.raises(GraphParseError):
        parse_edge_list("3 1\n0 5\n")  # out of range
    with pytest.raises(GraphParseError):
        parse_edge_list("3 2\n0 1\n")  # fewer edges than declared
    with pytest.raises(GraphParseError):
        parse_edge_list("")


def test_fixture_constructions():
    for name, n, deg in [("shrikhande", 16, 6), ("rook44", 16, 6),
                         ("petersen", 10, 3), ("k5", 5, 4),
                         ("path4", 4, None), ("cycle7", 7, 2)]:
        g = fixture_graph(name)
        assert g.n == n
        if deg is not None:
            assert set(g.degree_sequence()) == {deg}
    with pytest.raises(ValueError):
        fixture_graph("nonsense")
    with pytest.raises(ValueError):
        fixture_graph("cycle2")


def _common_neighbors(g, i, j):
    return len([v for v in g.neighbors(i) if g.has_edge(j, v)])


@pytest.mark.parametrize("builder", [shrikhande_graph, rook_4x4_graph])
def test_srg_16_6_2_2_parameters(builder):
    g = builder()
    assert g.n == 16
    assert set(g.degree_sequence()) == {6}
    for i in range(16):
        for j in range(i + 1, 16):
            common = _common_neighbors(g, i, j)
            assert common == 2, (i, j, common)


def test_srg_pair_not_isomorphic_via_networkx():
    a = nx.Graph(shrikhande_graph().edges())
    b = nx.Graph(rook_4x4_graph().edges())
    assert not nx.is_isomorphic(a, b)


def test_petersen_properties():
    g = petersen_graph()
    assert g.n == 10 and g.edge_count == 15
    assert not contains_triangle(g)
    # girth 5: no 4-cycles either
    for i in range(10):
        for j in range(i + 1, 10):
            if not g.has_edge(i, j):
                assert _common_neighbors(g, i, j) <= 1
