"""Walk-count tables, certificates, modular screening, profiles, refinement."""

import json

import pytest
import sympy

from walkiso import (
    DEFAULT_MODULUS,
    Graph,
    InvariantTable,
    SplitMix64,
    apply_permutation,
    certificate,
    compare_certificates,
    complete_graph,
    cycle_graph,
    extended_profile,
    neighbor_sum_refinement,
    path_graph,
    random_graph,
    random_permutation,
    walk_diagonal_table,
    walk_diagonal_table_mod,
    walk_matrix_powers,
)


def _count_walks(g, start, end, length):
    # independent oracle: explicit recursive enumeration of walks
    if length == 0:
        return 1 if start == end else 0
    return sum(_count_walks(g, v, end, length - 1) for v in g.neighbors(start))


def test_table_matches_walk_enumeration_oracle():
    for seed in range(6):
        g = random_graph(5, 0.6, seed)
        t = walk_diagonal_table(g, 5)
        for k in range(1, 6):
            for i in range(5):
                assert t.at(k, i) == _count_walks(g, i, i, k)


def test_matrix_powers_match_walk_enumeration_oracle():
    g = random_graph(4, 0.7, 3)
    powers = walk_matrix_powers(g, 4)
    for k in range(1, 5):
        for i in range(4):
            for j in range(4):
                assert powers[k - 1][i][j] == _count_walks(g, i, j, k)


def test_k3_and_path_hand_tables():
    assert walk_diagonal_table(complete_graph(3), 3).rows == (
        (0, 0, 0), (2, 2, 2), (2, 2, 2))
    # path 0-1-2: ends have one closed 2-walk, the center two; no odd closed walks
    assert walk_diagonal_table(path_graph(3), 3).rows == (
        (0, 0, 0), (1, 2, 1), (0, 0, 0))


def test_first_two_rows_are_degrees_and_zeros():
    g = random_graph(9, 0.5, 4)
    t = walk_diagonal_table(g, 3)
    assert t.rows[0] == tuple(0 for _ in range(9))
    assert t.rows[1] == tuple(g.degree(i) for i in range(9))


def test_entry_bound():
    # a closed k-walk fixes its start, leaving at most n^(k-1) choices
    g = random_graph(8, 0.9, 1)
    t = walk_diagonal_table(g, 10)
    for k in range(1, 11):
        for i in range(8):
            assert t.at(k, i) <= 8 ** (k - 1)


def test_kmax_validation():
    with pytest.raises(ValueError):
        walk_diagonal_table(complete_graph(3), 0)
    with pytest.raises(ValueError):
        walk_diagonal_table_mod(complete_graph(3), 3, 1)


def test_certificate_sorts_columns():
    c = certificate(walk_diagonal_table(path_graph(3), 3))
    assert c.rows == ((0, 1, 0), (0, 1, 0), (0, 2, 0))
    assert c.order.mapping == (0, 2, 1)  # center vertex sorts last


def test_certificate_invariance_under_relabeling():
    for seed in range(10):
        g = random_graph(8, 0.5, seed)
        p = random_permutation(8, 1000 + seed)
        h = apply_permutation(g, p)
        c1 = certificate(walk_diagonal_table(g, 8))
        c2 = certificate(walk_diagonal_table(h, 8))
        assert c1.rows == c2.rows


def test_compare_certificates_positions():
    c1 = certificate(walk_diagonal_table(complete_graph(3), 3))
    c2 = certificate(walk_diagonal_table(path_graph(3), 3))
    cmp = compare_certificates(c1, c2)
    assert not cmp.equal and cmp.position == 0
    assert compare_certificates(c1, c1).equal
    c3 = certificate(walk_diagonal_table(complete_graph(4), 4))
    assert compare_certificates(c1, c3).position == -1  # shape mismatch


def test_modular_table_matches_exact_mod():
    # screening table must be the exact table reduced entry by entry
    sm = SplitMix64(99)
    while True:
        m = (sm.next_u64() >> 3) | (1 << 60)
        if sympy.isprime(m):
            break
    for seed in range(5):
        g = random_graph(10, 0.5, seed)
        t = walk_diagonal_table(g, 10)
        tm = walk_diagonal_table_mod(g, 10, m)
        assert tm.modulus == m
        for k in range(1, 11):
            for i in range(10):
                assert tm.rows[k - 1][i] == t.at(k, i) % m


def test_modular_table_small_modulus():
    t = walk_diagonal_table_mod(complete_graph(3), 3, 97)
    assert t.rows == ((0, 0, 0), (2, 2, 2), (2, 2, 2))
    t2 = walk_diagonal_table_mod(complete_graph(4), 4, 2)
    exact = walk_diagonal_table(complete_graph(4), 4)
    assert all(t2.rows[k][i] == exact.rows[k][i] % 2
               for k in range(4) for i in range(4))


def test_default_modulus_is_mersenne_61():
    assert DEFAULT_MODULUS == (1 << 61) - 1
    assert sympy.isprime(DEFAULT_MODULUS)


def test_extended_profile_invariance():
    for seed in range(5):
        g = random_graph(7, 0.5, seed)
        p = random_permutation(7, 50 + seed)
        h = apply_permutation(g, p)
        assert (extended_profile(g, 7).sorted_signature()
                == extended_profile(h, 7).sorted_signature())


def test_extended_profile_tuples_stay_aligned():
    # each off-diagonal tuple tracks one target vertex across all powers
    g = path_graph(4)
    prof = extended_profile(g, 4)
    powers = walk_matrix_powers(g, 4)
    for i in range(4):
        expected = sorted(tuple(powers[k][i][j] for k in range(4))
                          for j in range(4) if j != i)
        assert list(prof.offdiag[i]) == expected
        assert prof.diagonals[i] == tuple(powers[k][i][i] for k in range(4))


def test_extended_profile_separates_cospectral_mates_sometimes():
    # the two 4-vertex graphs with equal degree sums but different structure
    a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    b = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert (extended_profile(a, 4).sorted_signature()
            != extended_profile(b, 4).sorted_signature())


def test_neighbor_sum_refinement_zero_rounds_identity():
    g = path_graph(4)
    colors = [(1,), (2,), (3,), (4,)]
    assert neighbor_sum_refinement(g, colors, 0) == [(1,), (2,), (3,), (4,)]


def test_neighbor_sum_refinement_splits_path_ends():
    g = path_graph(4)
    colors = [(g.degree(i),) for i in range(4)]
    refined = neighbor_sum_refinement(g, colors, 2)
    # ends see one degree-2 neighbor, centers see an end and a center
    assert refined[0] == refined[3]
    assert refined[1] == refined[2]
    assert refined[0] != refined[1]
    assert all(len(c) == 4 for c in refined)


def test_neighbor_sum_refinement_validation():
    g = path_graph(3)
    with pytest.raises(ValueError):
        neighbor_sum_refinement(g, [(1,)], 1)
    with pytest.raises(ValueError):
        neighbor_sum_refinement(g, [(1,), (1, 2), (1,)], 1)
    with pytest.raises(ValueError):
        neighbor_sum_refinement(g, [(1,), (1,), (1,)], -1)


def test_table_json_round_trip():
    g = random_graph(6, 0.5, 2)
    t = walk_diagonal_table(g, 6)
    obj = t.to_json_dict()
    text = json.dumps(obj)
    assert InvariantTable.from_json_dict(json.loads(text)) == t
    assert obj["modulus"] is None
    assert all(isinstance(x, str) for row in obj["d"] for x in row)


def test_modular_json_uses_decimal_strings():
    obj = walk_diagonal_table_mod(complete_graph(3), 3, 97).to_json_dict()
    assert obj["modulus"] == "97"
    with pytest.raises(ValueError):
        InvariantTable.from_json_dict(obj)  # modular tables are not exact tables


def test_certificate_json_shape():
    obj = certificate(walk_diagonal_table(path_graph(3), 3)).to_json_dict()
    assert obj["rows"] == [["0", "1", "0"], ["0", "1", "0"], ["0", "2", "0"]]
    assert obj["order"] == [0, 2, 1]
