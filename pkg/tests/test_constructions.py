from itertools import combinations
from math import isqrt

import pytest

from hypercover.constructions import (FAMILIES, claimed_c1, construct, construct_f5_lower,
                                      construct_gs3_blocks, construct_gs3_lower, construct_k113_lower,
                                      construct_s3_lower, construct_tp3_lower,
                                      construct_trivial_intersecting, construct_turan_3partite,
                                      exceeds_f5_lower, f5_lower_bound, f5_part_size, f5_upper_bound,
                                      steiner_triple_system)
from hypercover.core import degree, min_i_degree
from hypercover.embedding import find_rooted_copy, has_covering, is_free
from hypercover.patterns import PatternId


def test_f5_construction_at_100():
    c = construct_f5_lower(100)
    assert f5_part_size(100) == 34
    assert c.vertex == 0
    assert degree(c.graph, {0}) == 34 * 34
    assert min_i_degree(c.graph, 1) > 1108
    assert find_rooted_copy(c.graph, "f5", 0) is None


def test_f5_construction_parts_and_balance():
    for n in (5, 12, 30, 77):
        a = f5_part_size(n)
        assert a == isqrt(2 * n * n) // 4 - 1
        c = construct_f5_lower(n)
        z = n - 1 - 2 * max(a, 0)
        Z = set(range(n - z, n))
        X = set(range(1, 1 + a))
        Y = set(range(1 + a, 1 + 2 * a))
        ex = sum(1 for e in c.graph.edge_list() if len(set(e) & X) == 1 and len(set(e) & Z) == 2)
        ey = sum(1 for e in c.graph.edge_list() if len(set(e) & Y) == 1 and len(set(e) & Z) == 2)
        if a:
            assert abs(ex // a - ey // a) <= 1
            assert ex // a + ey // a == z * (z - 1) // 2


def test_f5_degenerate_small_case():
    c = construct_f5_lower(5)
    assert f5_part_size(5) == 0
    assert c.graph.edge_list() == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert exceeds_f5_lower(5, min_i_degree(c.graph, 1))
    with pytest.raises(ValueError):
        construct_f5_lower(4)


def test_exact_f5_comparison():
    # n^2/8 - sqrt(2) n at n = 100 is about 1108.58
    assert exceeds_f5_lower(100, 1109) and not exceeds_f5_lower(100, 1108)
    assert f5_lower_bound(100) == 1108 and f5_upper_bound(100) == 1375
    for n in range(1, 200):
        for d in (f5_lower_bound(n), f5_lower_bound(n) + 1):
            assert exceeds_f5_lower(n, d) == (d > n * n / 8 - 2 ** 0.5 * n)


def test_trivial_intersecting():
    c = construct_trivial_intersecting(13)
    assert min_i_degree(c.graph, 1) == 11
    assert find_rooted_copy(c.graph, "lp3", 0) is None
    assert find_rooted_copy(construct_trivial_intersecting(14).graph, "gp3", 0) is None
    small = construct_trivial_intersecting(4).graph
    assert small.m == 3 and min_i_degree(small, 1) == 2


def test_tp3_examples():
    six = construct_tp3_lower(6)
    assert min_i_degree(six.graph, 1) == 4 and six.vertex == 5
    assert find_rooted_copy(six.graph, "tp3", 5) is None
    ten = construct_tp3_lower(10)
    assert min_i_degree(ten.graph, 1) == 9 and find_rooted_copy(ten.graph, "tp3", ten.vertex) is None


def test_tp3_blowup_with_two_blocks_has_no_transversals():
    # u keeps degree 6, but block vertices only lie in their two edges through u
    c = construct_tp3_lower(7)
    assert c.graph.m == 6 and degree(c.graph, {c.vertex}) == 6
    assert min_i_degree(c.graph, 1) == 2
    assert find_rooted_copy(c.graph, "tp3", c.vertex) is None


def test_k113_wheel():
    c = construct_k113_lower(9)
    assert c.vertex == 8 and degree(c.graph, {8}) == 8
    assert degree(c.graph, {0}) == 8
    assert has_covering(c.graph, "k113").uncovered == [8]


def test_s3_construction():
    c = construct_s3_lower(11)
    assert min_i_degree(c.graph, 1) == 10
    assert degree(c.graph, {10}) == 36
    assert c.vertex == 9 and find_rooted_copy(c.graph, "s3", 9) is None


def test_gs3_construction():
    for n in (13, 14, 15, 23, 24, 35, 40):
        c = construct_gs3_lower(n)
        assert min_i_degree(c.graph, 1) == (n - 1) // 2
        assert degree(c.graph, {0}) == (n - 1) // 2
        assert find_rooted_copy(c.graph, "gs3", 0) is None


def test_block_gs3_graph_covers_its_apex():
    c = construct_gs3_blocks(13)
    assert min_i_degree(c.graph, 1) == 6
    emb = find_rooted_copy(c.graph, "gs3", 0)
    assert emb is not None and 0 in emb


@pytest.mark.parametrize("v", [7, 9, 13, 15, 19, 21, 25, 27, 33, 45, 69])
def test_steiner_triple_systems(v):
    blocks = steiner_triple_system(v).tolist()
    pairs = [p for b in blocks for p in combinations(b, 2)]
    assert len(pairs) == len(set(pairs)) == v * (v - 1) // 2
    with pytest.raises(ValueError):
        steiner_triple_system(v + 1)


def test_turan_examples():
    nine = construct_turan_3partite(9).graph
    assert nine.m == 27 and is_free(nine, "f5")
    assert construct_turan_3partite(4).graph.m == 2
    assert min_i_degree(construct_turan_3partite(12).graph, 1) == 16
    with pytest.raises(ValueError):
        construct_turan_3partite(2)


def test_claimed_values():
    assert claimed_c1(PatternId.TP3, 10).value == 9
    assert claimed_c1(PatternId.GS3, 15).value == 7
    f5 = claimed_c1(PatternId.F5, 100)
    assert (f5.kind, f5.lower, f5.upper) == ("open", 1108, 1375)
    assert f5.admits(1200) and not f5.admits(1108) and not f5.admits(1375)
    assert claimed_c1(PatternId.LP3, 12).kind == "not-asserted"
    assert claimed_c1(PatternId.C6, 50).kind == "not-asserted"
    assert claimed_c1(PatternId.K4minus, 50).kind == "not-asserted"
    assert claimed_c1("gp3", 14).valid_from == 14


def test_construct_dispatch():
    for family in FAMILIES:
        c = construct(family, 20)
        assert c.family == family and c.n == 20
    with pytest.raises(ValueError):
        construct("k5", 10)
