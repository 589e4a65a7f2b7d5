"""Construction registry outputs, guards, and claimed closed-form values."""

import pytest

from rturan import (
    CONSTRUCTION_IDS,
    Collection,
    Graph,
    GuardViolated,
    InnerTooLarge,
    PatternFamily,
    build,
    certification_grid,
    claimed_value,
    describe,
    is_rainbow_free,
    meshulam_collection,
)


def test_registry_covers_all_ids():
    assert {cid for cid, _ in certification_grid()} == set(CONSTRUCTION_IDS)


def test_min_iii_example():
    info = describe("min.iii", {"n": 8, "t": 3, "p": 2})
    assert info.collection.edge_counts() == (7, 7, 7)
    # every color is the star K_{1,7}
    for i in range(1, 4):
        assert info.collection.graph(i).degree(0) == 7


def test_prod_matching_example():
    info = describe("prod.matching", {"n": 5, "t": 3, "s": 2})
    assert info.collection.edge_counts() == (10, 4, 4)
    value = 1
    for c in info.collection.edge_counts():
        value *= c
    assert value == 160 == claimed_value("prod.matching", {"n": 5, "t": 3, "s": 2})


def test_kpp_remark_example():
    info = describe("min.kpp-remark", {"n": 10, "t": 4, "s": 3, "p": 2})
    counts = info.collection.edge_counts()
    assert counts == info.expected_counts
    # advertised floor bound: (p-1 + floor((s-p+1)(p-1)/t)) (n-s)
    assert all(c >= 7 for c in counts)
    assert is_rainbow_free(info.collection, info.family)


def test_split_construction_uses_searched_inner():
    info = describe("min.i", {"n": 6, "t": 3, "s": 2, "f": "K3"})
    # deleting an independent set from a triangle leaves an edge, so the
    # inner collection on 2 vertices must stay empty
    assert info.collection.edge_counts() == (8, 8, 8)
    assert is_rainbow_free(info.collection, info.family)


def test_supplied_inner_is_validated():
    bad = Collection.from_edge_lists(3, [[(0, 1)], [], []])
    with pytest.raises(InnerTooLarge):
        describe("min.i", {"n": 6, "t": 3, "s": 2, "f": "K3", "inner": bad})
    good_shape = Collection.from_edge_lists(2, [[(0, 1)], [], []])
    with pytest.raises(GuardViolated):
        # a single edge on the 2-set is a rainbow copy of the inner K2 member
        describe("min.i", {"n": 6, "t": 3, "s": 2, "f": "K3", "inner": good_shape})


def test_guard_violations():
    with pytest.raises(GuardViolated):
        describe("min.i", {"n": 6, "t": 3, "s": 1, "f": "P4"})  # bipartite pattern
    with pytest.raises(GuardViolated):
        describe("min.ii", {"n": 6, "t": 4, "s": 2, "f": "K2,2"})  # p(f) <= s
    with pytest.raises(GuardViolated):
        describe("min.iv", {"n": 8, "t": 3, "f": "S3"})  # not balanced
    with pytest.raises(GuardViolated):
        describe("prod.star.gt", {"n": 12, "t": 4, "s": 2, "r": 3})  # t = s(r-1)
    with pytest.raises(GuardViolated):
        describe("prod.star.eq", {"n": 12, "t": 5, "s": 2, "r": 3})
    with pytest.raises(GuardViolated):
        describe("prod.star.lt", {"n": 12, "t": 5, "s": 2, "r": 3})  # t > s(r-1)
    with pytest.raises(GuardViolated):
        describe("prod.sm.bigstar", {"n": 12, "t": 5, "s": 2, "r": 4, "m": 2})  # m > s-1
    with pytest.raises(GuardViolated):
        describe("prod.sm.mixed", {"n": 12, "t": 5, "s": 3, "r": 3, "m": 2})  # m too big
    with pytest.raises(GuardViolated):
        describe("min.kpp-remark", {"n": 10, "t": 3, "s": 3, "p": 2})  # t < p*p
    with pytest.raises(KeyError):
        describe("nope", {})


def test_clique_star_rejects_star_patterns():
    for bad in ("S3", "P3", "M2", "K2"):
        with pytest.raises(GuardViolated):
            describe("prod.clique-star", {"n": 8, "t": 3, "s": 2, "f": bad})
    info = describe("prod.clique-star", {"n": 8, "t": 3, "s": 2, "f": "P4"})
    assert info.family is not None


def test_build_returns_collection():
    col = build("prod.star2", {"n": 12, "t": 3, "s": 2})
    assert isinstance(col, Collection)
    assert col.n == 12 and col.t == 3


def test_meshulam_collection_counts_and_freeness():
    for n, s, t in ((4, 1, 2), (6, 2, 3), (8, 3, 4)):
        col = meshulam_collection(n, s, t)
        expected = s * (n - s) + s * (s - 1) // 2
        assert all(c == expected for c in col.edge_counts())
        fam = PatternFamily.from_graphs([Graph.matching(s + 1)])
        assert is_rainbow_free(col, fam)
        assert expected == claimed_value("meshulam", {"n": n, "s": s})


def test_claimed_value_examples():
    assert claimed_value("meshulam", {"n": 5, "s": 2}) == 7
    assert claimed_value("prod.matching", {"n": 6, "t": 4, "s": 2}) == 1875
    assert claimed_value("sum.k3", {"n": 5, "s": 3}) == 20
    assert claimed_value("sum.k3", {"n": 5, "s": 2}) == 20  # 2 C(5,2)
    assert claimed_value("sum.k3", {"n": 6, "s": 4}) == 36  # 4 floor(36/4)
    assert claimed_value("sum.bipartite", {"n": 5, "f": "P3"}) == 10
    assert claimed_value("min.i", {"n": 4, "t": 3, "s": 1, "f": "K3"}) == 3
    assert claimed_value("min.ii", {"n": 6, "t": 4, "s": 1, "f": "K2,2"}) == 5
    assert claimed_value("min.iv", {"n": 8, "t": 3, "f": "P4"}) == 7
    with pytest.raises(GuardViolated):
        claimed_value("sum.bipartite", {"n": 5, "f": "K3"})
    with pytest.raises(KeyError):
        claimed_value("nope", {})


def test_general_sum_upper_formula():
    v = claimed_value(
        "sum.general-upper", {"n": 4, "t": 3, "f1": "K3", "rest": ["M2"]}
    )
    # inner two-color M2-free max sum is 6; ex(4, K3) = 4
    assert v == 6 + 1 * 4


def test_constructions_beat_nothing_silently():
    # spot-check that documented counts match built counts on a few rows
    for cid, params in certification_grid()[:8]:
        info = describe(cid, params)
        assert info.collection.edge_counts() == info.expected_counts, (cid, params)
