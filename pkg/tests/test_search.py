"""Exact Turan numbers and the three extremal searches against references."""

import random
from itertools import product

import pytest

from rturan import (
    ExtremalQuery,
    Graph,
    PatternFamily,
    extremal_min,
    extremal_prod,
    extremal_sum,
    is_rainbow_free,
    parse_pattern,
    turan_exact,
    turan_extremal,
    contains_subgraph,
)

FAM = lambda *names: PatternFamily.from_graphs([parse_pattern(s) for s in names])
Q = ExtremalQuery


# -- plain Turan numbers -----------------------------------------------


def test_turan_anchor_values():
    assert turan_exact(5, parse_pattern("K3")) == 6  # Mantel floor(25/4)
    assert turan_exact(4, parse_pattern("M2")) == 3
    for n in (2, 5, 8):
        assert turan_exact(n, parse_pattern("K2")) == 0
    assert turan_exact(4, parse_pattern("K3")) == 4
    assert turan_exact(7, parse_pattern("K3")) == 12


def test_turan_witness_is_extremal_and_free():
    for name, n in (("K3", 6), ("M2", 6), ("P4", 7), ("S3", 8)):
        f = parse_pattern(name)
        value, g = turan_extremal(n, f)
        assert g.n == n and g.edge_count() == value
        assert not contains_subgraph(g, f)


def test_turan_matches_direct_enumeration():
    rng = random.Random(17)
    pats = [parse_pattern(s) for s in ("K3", "M2", "P3", "P4", "S2", "S3", "K2,2")]
    pairs_cache = {}
    for _ in range(25):
        n = rng.randint(1, 5)
        f = rng.choice(pats)
        pairs = pairs_cache.setdefault(
            n, [(u, v) for u in range(n) for v in range(u + 1, n)]
        )
        best = 0
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            if not contains_subgraph(g, f):
                best = max(best, g.edge_count())
        assert turan_exact(n, f) == best


def test_turan_edge_cases():
    assert turan_exact(3, parse_pattern("E4")) == 3  # pattern cannot fit
    assert turan_exact(4, parse_pattern("E4")) == -1  # nothing avoids it
    with pytest.raises(ValueError):
        turan_exact(11, parse_pattern("K3"))


# -- acceptance-grid values (fast rows; full set in test_acceptance) ----


def test_min_examples():
    assert extremal_min(Q("min", 4, 2, FAM("M2"))).value == 3
    assert extremal_min(Q("min", 4, 3, FAM("K3", "M2"))).value == 3
    assert extremal_min(Q("min", 3, 2, FAM("M2"))).value == 3  # M2 cannot embed


def test_sum_examples():
    assert extremal_sum(Q("sum", 4, 3, FAM("K3"))).value == 12
    assert extremal_sum(Q("sum", 5, 3, FAM("K3"))).value == 20
    assert extremal_sum(Q("sum", 5, 2, FAM("P3"))).value == 10


def test_prod_examples():
    assert extremal_prod(Q("prod", 4, 2, FAM("M2"))).value == 9
    assert extremal_prod(Q("prod", 4, 3, FAM("M2"))).value == 27
    assert extremal_prod(Q("prod", 3, 2, FAM("E1"))).value == 0


def test_infeasible_family_conventions():
    r = extremal_min(Q("min", 4, 2, FAM("E1")))
    assert r.value == -1 and r.witness is None and r.exact
    r = extremal_sum(Q("sum", 4, 2, FAM("E1")))
    assert r.value == 0 and r.witness is None
    r = extremal_prod(Q("prod", 4, 2, FAM("E1")))
    assert r.value == 0 and r.witness is None


def test_unconstrained_family_shortcut():
    # members needing more colors or vertices than available never bite
    r = extremal_sum(Q("sum", 3, 2, FAM("K3")))  # K3 needs 3 colors
    assert r.value == 6 and r.witness.edge_counts() == (3, 3)
    r = extremal_min(Q("min", 5, 3, FAM("M3")))  # M3 needs 6 vertices
    assert r.value == 10


# -- reference enumeration agreement ------------------------------------


def _reference_all_collections(n, t, members):
    """No-pruning, no-symmetry sweep over every collection.

    Returns (best_min, best_sum, best_prod) over rainbow-free collections,
    where freeness is checked per deduplicated embedding with an explicit
    injective color assignment search.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    P = len(pairs)
    pidx = {p: i for i, p in enumerate(pairs)}

    member_embeddings = []
    edgeless_hit = False
    from itertools import permutations as perms

    for f in members:
        if f.edge_count() == 0:
            if f.n <= n:
                edgeless_hit = True
            continue
        if f.n > n:
            continue
        seen = set()
        for vmap in perms(range(n), f.n):
            es = frozenset(
                pidx[(min(vmap[a], vmap[b]), max(vmap[a], vmap[b]))]
                for a, b in f.edges()
            )
            seen.add(es)
        member_embeddings.append([sorted(es) for es in seen])

    def sdr(masks, idx, used):
        if idx == len(masks):
            return True
        m = masks[idx] & ~used
        while m:
            low = m & -m
            if sdr(masks, idx + 1, used | low):
                return True
            m ^= low
        return False

    best_min = best_sum = best_prod = None
    for combo in product(range(1 << P), repeat=t):
        if edgeless_hit:
            break
        pair_colors = [0] * P
        for ci, g in enumerate(combo):
            for p in range(P):
                if g >> p & 1:
                    pair_colors[p] |= 1 << ci
        free = True
        for embeddings in member_embeddings:
            for es in embeddings:
                masks = [pair_colors[p] for p in es]
                if all(masks) and sdr(masks, 0, 0):
                    free = False
                    break
            if not free:
                break
        if not free:
            continue
        counts = [bin(g).count("1") for g in combo]
        s = sum(counts)
        mn = min(counts)
        pr = 1
        for c in counts:
            pr *= c
        best_min = mn if best_min is None else max(best_min, mn)
        best_sum = s if best_sum is None else max(best_sum, s)
        best_prod = pr if best_prod is None else max(best_prod, pr)
    return best_min, best_sum, best_prod


FAMILIES = ("{M2}", "{K3}", "{K3,M2}", "{P3}")


@pytest.mark.parametrize("famtext", FAMILIES)
def test_pruned_search_agrees_with_reference(famtext):
    from rturan import parse_family

    fam = parse_family(famtext)
    for n in range(1, 5):
        for t in range(1, 4):
            ref_min, ref_sum, ref_prod = _reference_all_collections(n, t, fam.members)
            got_min = extremal_min(Q("min", n, t, fam))
            got_sum = extremal_sum(Q("sum", n, t, fam))
            got_prod = extremal_prod(Q("prod", n, t, fam))
            if ref_min is None:
                assert got_min.value == -1 and got_sum.value == 0 and got_prod.value == 0
            else:
                assert got_min.value == ref_min, (famtext, n, t)
                assert got_sum.value == ref_sum, (famtext, n, t)
                assert got_prod.value == ref_prod, (famtext, n, t)


# -- result invariants ---------------------------------------------------


def test_witnesses_are_free_and_attain_value():
    cases = [
        ("min", 4, 3, FAM("K3", "M2")),
        ("sum", 5, 3, FAM("K3")),
        ("prod", 4, 3, FAM("M2")),
        ("min", 5, 2, FAM("M2")),
        ("sum", 4, 2, FAM("P3")),
    ]
    for mode, n, t, fam in cases:
        fn = {"min": extremal_min, "sum": extremal_sum, "prod": extremal_prod}[mode]
        res = fn(Q(mode, n, t, fam))
        assert res.exact
        assert is_rainbow_free(res.witness, fam)
        counts = res.witness.edge_counts()
        if mode == "min":
            assert min(counts) >= res.value
        elif mode == "sum":
            assert sum(counts) == res.value
        else:
            pr = 1
            for c in counts:
                pr *= c
            assert pr == res.value


def test_min_value_nonincreasing_in_colors():
    for fam in (FAM("M2"), FAM("K3", "M2")):
        prev = None
        for t in (2, 3, 4):
            v = extremal_min(Q("min", 4, t, fam)).value
            if prev is not None:
                assert v <= prev
            prev = v


def test_results_are_deterministic_across_runs():
    for fn, mode in ((extremal_min, "min"), (extremal_sum, "sum"), (extremal_prod, "prod")):
        a = fn(Q(mode, 4, 3, FAM("K3", "M2")))
        b = fn(Q(mode, 4, 3, FAM("K3", "M2")))
        assert a.value == b.value and a.nodes == b.nodes
        assert a.witness == b.witness


def test_budget_flags_inexact():
    res = extremal_sum(Q("sum", 5, 3, FAM("K3"), budget=50))
    assert not res.exact
    assert res.witness is not None
    assert res.value <= 20


def test_turan_budget_error():
    from rturan import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        turan_exact(8, parse_pattern("K3"), budget=10)


def test_env_budget_override(monkeypatch):
    from rturan import default_budget

    monkeypatch.setenv("RTURAN_BUDGET", "12345")
    assert default_budget() == 12345
    monkeypatch.setenv("RTURAN_BUDGET", "junk")
    assert default_budget() > 12345
    monkeypatch.delenv("RTURAN_BUDGET", raising=False)
    assert default_budget() > 12345


def test_query_validation():
    with pytest.raises(ValueError):
        Q("max", 4, 2, FAM("M2"))
    with pytest.raises(ValueError):
        Q("min", 13, 2, FAM("M2"))
    with pytest.raises(ValueError):
        Q("sum", 4, 7, FAM("M2"))
