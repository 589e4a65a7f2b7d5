"""Exhaustive extremal computations over rainbow-free collections.

Three objectives over collections (G_1..G_t) on n vertices avoiding every
rainbow copy from a forbidden family:

* min  - the largest e such that a free collection exists with every
         color holding at least e edges (decided by a feasibility
         threshold scan: "is min >= e achievable?" prunes much harder
         than direct maximization);
* sum  - the largest total edge count; the search space collapses to
         nested chains G_1 >= G_2 >= ... >= G_t, i.e. to multiplicity
         maps pairs -> {0..t}, which is lossless because the nesting
         transform preserves both per-pair multiplicities and freeness;
* prod - the largest product of edge counts; nesting does not preserve
         products, so this one searches full collections color by color.

Shared machinery: color-permutation symmetry is broken by nonincreasing
edge counts, vertex symmetry by keeping only prefixes that are minimal
under simultaneous vertex relabeling (checked against all n!
permutations, enabled up to n = 6), and every edge addition runs an
incremental rainbow check restricted to copies through the new
(pair, color).  Budgets count search nodes, never wall-clock time, so
results are bit-reproducible.

ex(n, F) for a single plain graph is computed by orderly generation:
F-free graphs are grown one vertex at a time and deduplicated by
canonical form, so each isomorphism class is extended exactly once.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from math import comb

from .graphcore import (
    Graph,
    PatternFamily,
    _canonical,
    contains_subgraph,
    matching_number_at_least,
)
from .collection import Collection, is_rainbow_free, _exists_using_pair

__all__ = [
    "BudgetExceeded",
    "ExtremalQuery",
    "ExtremalResult",
    "default_budget",
    "turan_exact",
    "turan_extremal",
    "extremal_min",
    "extremal_sum",
    "extremal_prod",
]

_FALLBACK_BUDGET = 20_000_000
_PI_PRUNE_MAX_N = 6  # vertex-symmetry pruning uses all n! permutations


class BudgetExceeded(RuntimeError):
    """Search node budget exhausted before the exact answer was proven."""


class _BudgetStop(Exception):
    """Internal signal: unwind to the entry point, keep the best so far."""


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def step(self):
        self.used += 1
        if self.used > self.limit:
            raise _BudgetStop


def default_budget() -> int:
    """Node budget: RTURAN_BUDGET from the environment, else a fixed default."""
    raw = os.environ.get("RTURAN_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return _FALLBACK_BUDGET


@dataclass(frozen=True)
class ExtremalQuery:
    mode: str  # "min" | "sum" | "prod"
    n: int
    t: int
    family: PatternFamily
    budget: int | None = None

    def __post_init__(self):
        if self.mode not in ("min", "sum", "prod"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 1 <= self.n <= 12:
            raise ValueError("full search supports 1 <= n <= 12")
        if self.t < 1:
            raise ValueError("need at least one color")
        if self.mode == "sum" and self.t > 6:
            raise ValueError("nested sum search supports t <= 6")
        if self.mode != "sum" and self.t > 6:
            raise ValueError("full search supports t <= 6")


@dataclass(frozen=True)
class ExtremalResult:
    value: int
    witness: Collection | None
    nodes: int
    exact: bool


def _split_family(family: PatternFamily, n: int, t: int):
    """(infeasible, enforceable members): edgeless members fitting the host
    make every collection non-free; members too big or needing more colors
    than exist can never have a copy and are dropped."""
    infeasible = any(f.edge_count() == 0 and f.n <= n for f in family)
    members = [
        f
        for f in family
        if f.edge_count() >= 1 and f.n <= n and f.edge_count() <= t
    ]
    return infeasible, members


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _pair_perm_tables(n: int) -> list[list[int]] | None:
    """For each vertex permutation, the induced permutation of pair indices."""
    if n > _PI_PRUNE_MAX_N:
        return None
    pairs = _pairs(n)
    index = {p: i for i, p in enumerate(pairs)}
    tables = []
    for perm in permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        tables.append(
            [index[(min(perm[u], perm[v]), max(perm[u], perm[v]))] for (u, v) in pairs]
        )
    return tables


class _CollectionSearch:
    """Color-by-color DFS state shared by the min and prod searches."""

    def __init__(self, n: int, t: int, members, budget: _Budget):
        self.n = n
        self.t = t
        self.members = members
        self.budget = budget
        self.pairs = _pairs(n)
        self.P = len(self.pairs)
        self.rows = [[0] * n for _ in range(t)]
        self.union = [0] * n
        self.cmasks = [0] * t
        self.perm_tables = _pair_perm_tables(n)

    def reset(self):
        for r in self.rows:
            for v in range(self.n):
                r[v] = 0
        self.union = [0] * self.n
        self.cmasks = [0] * self.t

    def try_add(self, color: int, idx: int) -> bool:
        """Add pair idx to the color unless it completes a rainbow copy."""
        u, v = self.pairs[idx]
        r = self.rows[color - 1]
        r[u] |= 1 << v
        r[v] |= 1 << u
        self.union[u] |= 1 << v
        self.union[v] |= 1 << u
        for f in self.members:
            if _exists_using_pair(self.n, self.rows, self.union, f, (u, v), color):
                self._remove(color, idx)
                return False
        self.cmasks[color - 1] |= 1 << idx
        return True

    def remove(self, color: int, idx: int):
        self.cmasks[color - 1] &= ~(1 << idx)
        self._remove(color, idx)

    def _remove(self, color: int, idx: int):
        u, v = self.pairs[idx]
        r = self.rows[color - 1]
        r[u] &= ~(1 << v)
        r[v] &= ~(1 << u)
        if not any(rows[u] >> v & 1 for rows in self.rows):
            self.union[u] &= ~(1 << v)
            self.union[v] &= ~(1 << u)

    def canonical_prefix(self, k: int) -> bool:
        """No vertex relabeling makes colors 1..k lexicographically smaller."""
        if self.perm_tables is None:
            return True
        cur = self.cmasks
        for table in self.perm_tables:
            for i in range(k):
                pm = 0
                m = cur[i]
                while m:
                    low = m & -m
                    pm |= 1 << table[low.bit_length() - 1]
                    m ^= low
                if pm != cur[i]:
                    if pm < cur[i]:
                        return False
                    break
        return True

    def snapshot(self) -> Collection:
        return Collection([Graph(self.n, tuple(r)) for r in self.rows])


# ---------------------------------------------------------------------
# mode = min


def extremal_min(q: ExtremalQuery) -> ExtremalResult:
    """Largest e with a rainbow-free collection keeping >= e edges per color."""
    if q.mode != "min":
        raise ValueError("query mode must be 'min'")
    budget = _Budget(q.budget if q.budget is not None else default_budget())
    infeasible, members = _split_family(q.family, q.n, q.t)
    cap = comb(q.n, 2)
    if infeasible:
        return ExtremalResult(-1, None, budget.used, True)
    if not members:
        full = Collection([Graph.complete(q.n)] * q.t)
        return ExtremalResult(cap, full, budget.used, True)
    searcher = _CollectionSearch(q.n, q.t, members, budget)
    lo, hi = 0, cap
    lo_witness = Collection([Graph.edgeless(q.n)] * q.t)
    exact = True
    try:
        while lo < hi:
            mid = (lo + hi + 1) // 2
            w = _feasible_min(searcher, mid)
            if w is not None:
                lo, lo_witness = mid, w
            else:
                hi = mid - 1
    except _BudgetStop:
        exact = False
    _check_witness(lo_witness, q.family)
    assert min(lo_witness.edge_counts()) >= lo
    return ExtremalResult(lo, lo_witness, budget.used, exact)


def _feasible_min(s: _CollectionSearch, e: int) -> Collection | None:
    if e > s.P:
        return None
    s.reset()

    def color_dfs(k: int, idx: int, count: int, cap: int) -> bool:
        s.budget.step()
        if count + (s.P - idx) < e:
            return False
        if idx == s.P:
            if not s.canonical_prefix(k):
                return False
            if k == s.t:
                return True
            if count < e:
                return False
            return color_dfs(k + 1, 0, 0, count)
        if count < cap and s.try_add(k, idx):
            if color_dfs(k, idx + 1, count + 1, cap):
                return True
            s.remove(k, idx)
        return color_dfs(k, idx + 1, count, cap)

    if color_dfs(1, 0, 0, s.P):
        return s.snapshot()
    return None


# ---------------------------------------------------------------------
# mode = sum (nested multiplicity search)


def extremal_sum(q: ExtremalQuery) -> ExtremalResult:
    """Largest total edge count over rainbow-free collections.

    Sound and complete over nested chains only: the nesting transform
    turns any free collection into a nested free collection with the
    same sum, so searching multiplicity maps loses nothing.
    """
    if q.mode != "sum":
        raise ValueError("query mode must be 'sum'")
    budget = _Budget(q.budget if q.budget is not None else default_budget())
    infeasible, members = _split_family(q.family, q.n, q.t)
    cap = comb(q.n, 2)
    if infeasible:
        return ExtremalResult(0, None, budget.used, True)
    if not members:
        full = Collection([Graph.complete(q.n)] * q.t)
        return ExtremalResult(cap * q.t, full, budget.used, True)

    n, t = q.n, q.t
    pairs = _pairs(n)
    P = len(pairs)
    rows = [[0] * n for _ in range(t)]
    best = 0
    best_rows = [list(r) for r in rows]
    exact = True

    def dfs(idx: int, total: int):
        nonlocal best, best_rows
        budget.step()
        if total + t * (P - idx) <= best:
            return
        if idx == P:
            if total > best:
                best = total
                best_rows = [list(r) for r in rows]
            return
        u, v = pairs[idx]
        bit_u, bit_v = 1 << v, 1 << u
        for mu in range(t, 0, -1):
            for i in range(mu):
                rows[i][u] |= bit_u
                rows[i][v] |= bit_v
            ok = not any(
                _exists_using_pair(n, rows, rows[0], f, (u, v), None) for f in members
            )
            if ok:
                dfs(idx + 1, total + mu)
            for i in range(mu):
                rows[i][u] &= ~bit_u
                rows[i][v] &= ~bit_v
        dfs(idx + 1, total)

    try:
        dfs(0, 0)
    except _BudgetStop:
        exact = False
    witness = Collection([Graph(n, tuple(r)) for r in best_rows])
    _check_witness(witness, q.family)
    assert sum(witness.edge_counts()) == best
    return ExtremalResult(best, witness, budget.used, exact)


# ---------------------------------------------------------------------
# mode = prod


def extremal_prod(q: ExtremalQuery) -> ExtremalResult:
    """Largest product of edge counts over rainbow-free collections."""
    if q.mode != "prod":
        raise ValueError("query mode must be 'prod'")
    budget = _Budget(q.budget if q.budget is not None else default_budget())
    infeasible, members = _split_family(q.family, q.n, q.t)
    cap = comb(q.n, 2)
    if infeasible:
        return ExtremalResult(0, None, budget.used, True)
    if not members:
        full = Collection([Graph.complete(q.n)] * q.t)
        return ExtremalResult(cap**q.t, full, budget.used, True)

    s = _CollectionSearch(q.n, q.t, members, budget)
    best = 0
    best_witness = Collection([Graph.edgeless(q.n)] * q.t)
    exact = True

    def color_dfs(k: int, idx: int, count: int, cap_k: int, prefix: int):
        nonlocal best, best_witness
        s.budget.step()
        maxc = min(cap_k, count + (s.P - idx))
        if prefix * (maxc ** (s.t - k + 1)) <= best:
            return
        if idx == s.P:
            if not s.canonical_prefix(k):
                return
            value = prefix * count
            if k == s.t:
                if value > best:
                    best = value
                    best_witness = s.snapshot()
                return
            color_dfs(k + 1, 0, 0, count, value)
            return
        if count < cap_k and s.try_add(k, idx):
            color_dfs(k, idx + 1, count + 1, cap_k, prefix)
            s.remove(k, idx)
        color_dfs(k, idx + 1, count, cap_k, prefix)

    try:
        color_dfs(1, 0, 0, s.P, 1)
    except _BudgetStop:
        exact = False
    _check_witness(best_witness, q.family)
    prod = 1
    for c in best_witness.edge_counts():
        prod *= c
    assert prod == best
    return ExtremalResult(best, best_witness, budget.used, exact)


def _check_witness(witness: Collection, family: PatternFamily):
    if not is_rainbow_free(witness, family):
        raise AssertionError("search produced a non-free witness")


# ---------------------------------------------------------------------
# plain Turan numbers by orderly generation


def turan_exact(n: int, f: Graph, budget: int | None = None) -> int:
    """Largest edge count of an n-vertex graph with no copy of f."""
    return turan_extremal(n, f, budget)[0]


def turan_extremal(n: int, f: Graph, budget: int | None = None) -> tuple[int, Graph]:
    """ex(n, f) together with one extremal graph."""
    if not 1 <= n <= 10:
        raise ValueError("orderly generation supports 1 <= n <= 10")
    value, g = _turan_family(n, [f], budget)
    return value, g


def _turan_family(n: int, members, budget: int | None) -> tuple[int, Graph]:
    """Shared orderly-generation core; members is any iterable of patterns.

    Returns (-1, edgeless) when an edgeless member fits the host (then no
    host graph avoids it).  Unreachable members are dropped.
    """
    limit = _Budget(budget if budget is not None else default_budget())
    if any(f.edge_count() == 0 and f.n <= n for f in members):
        return -1, Graph.edgeless(n)
    active = [f for f in members if f.edge_count() >= 1 and f.n <= n]
    if not active:
        return comb(n, 2), Graph.complete(n)
    matchers = [
        (f, f.edge_count() if all(f.degree(v) <= 1 for v in range(f.n)) else 0)
        for f in active
    ]

    level: dict[bytes, tuple[int, ...]] = {_canonical(1, (0,)): (0,)}
    try:
        for k in range(2, n + 1):
            nxt: dict[bytes, tuple[int, ...]] = {}
            for rows in level.values():
                for mask in range(1 << (k - 1)):
                    limit.step()
                    new_rows = _extend_rows(rows, mask, k)
                    if _hits_pattern(new_rows, k, matchers):
                        continue
                    nxt.setdefault(_canonical(k, new_rows), new_rows)
            level = nxt
    except _BudgetStop:
        raise BudgetExceeded(
            f"orderly generation exceeded {limit.limit} extension attempts"
        ) from None
    best_rows = max(level.values(), key=lambda r: sum(x.bit_count() for x in r))
    g = Graph(n, best_rows)
    return g.edge_count(), g


def _extend_rows(rows: tuple[int, ...], mask: int, k: int) -> tuple[int, ...]:
    new_bit = 1 << (k - 1)
    out = [r | new_bit if mask >> i & 1 else r for i, r in enumerate(rows)]
    out.append(mask)
    return tuple(out)


def _hits_pattern(rows: tuple[int, ...], k: int, matchers) -> bool:
    """Does the k-vertex graph contain any member, using the new vertex k-1?

    The parent graph was member-free, so only copies through the newest
    vertex can exist.  Matching patterns skip the anchored embedding and
    use the dedicated disjoint-edge test.
    """
    g = Graph(k, rows)
    for f, match_sz in matchers:
        if f.n > k:
            continue
        if match_sz:
            if matching_number_at_least(g, match_sz):
                return True
            continue
        if _embeds_using_vertex(g, f, k - 1):
            return True
    return False


def _embeds_using_vertex(host: Graph, pattern: Graph, anchor: int) -> bool:
    full = (1 << host.n) - 1
    core = [v for v in range(pattern.n) if pattern.adj[v]]
    if len(core) < pattern.n:
        # isolated pattern vertices: the anchor need not be in the core,
        # so fall back to plain containment
        return contains_subgraph(host, pattern)

    def order_from(seed: int) -> list[int]:
        order = [seed]
        left = [v for v in core if v != seed]
        while left:
            nxt = max(
                left,
                key=lambda v: (
                    sum(1 for u in order if pattern.has_edge(u, v)),
                    pattern.degree(v),
                    -v,
                ),
            )
            order.append(nxt)
            left.remove(nxt)
        return order

    for seed in core:
        order = order_from(seed)
        vmap = {seed: anchor}

        def extend(i: int, used: int) -> bool:
            if i == len(order):
                return True
            pv = order[i]
            cand = full & ~used
            for u in order[:i]:
                if pattern.has_edge(u, pv):
                    cand &= host.adj[vmap[u]]
            deg = pattern.degree(pv)
            while cand:
                low = cand & -cand
                hv = low.bit_length() - 1
                cand ^= low
                if host.degree(hv) < deg:
                    continue
                vmap[pv] = hv
                if extend(i + 1, used | low):
                    return True
                del vmap[pv]
            return False

        if host.degree(anchor) >= pattern.degree(seed) and extend(1, 1 << anchor):
            return True
    return False
