"""Registry of lower-bound constructions and claimed closed-form values.

Every entry builds a concrete rainbow-free collection witnessing a lower
bound for one of the three objectives, on canonically chosen vertex
blocks (lowest available indices, centers first) with colors assigned in
round-robin order, so outputs are reproducible byte for byte.  Each
entry also documents its per-color edge counts and the forbidden family
it avoids; the certification suite checks both against the built
collection.

Construction ids (parameters in parentheses; f is a pattern string):

  min.i            (n, t, s, f[, inner])  split graph K_{s,n-s} in every
                   color plus a free collection on the s-part
  min.ii           (n, t, s, f[, inner])  same shape, cover-family inner
  min.iii          (n, t, p[, f, s])      K_{p-1,n-p+1} in every color
  min.iv           (n, t, f[, s, inner])  K_{p-1,n-p+1} plus inner
  min.kpp-remark   (n, t, s, p)           biclique plus per-vertex color
                   classes spread as evenly as possible
  sum.cliques      (n, t, f)              complete graphs in |E(f)|-1 colors
  sum.monochrome-extremal (n, t, f)       one extremal f-free graph repeated
  prod.matching    (n, t, s)              K_n in s-1 colors, star elsewhere
  prod.clique-star (n, t, s[, f])         monochromatic cliques plus a
                   shared star on the leftover vertices
  prod.star.gt     (n, t, s, r)           disjoint stars, t > s(r-1)
  prod.star.eq     (n, t, s, r)           disjoint stars, t = s(r-1)
  prod.star.lt     (n, t, s, r)           cliques plus stars, t < s(r-1)
  prod.star2       (n, t, s)              cliques plus one shared edge (r=2)
  prod.sm.bigstar  (n, t, s, r, m)        spanning star plus cliques
  prod.sm.star-clique (n, t, s, r, m)     small star plus cliques
  prod.sm.mixed    (n, t, s, r, m)        cliques plus a star construction
                   on the remaining colors
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, ceil

from .graphcore import (
    Graph,
    PatternFamily,
    NotBipartite,
    parse_pattern,
    bipartition_min_class,
    family_deleted_independent,
    family_covering,
)
from .collection import Collection, is_rainbow_free
from .search import (
    ExtremalQuery,
    extremal_min,
    extremal_sum,
    turan_exact,
    turan_extremal,
    BudgetExceeded,
)

CONSTRUCTION_IDS = (
    "min.i",
    "min.ii",
    "min.iii",
    "min.iv",
    "min.kpp-remark",
    "sum.cliques",
    "sum.monochrome-extremal",
    "prod.matching",
    "prod.clique-star",
    "prod.star.gt",
    "prod.star.eq",
    "prod.star.lt",
    "prod.star2",
    "prod.sm.star-clique",
    "prod.sm.mixed",
    "prod.sm.bigstar",
)

FORMULA_IDS = (
    "meshulam",
    "min.i",
    "min.ii",
    "min.iv",
    "prod.matching",
    "sum.k3",
    "sum.bipartite",
    "sum.general-upper",
)

MAX_INNER_VERTICES = 4  # inner collections are searched, not supplied, up to here


class GuardViolated(ValueError):
    """Parameters fall outside the case guards of the cited bound."""


class InnerTooLarge(ValueError):
    """Inner collection missing or on the wrong vertex count."""


class InnerInfeasible(RuntimeError):
    """Inner extremal search did not finish within budget."""


@dataclass(frozen=True)
class ConstructionInfo:
    collection: Collection
    expected_counts: tuple[int, ...]
    family: PatternFamily | None  # None when optional family params were omitted


def _pattern(value) -> Graph:
    return value if isinstance(value, Graph) else parse_pattern(str(value))


def _need(params: dict, *keys) -> list:
    missing = [k for k in keys if k not in params]
    if missing:
        raise GuardViolated(f"missing parameters: {', '.join(missing)}")
    return [params[k] for k in keys]


def _fam(*graphs) -> PatternFamily:
    return PatternFamily.from_graphs(graphs)


def _is_bipartite(f: Graph) -> bool:
    try:
        bipartition_min_class(f)
        return True
    except NotBipartite:
        return False


def _is_star_with_matching(f: Graph) -> bool:
    """Whether f is a star (possibly trivial) with extra isolated edges."""
    for v in range(f.n):
        rest = [u for u in range(f.n) if u != v]
        h = f.induced(rest) if rest else None
        if h is None:
            return True
        if any(h.degree(x) > 1 for x in range(h.n)):
            continue
        nv = f.adj[v]
        if all(
            not ((nv >> rest[a] & 1) or (nv >> rest[b] & 1))
            for a in range(h.n)
            for b in range(a + 1, h.n)
            if h.has_edge(a, b)
        ):
            return True
    return False


def _resolve_inner(
    s: int, t: int, inner_family: PatternFamily, supplied: Collection | None
) -> Collection:
    """Inner collection on s vertices: validate the supplied one or search."""
    if supplied is not None:
        if supplied.n != s:
            raise InnerTooLarge(f"inner collection has {supplied.n} vertices, needs {s}")
        if supplied.t != t:
            raise InnerTooLarge(f"inner collection has {supplied.t} colors, needs {t}")
        if not is_rainbow_free(supplied, inner_family):
            raise GuardViolated("supplied inner collection is not rainbow-free")
        return supplied
    if s > MAX_INNER_VERTICES:
        raise InnerTooLarge(
            f"inner part has {s} > {MAX_INNER_VERTICES} vertices; supply one explicitly"
        )
    try:
        res = extremal_min(ExtremalQuery("min", s, t, inner_family))
    except BudgetExceeded as exc:  # pragma: no cover - defensive
        raise InnerInfeasible(str(exc)) from exc
    if not res.exact or res.witness is None:
        raise InnerInfeasible("inner extremal search hit its node budget")
    return res.witness


def _split_rows(n: int, s: int, t: int, inner: Collection) -> Collection:
    """K_{s,n-s} in every color plus the inner collection on 0..s-1."""
    cols = []
    for i in range(1, t + 1):
        rows = [0] * n
        for a in range(s):
            for b in range(s, n):
                rows[a] |= 1 << b
                rows[b] |= 1 << a
        for u, v in inner.graph(i).edges():
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        cols.append(Graph(n, rows))
    return Collection(cols)


def _disjoint_star(n: int, start: int, leaves: int) -> Graph:
    return Graph.from_edges(n, [(start, start + j) for j in range(1, leaves + 1)])


def _disjoint_clique(n: int, start: int, order: int) -> Graph:
    return Graph.from_edges(
        n, [(start + a, start + b) for a in range(order) for b in range(a + 1, order)]
    )


def _empty(n: int) -> Graph:
    return Graph.edgeless(n)


def _union(n: int, *graphs: Graph) -> Graph:
    rows = [0] * n
    for g in graphs:
        for v in range(n):
            rows[v] |= g.adj[v]
    return Graph(n, rows)


# ---------------------------------------------------------------------
# builders


def _b_min_split(params: dict, which: str) -> ConstructionInfo:
    n, t, s = _need(params, "n", "t", "s")
    f = _pattern(_need(params, "f")[0])
    if t < max(f.edge_count(), s + 1):
        raise GuardViolated(f"need t >= max(|E(f)|, s+1) = {max(f.edge_count(), s + 1)}")
    if not 1 <= s < n:
        raise GuardViolated("need 1 <= s < n")
    if which == "min.i":
        if _is_bipartite(f):
            raise GuardViolated("min.i needs a non-bipartite pattern")
        inner_family = family_deleted_independent(f)
    else:
        if not _is_bipartite(f):
            raise GuardViolated("min.ii needs a bipartite pattern")
        if bipartition_min_class(f) <= s:
            raise GuardViolated("min.ii needs p(f) > s")
        inner_family = family_covering(f, s)
    inner = _resolve_inner(s, t, inner_family, params.get("inner"))
    col = _split_rows(n, s, t, inner)
    counts = tuple(s * (n - s) + inner.graph(i).edge_count() for i in range(1, t + 1))
    fam = _fam(f, Graph.matching(s + 1))
    return ConstructionInfo(col, counts, fam)


def _b_min_iii(params: dict) -> ConstructionInfo:
    n, t, p = _need(params, "n", "t", "p")
    if not 1 <= p <= n:
        raise GuardViolated("need 1 <= p <= n")
    per = Graph.from_edges(
        n, [(a, b) for a in range(p - 1) for b in range(p - 1, n)]
    )
    col = Collection([per] * t)
    counts = ((p - 1) * (n - p + 1),) * t
    fam = None
    if "f" in params and "s" in params:
        f = _pattern(params["f"])
        s = params["s"]
        if not _is_bipartite(f):
            raise GuardViolated("min.iii needs a bipartite pattern")
        pf = bipartition_min_class(f)
        if pf != p:
            raise GuardViolated(f"p={p} must equal the pattern's smaller class {pf}")
        if pf > s:
            raise GuardViolated("min.iii needs p(f) <= s")
        if t < max(f.edge_count(), s + 1):
            raise GuardViolated("need t >= max(|E(f)|, s+1)")
        fam = _fam(f, Graph.matching(s + 1))
    return ConstructionInfo(col, counts, fam)


def _b_min_iv(params: dict) -> ConstructionInfo:
    n, t = _need(params, "n", "t")
    f = _pattern(_need(params, "f")[0])
    if not _is_bipartite(f):
        raise GuardViolated("min.iv needs a (balanced) tree")
    p = bipartition_min_class(f)
    if f.edge_count() != f.n - 1 or f.n != 2 * p:
        raise GuardViolated("min.iv needs a balanced tree (|V| = 2 p(f), connected)")
    if p < 2:
        raise GuardViolated("need p(f) >= 2")
    if t < f.edge_count():
        raise GuardViolated("need t >= |E(f)|")
    if "s" in params and t < params["s"] + 1:
        raise GuardViolated("need t >= s+1")
    inner_family = family_covering(f, p - 1)
    inner = _resolve_inner(p - 1, t, inner_family, params.get("inner"))
    cols = []
    for i in range(1, t + 1):
        rows = [0] * n
        for a in range(p - 1):
            for b in range(p - 1, n):
                rows[a] |= 1 << b
                rows[b] |= 1 << a
        for u, v in inner.graph(i).edges():
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        cols.append(Graph(n, rows))
    col = Collection(cols)
    counts = tuple(
        (p - 1) * (n - p + 1) + inner.graph(i).edge_count() for i in range(1, t + 1)
    )
    fam = None
    if "s" in params:
        s = params["s"]
        if p > s:
            raise GuardViolated("min.iv needs p(f) <= s")
        fam = _fam(f, Graph.matching(s + 1))
    return ConstructionInfo(col, counts, fam)


def _b_kpp(params: dict) -> ConstructionInfo:
    n, t, s, p = _need(params, "n", "t", "s", "p")
    if not (2 <= p <= s < n):
        raise GuardViolated("need 2 <= p <= s < n")
    if t < max(p * p, s + 1):
        raise GuardViolated(f"need t >= max(p^2, s+1) = {max(p * p, s + 1)}")
    a_part = range(p - 1)
    b_part = range(p - 1, s)
    c_part = range(s, n)
    rows_per_color = [[0] * n for _ in range(t)]
    for a in a_part:
        for c in c_part:
            for rows in rows_per_color:
                rows[a] |= 1 << c
                rows[c] |= 1 << a
    b_color_sets = []
    cursor = 0
    for v in b_part:
        mine = [(cursor + j) % t for j in range(p - 1)]
        cursor = (cursor + p - 1) % t
        b_color_sets.append(mine)
        for ci in mine:
            rows_per_color[ci][v] |= sum(1 << c for c in c_part)
            for c in c_part:
                rows_per_color[ci][c] |= 1 << v
    col = Collection([Graph(n, rows) for rows in rows_per_color])
    counts = []
    for ci in range(t):
        b_here = sum(1 for mine in b_color_sets if ci in mine)
        counts.append((p - 1) * (n - s) + b_here * (n - s))
    fam = _fam(Graph.complete_bipartite(p, p), Graph.matching(s + 1))
    return ConstructionInfo(col, tuple(counts), fam)


def _b_sum_cliques(params: dict) -> ConstructionInfo:
    n, t = _need(params, "n", "t")
    f = _pattern(_need(params, "f")[0])
    if f.edge_count() < 1:
        raise GuardViolated("pattern needs at least one edge")
    q = f.edge_count() - 1
    if t < f.edge_count():
        raise GuardViolated("need t >= |E(f)|")
    col = Collection([Graph.complete(n)] * q + [_empty(n)] * (t - q))
    counts = (comb(n, 2),) * q + (0,) * (t - q)
    return ConstructionInfo(col, counts, _fam(f))


def _b_sum_monochrome(params: dict) -> ConstructionInfo:
    n, t = _need(params, "n", "t")
    f = _pattern(_need(params, "f")[0])
    if n > 10:
        raise GuardViolated("extremal pattern-free graphs are searched up to n = 10")
    value, g = turan_extremal(n, f)
    if value < 0:
        raise GuardViolated("no f-free graph exists on this vertex count")
    col = Collection([g] * t)
    return ConstructionInfo(col, (value,) * t, _fam(f))


def _b_prod_matching(params: dict) -> ConstructionInfo:
    n, t, s = _need(params, "n", "t", "s")
    if not (1 <= s < t + 1 and t >= s + 1):
        raise GuardViolated("need t >= s+1 >= 2")
    if n < 2:
        raise GuardViolated("need n >= 2")
    star = _disjoint_star(n, 0, n - 1)
    col = Collection([Graph.complete(n)] * (s - 1) + [star] * (t - s + 1))
    counts = (comb(n, 2),) * (s - 1) + (n - 1,) * (t - s + 1)
    return ConstructionInfo(col, counts, _fam(Graph.matching(s + 1)))


def _b_clique_star(params: dict) -> ConstructionInfo:
    n, t, s = _need(params, "n", "t", "s")
    if t < s + 1 or s < 1:
        raise GuardViolated("need t >= s+1 >= 2")
    ell = n // (2 * s)
    star_start = (s - 1) * ell
    if star_start >= n:
        raise GuardViolated("no room left for the shared star")
    star = _disjoint_star(n, star_start, n - star_start - 1)
    cols = []
    for i in range(t):
        if i < s - 1:
            cols.append(_union(n, _disjoint_clique(n, i * ell, ell), star))
        else:
            cols.append(star)
    col = Collection(cols)
    star_sz = n - star_start - 1
    counts = tuple(
        comb(ell, 2) + star_sz if i < s - 1 else star_sz for i in range(t)
    )
    fam = None
    if "f" in params:
        f = _pattern(params["f"])
        if _is_star_with_matching(f):
            raise GuardViolated("pattern must not be a star with isolated edges")
        if t < max(f.edge_count(), s + 1):
            raise GuardViolated("need t >= max(|E(f)|, s+1)")
        fam = _fam(f, Graph.matching(s + 1))
    return ConstructionInfo(col, counts, fam)


def _star_blocks(n: int, count: int, ell: int) -> list[Graph]:
    """count disjoint stars with ell leaves on the lowest vertex blocks."""
    out = []
    for i in range(count):
        start = i * (ell + 1)
        if start + ell >= n + 1:
            raise GuardViolated("star blocks do not fit the vertex set")
        out.append(_disjoint_star(n, start, ell))
    return out


def _b_star_gt(params: dict) -> ConstructionInfo:
    n, t, s, r = _need(params, "n", "t", "s", "r")
    if r <= 2:
        raise GuardViolated("this branch needs r > 2")
    if t <= s * (r - 1):
        raise GuardViolated("need t > s(r-1)")
    if t < max(r, s + 1):
        raise GuardViolated("need t >= max(r, s+1)")
    ell = n // (s * t)
    stars = _star_blocks(n, s, ell) if ell > 0 else [_empty(n)] * s
    cols: list[Graph] = []
    for i in range(s - 1):
        cols.extend([stars[i]] * (r - 1))
    cols.extend([stars[s - 1]] * (r - 2))
    leftover = t - s * (r - 1) + 1
    start = (s - 1) * (ell + 1)
    first_edge = (
        Graph.from_edges(n, [(start, start + 1)]) if ell > 0 else _empty(n)
    )
    cols.extend([first_edge] * leftover)
    col = Collection(cols)
    counts = (ell,) * (s * (r - 1) - 1) + ((1 if ell > 0 else 0),) * leftover
    fam = _fam(Graph.star(r), Graph.matching(s + 1))
    return ConstructionInfo(col, counts, fam)


def _b_star_eq(params: dict) -> ConstructionInfo:
    n, t, s, r = _need(params, "n", "t", "s", "r")
    if t != s * (r - 1):
        raise GuardViolated("need t = s(r-1)")
    if t < max(r, s + 1):
        raise GuardViolated("need t >= max(r, s+1)")
    ell = n // (s * t)
    stars = _star_blocks(n, s, ell) if ell > 0 else [_empty(n)] * s
    cols: list[Graph] = []
    for i in range(s):
        cols.extend([stars[i]] * (r - 1))
    col = Collection(cols)
    counts = (ell,) * t
    fam = _fam(Graph.star(r), Graph.matching(s + 1))
    return ConstructionInfo(col, counts, fam)


def _b_star_lt(params: dict) -> ConstructionInfo:
    n, t, s, r = _need(params, "n", "t", "s", "r")
    if r <= 2:
        raise GuardViolated("this branch needs r > 2")
    if t >= s * (r - 1):
        raise GuardViolated("need t < s(r-1)")
    if t < max(r, s + 1):
        raise GuardViolated("need t >= max(r, s+1)")
    k = ceil((t - s) / (r - 2))
    ell = n // (s * t)
    cols: list[Graph] = []
    counts: list[int] = []
    for i in range(s - k):
        g = _disjoint_clique(n, i * (ell + 1), ell + 1)
        cols.append(g)
        counts.append(comb(ell + 1, 2))
    star_base = (s - k) * (ell + 1)
    for j in range(k - 1):
        start = star_base + j * (ell + 1)
        g = _disjoint_star(n, start, ell) if ell > 0 else _empty(n)
        cols.extend([g] * (r - 1))
        counts.extend([ell] * (r - 1))
    last = t - (s - k) - (k - 1) * (r - 1)
    if not 1 <= last <= r - 1:
        raise GuardViolated(f"leftover color count {last} impossible for this branch")
    start = star_base + (k - 1) * (ell + 1)
    g = _disjoint_star(n, start, ell) if ell > 0 else _empty(n)
    if start + ell >= n + 1:
        raise GuardViolated("star blocks do not fit the vertex set")
    cols.extend([g] * last)
    counts.extend([ell] * last)
    col = Collection(cols)
    fam = _fam(Graph.star(r), Graph.matching(s + 1))
    return ConstructionInfo(col, tuple(counts), fam)


def _b_star2(params: dict) -> ConstructionInfo:
    n, t, s = _need(params, "n", "t", "s")
    if t < max(2, s + 1):
        raise GuardViolated("need t >= max(2, s+1)")
    ell = n // (s * t)
    pair_start = (s - 1) * ell
    if pair_start + 1 >= n:
        raise GuardViolated("no room for the shared edge")
    cols: list[Graph] = []
    counts: list[int] = []
    for i in range(s - 1):
        cols.append(_disjoint_clique(n, i * ell, ell))
        counts.append(comb(ell, 2))
    shared = Graph.from_edges(n, [(pair_start, pair_start + 1)])
    cols.extend([shared] * (t - s + 1))
    counts.extend([1] * (t - s + 1))
    col = Collection(cols)
    fam = _fam(Graph.star(2), Graph.matching(s + 1))
    return ConstructionInfo(col, tuple(counts), fam)


def _sm_guards(n: int, t: int, s: int, r: int, m: int):
    if r < 2:
        raise GuardViolated("need r >= 2")
    if not 1 <= m <= s - 1:
        raise GuardViolated("need 1 <= m <= s-1")
    if t < max(r + m, s + 1):
        raise GuardViolated(f"need t >= max(|E(f)|, s+1) = {max(r + m, s + 1)}")


def _b_sm_bigstar(params: dict) -> ConstructionInfo:
    n, t, s, r, m = _need(params, "n", "t", "s", "r", "m")
    _sm_guards(n, t, s, r, m)
    if r - 1 < t - s + 1:
        raise GuardViolated("need r-1 >= t-s+1")
    q = (n - 1) // (s - 1)
    star = _disjoint_star(n, 0, n - 1)
    cols = [star] * (t - s + 1)
    counts = [n - 1] * (t - s + 1)
    for j in range(s - 1):
        cols.append(_disjoint_clique(n, 1 + j * q, q))
        counts.append(comb(q, 2))
    col = Collection(cols)
    fam = _fam(Graph.star_plus_matching(r, m), Graph.matching(s + 1))
    return ConstructionInfo(col, tuple(counts), fam)


def _b_sm_star_clique(params: dict) -> ConstructionInfo:
    n, t, s, r, m = _need(params, "n", "t", "s", "r", "m")
    _sm_guards(n, t, s, r, m)
    ell = n // (s * t)
    if m * ell + 1 > n:
        raise GuardViolated("blocks do not fit the vertex set")
    star = _disjoint_star(n, 0, ell) if ell > 0 else _empty(n)
    cols = [star] * (t - m + 1)
    counts = [ell] * (t - m + 1)
    for j in range(m - 1):
        cols.append(_disjoint_clique(n, (ell + 1) + j * ell, ell))
        counts.append(comb(ell, 2))
    col = Collection(cols)
    fam = _fam(Graph.star_plus_matching(r, m), Graph.matching(s + 1))
    return ConstructionInfo(col, tuple(counts), fam)


def _b_sm_mixed(params: dict) -> ConstructionInfo:
    n, t, s, r, m = _need(params, "n", "t", "s", "r", "m")
    _sm_guards(n, t, s, r, m)
    if r <= 2:
        raise GuardViolated("this branch needs r > 2")
    if not r + s - 2 < t < s * (r - 1):
        raise GuardViolated("need r+s-2 < t < s(r-1)")
    if m * (r - 2) > s * (r - 1) - t:
        raise GuardViolated("need m <= (s(r-1)-t)/(r-2)")
    c = (s * (r - 1) - t) // (r - 2)
    ell = n // (s * t)
    cols: list[Graph] = []
    counts: list[int] = []
    for j in range(c):
        cols.append(_disjoint_clique(n, j * ell, ell))
        counts.append(comb(ell, 2))
    offset = c * ell
    n_inner = n - offset
    t_inner, s_inner = t - c, s - c
    inner_params = {"n": n_inner, "t": t_inner, "s": s_inner, "r": r}
    if t_inner == s_inner * (r - 1):
        inner = _b_star_eq(inner_params)
    else:
        inner = _b_star_lt(inner_params)
    for g in inner.collection.graphs:
        cols.append(Graph.from_edges(n, [(u + offset, v + offset) for u, v in g.edges()]))
    counts.extend(inner.expected_counts)
    col = Collection(cols)
    fam = _fam(Graph.star_plus_matching(r, m), Graph.matching(s + 1))
    return ConstructionInfo(col, tuple(counts), fam)


_BUILDERS = {
    "min.i": lambda p: _b_min_split(p, "min.i"),
    "min.ii": lambda p: _b_min_split(p, "min.ii"),
    "min.iii": _b_min_iii,
    "min.iv": _b_min_iv,
    "min.kpp-remark": _b_kpp,
    "sum.cliques": _b_sum_cliques,
    "sum.monochrome-extremal": _b_sum_monochrome,
    "prod.matching": _b_prod_matching,
    "prod.clique-star": _b_clique_star,
    "prod.star.gt": _b_star_gt,
    "prod.star.eq": _b_star_eq,
    "prod.star.lt": _b_star_lt,
    "prod.star2": _b_star2,
    "prod.sm.bigstar": _b_sm_bigstar,
    "prod.sm.star-clique": _b_sm_star_clique,
    "prod.sm.mixed": _b_sm_mixed,
}


def describe(cid: str, params: dict) -> ConstructionInfo:
    """Build a construction along with its documented counts and family."""
    if cid not in _BUILDERS:
        raise KeyError(f"unknown construction id {cid!r}")
    return _BUILDERS[cid](dict(params))


def build(cid: str, params: dict) -> Collection:
    return describe(cid, params).collection


def meshulam_collection(n: int, s: int, t: int) -> Collection:
    """The split graph (clique on s vertices joined to the rest), every color.

    Each color has s(n-s) + C(s,2) edges and every edge meets the s-set,
    so no matching of s+1 disjoint edges exists at all.
    """
    if not 0 <= s <= n:
        raise GuardViolated("need 0 <= s <= n")
    edges = [(a, b) for a in range(s) for b in range(a + 1, n)]
    return Collection([Graph.from_edges(n, edges)] * t)


# ---------------------------------------------------------------------
# claimed closed-form values


def claimed_value(fid: str, params: dict) -> int:
    """Exact integer value of a registered closed form.

    Inner extremal terms (the constants on the small side of a split
    construction) are computed by the search module at desk scale.
    """
    if fid not in _FORMULAS:
        raise KeyError(f"unknown formula id {fid!r}")
    return _FORMULAS[fid](dict(params))


def _inner_min_value(s: int, t: int, fam: PatternFamily) -> int:
    if s > MAX_INNER_VERTICES:
        raise InnerInfeasible(f"inner term on {s} vertices exceeds desk scale")
    res = extremal_min(ExtremalQuery("min", s, t, fam))
    if not res.exact:
        raise InnerInfeasible("inner extremal search hit its node budget")
    return res.value


def _v_meshulam(p: dict) -> int:
    n, s = _need(p, "n", "s")
    return s * (n - s) + comb(s, 2)


def _v_min_i(p: dict) -> int:
    n, t, s = _need(p, "n", "t", "s")
    f = _pattern(_need(p, "f")[0])
    if _is_bipartite(f):
        raise GuardViolated("min.i needs a non-bipartite pattern")
    return s * (n - s) + _inner_min_value(s, t, family_deleted_independent(f))


def _v_min_ii(p: dict) -> int:
    n, t, s = _need(p, "n", "t", "s")
    f = _pattern(_need(p, "f")[0])
    if not _is_bipartite(f) or bipartition_min_class(f) <= s:
        raise GuardViolated("min.ii needs a bipartite pattern with p(f) > s")
    return s * (n - s) + _inner_min_value(s, t, family_covering(f, s))


def _v_min_iv(p: dict) -> int:
    n, t = _need(p, "n", "t")
    f = _pattern(_need(p, "f")[0])
    if not _is_bipartite(f):
        raise GuardViolated("min.iv needs a balanced tree")
    pf = bipartition_min_class(f)
    if f.edge_count() != f.n - 1 or f.n != 2 * pf or pf < 2:
        raise GuardViolated("min.iv needs a balanced tree with p(f) >= 2")
    return (pf - 1) * (n - pf + 1) + _inner_min_value(
        pf - 1, t, family_covering(f, pf - 1)
    )


def _v_prod_matching(p: dict) -> int:
    n, t, s = _need(p, "n", "t", "s")
    return (n - 1) ** (t - s + 1) * comb(n, 2) ** (s - 1)


def _v_sum_k3(p: dict) -> int:
    n, s = _need(p, "n", "s")
    if s <= 2:
        return s * comb(n, 2)
    if s == 3:
        return n * (n - 1)
    return s * (n * n // 4)


def _v_sum_bipartite(p: dict) -> int:
    n = _need(p, "n")[0]
    f = _pattern(_need(p, "f")[0])
    if not _is_bipartite(f):
        raise GuardViolated("formula applies to bipartite patterns")
    return (f.edge_count() - 1) * comb(n, 2)


def _v_sum_general_upper(p: dict) -> int:
    n, t = _need(p, "n", "t")
    f1 = _pattern(_need(p, "f1")[0])
    rest = p.get("rest")
    if rest is None:
        raise GuardViolated("missing parameters: rest")
    if not isinstance(rest, PatternFamily):
        rest = PatternFamily.from_graphs(
            [_pattern(x) for x in (rest if isinstance(rest, (list, tuple)) else [rest])]
        )
    m = f1.edge_count() - 1
    if m < 1 or t <= m:
        raise GuardViolated("need |E(f1)| >= 2 and t > |E(f1)| - 1")
    inner = extremal_sum(ExtremalQuery("sum", n, m, rest))
    if not inner.exact:
        raise InnerInfeasible("inner sum search hit its node budget")
    return inner.value + (t - m) * turan_exact(n, f1)


_FORMULAS = {
    "meshulam": _v_meshulam,
    "min.i": _v_min_i,
    "min.ii": _v_min_ii,
    "min.iv": _v_min_iv,
    "prod.matching": _v_prod_matching,
    "sum.k3": _v_sum_k3,
    "sum.bipartite": _v_sum_bipartite,
    "sum.general-upper": _v_sum_general_upper,
}


def certification_grid() -> list[tuple[str, dict]]:
    """Guard-respecting parameter rows covering every construction id.

    Kept within n <= 12, t <= 5, s <= 3, r <= 4, m <= 2; several star
    branches are forced degenerate there (block size n // (s t) reaching
    0 or 1) and certify the guards and empty-block paths.
    """
    return [
        ("min.i", {"n": 6, "t": 3, "s": 1, "f": "K3"}),
        ("min.i", {"n": 9, "t": 4, "s": 2, "f": "K3"}),
        ("min.i", {"n": 12, "t": 5, "s": 3, "f": "K3"}),
        ("min.ii", {"n": 6, "t": 4, "s": 1, "f": "K2,2"}),
        ("min.ii", {"n": 10, "t": 5, "s": 1, "f": "K2,2"}),
        ("min.ii", {"n": 10, "t": 3, "s": 1, "f": "P4"}),
        ("min.iii", {"n": 8, "t": 4, "p": 2, "f": "K2,2", "s": 2}),
        ("min.iii", {"n": 12, "t": 5, "p": 2, "f": "P4", "s": 3}),
        ("min.iii", {"n": 10, "t": 3, "p": 2, "f": "P4", "s": 2}),
        ("min.iv", {"n": 8, "t": 3, "f": "P4", "s": 2}),
        ("min.iv", {"n": 12, "t": 5, "f": "P6", "s": 3}),
        ("min.kpp-remark", {"n": 10, "t": 4, "s": 2, "p": 2}),
        ("min.kpp-remark", {"n": 10, "t": 4, "s": 3, "p": 2}),
        ("min.kpp-remark", {"n": 12, "t": 5, "s": 3, "p": 2}),
        ("sum.cliques", {"n": 8, "t": 3, "f": "K3"}),
        ("sum.cliques", {"n": 7, "t": 4, "f": "K2,2"}),
        ("sum.cliques", {"n": 6, "t": 3, "f": "M2"}),
        ("sum.monochrome-extremal", {"n": 7, "t": 3, "f": "K3"}),
        ("sum.monochrome-extremal", {"n": 6, "t": 2, "f": "M2"}),
        ("sum.monochrome-extremal", {"n": 6, "t": 3, "f": "S2"}),
        ("prod.matching", {"n": 5, "t": 3, "s": 2}),
        ("prod.matching", {"n": 9, "t": 4, "s": 2}),
        ("prod.matching", {"n": 12, "t": 5, "s": 3}),
        ("prod.clique-star", {"n": 8, "t": 3, "s": 2, "f": "P4"}),
        ("prod.clique-star", {"n": 12, "t": 5, "s": 3, "f": "K3"}),
        ("prod.star.gt", {"n": 12, "t": 3, "s": 1, "r": 3}),
        ("prod.star.gt", {"n": 12, "t": 5, "s": 2, "r": 3}),
        ("prod.star.gt", {"n": 12, "t": 4, "s": 1, "r": 4}),
        ("prod.star.eq", {"n": 12, "t": 4, "s": 2, "r": 3}),
        ("prod.star.eq", {"n": 8, "t": 4, "s": 2, "r": 3}),
        ("prod.star.lt", {"n": 12, "t": 5, "s": 2, "r": 4}),
        ("prod.star.lt", {"n": 12, "t": 4, "s": 3, "r": 3}),
        ("prod.star.lt", {"n": 12, "t": 5, "s": 3, "r": 4}),
        ("prod.star2", {"n": 12, "t": 3, "s": 2}),
        ("prod.star2", {"n": 12, "t": 4, "s": 3}),
        ("prod.sm.bigstar", {"n": 12, "t": 5, "s": 3, "r": 4, "m": 1}),
        ("prod.sm.bigstar", {"n": 9, "t": 5, "s": 3, "r": 4, "m": 1}),
        ("prod.sm.star-clique", {"n": 12, "t": 4, "s": 2, "r": 3, "m": 1}),
        ("prod.sm.star-clique", {"n": 12, "t": 5, "s": 2, "r": 4, "m": 1}),
        ("prod.sm.star-clique", {"n": 12, "t": 5, "s": 3, "r": 3, "m": 2}),
        ("prod.sm.mixed", {"n": 12, "t": 5, "s": 3, "r": 3, "m": 1}),
        ("prod.sm.mixed", {"n": 9, "t": 5, "s": 3, "r": 3, "m": 1}),
    ]
