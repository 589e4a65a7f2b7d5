"""Graph collections, rainbow-copy detection, and the nesting transform.

A collection is an ordered list of t graphs G_1..G_t on one shared vertex
set; index i is the "color" of that graph.  A rainbow copy of a pattern F
is an injective embedding of F into the union of the collection together
with an injective assignment of pattern edges to colors such that every
edge is present in its assigned color.  Detection separates the two
concerns: embeddings are enumerated by backtracking over the union graph,
and for each embedding the color assignment is decided as a system of
distinct representatives (maximum bipartite matching between pattern
edges and colors), so the color choice never costs a factorial factor.

Colors are 1-based everywhere in the public interface, matching the
.rcol file format.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphcore import Graph, PatternFamily

__all__ = [
    "Collection",
    "RainbowWitness",
    "RainbowMatching",
    "FormatError",
    "RangeError",
    "codec_read",
    "codec_write",
    "find_rainbow_copy",
    "rainbow_copy_exists",
    "is_rainbow_free",
    "max_rainbow_matching",
    "nest_transform",
]


class FormatError(ValueError):
    """Malformed .rcol content; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RangeError(ValueError):
    """Vertex or color index outside the declared ranges."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Collection:
    """Ordered graphs (G_1, ..., G_t) on a common n-vertex set."""

    __slots__ = ("n", "t", "graphs")

    def __init__(self, graphs):
        graphs = tuple(graphs)
        if not graphs:
            raise ValueError("collection needs at least one color")
        n = graphs[0].n
        for g in graphs:
            if g.n != n:
                raise ValueError("all graphs must share the vertex count")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "t", len(graphs))
        object.__setattr__(self, "graphs", graphs)

    def __setattr__(self, *args):
        raise AttributeError("Collection is immutable")

    @classmethod
    def from_edge_lists(cls, n: int, edge_lists) -> "Collection":
        return cls([Graph.from_edges(n, edges) for edges in edge_lists])

    def graph(self, color: int) -> Graph:
        """Graph of a 1-based color."""
        return self.graphs[color - 1]

    def adj_rows(self) -> list[tuple[int, ...]]:
        """Per-color adjacency rows, the view the detector internals take."""
        return [g.adj for g in self.graphs]

    def union_rows(self) -> list[int]:
        rows = [0] * self.n
        for g in self.graphs:
            for v in range(self.n):
                rows[v] |= g.adj[v]
        return rows

    def colors_of(self, u: int, v: int) -> list[int]:
        """1-based colors whose graph contains the edge uv."""
        return [i + 1 for i, g in enumerate(self.graphs) if g.has_edge(u, v)]

    def edge_counts(self) -> tuple[int, ...]:
        return tuple(g.edge_count() for g in self.graphs)

    def __eq__(self, other):
        return isinstance(other, Collection) and self.graphs == other.graphs

    def __hash__(self):
        return hash(self.graphs)

    def __repr__(self):
        return f"Collection(n={self.n}, t={self.t}, edges={self.edge_counts()})"


@dataclass(frozen=True)
class RainbowWitness:
    """Certificate of a rainbow copy: vertex embedding plus edge colors.

    ``vmap[p]`` is the host vertex of pattern vertex p; ``cmap[k]`` is the
    1-based color of the k-th pattern edge in ``pattern.edges()`` order.
    """

    pattern: Graph
    vmap: tuple[int, ...]
    cmap: tuple[int, ...]

    def validate(self, col: Collection) -> None:
        if len(self.vmap) != self.pattern.n:
            raise ValueError("vmap does not cover the pattern vertices")
        if len(set(self.vmap)) != len(self.vmap):
            raise ValueError("vmap not injective")
        if any(not 0 <= v < col.n for v in self.vmap):
            raise ValueError("vmap leaves the host vertex set")
        edges = self.pattern.edges()
        if len(self.cmap) != len(edges):
            raise ValueError("cmap does not cover the pattern edges")
        if len(set(self.cmap)) != len(self.cmap):
            raise ValueError("cmap not injective")
        for (a, b), c in zip(edges, self.cmap):
            if not 1 <= c <= col.t:
                raise ValueError(f"color {c} outside 1..{col.t}")
            if not col.graph(c).has_edge(self.vmap[a], self.vmap[b]):
                raise ValueError(f"edge {(a, b)} not present in color {c}")


@dataclass(frozen=True)
class RainbowMatching:
    """Vertex-disjoint edges with pairwise distinct colors (1-based)."""

    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertex_set(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def validate(self, col: Collection) -> None:
        if len(self.edges) != len(self.colors):
            raise ValueError("edge/color length mismatch")
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("colors not injective")
        seen: set[int] = set()
        for (u, v), c in zip(self.edges, self.colors):
            if u in seen or v in seen or u == v:
                raise ValueError("edges not vertex-disjoint")
            seen.update((u, v))
            if not 1 <= c <= col.t:
                raise ValueError(f"color {c} outside 1..{col.t}")
            if not col.graph(c).has_edge(u, v):
                raise ValueError(f"edge {(u, v)} missing from color {c}")


# ---------------------------------------------------------------------
# .rcol codec


def codec_write(col: Collection, path: str) -> None:
    lines = ["rcol 1", f"n {col.n}", f"t {col.t}"]
    for i in range(1, col.t + 1):
        lines.append(f"color {i}")
        lines.extend(f"{u} {v}" for u, v in col.graph(i).edges())
    lines.append("end")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def codec_read(path: str) -> Collection:
    with open(path, "r", newline="") as fh:
        raw = fh.read()
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def fail(msg: str, no: int):
        raise FormatError(msg, no)

    if not lines or lines[0] != "rcol 1":
        fail("expected header 'rcol 1'", 1)
    if len(lines) < 3:
        fail("truncated header", len(lines))
    mn = lines[1].split()
    if len(mn) != 2 or mn[0] != "n" or not mn[1].isdigit():
        fail("expected 'n <count>'", 2)
    n = int(mn[1])
    if not 1 <= n <= 30:
        fail(f"vertex count {n} outside 1..30", 2)
    mt = lines[2].split()
    if len(mt) != 2 or mt[0] != "t" or not mt[1].isdigit():
        fail("expected 't <count>'", 3)
    t = int(mt[1])
    if t < 1:
        fail("need at least one color", 3)

    edge_lists: list[list[tuple[int, int]]] = []
    current: list[tuple[int, int]] | None = None
    seen: set[tuple[int, int]] = set()
    ended = False
    for no, line in enumerate(lines[3:], start=4):
        if ended:
            fail("content after 'end'", no)
        if line == "end":
            ended = True
            continue
        parts = line.split()
        if len(parts) == 2 and parts[0] == "color":
            if not parts[1].isdigit():
                fail("malformed color index", no)
            idx = int(parts[1])
            if idx > t:
                raise RangeError(f"color {idx} exceeds declared t={t}", no)
            if idx != len(edge_lists) + 1:
                fail(f"expected 'color {len(edge_lists) + 1}', got 'color {idx}'", no)
            current = []
            seen = set()
            edge_lists.append(current)
            continue
        if len(parts) == 2:
            if current is None:
                fail("edge before first color header", no)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                fail(f"malformed edge line {line!r}", no)
            if u == v:
                fail(f"loop edge '{u} {v}'", no)
            if u > v:
                fail(f"edge '{u} {v}' not in increasing order", no)
            if u < 0 or v >= n:
                raise RangeError(f"vertex in '{u} {v}' outside 0..{n - 1}", no)
            if (u, v) in seen:
                fail(f"duplicate edge '{u} {v}'", no)
            seen.add((u, v))
            current.append((u, v))
            continue
        fail(f"unrecognized line {line!r}", no)
    if not ended:
        fail("missing 'end'", len(lines))
    if len(edge_lists) != t:
        raise FormatError(f"found {len(edge_lists)} colors, declared {t}", len(lines))
    return Collection.from_edge_lists(n, edge_lists)


# ---------------------------------------------------------------------
# color assignment as a system of distinct representatives


def assign_distinct_colors(masks: list[int]) -> list[int] | None:
    """Match each item to its own bit of its mask (0-based bit indices).

    Returns one chosen bit per item, or None when Hall's condition fails.
    Classic augmenting-path matching; items are edges, bits are colors.
    """
    owner: dict[int, int] = {}
    chosen = [-1] * len(masks)

    def augment(i: int, banned: set[int]) -> bool:
        m = masks[i]
        while m:
            low = m & -m
            c = low.bit_length() - 1
            m ^= low
            if c in banned:
                continue
            banned.add(c)
            if c not in owner or augment(owner[c], banned):
                owner[c] = i
                chosen[i] = c
                return True
        return False

    for i in range(len(masks)):
        if not augment(i, set()):
            return None
    return chosen


def lexmin_distinct_colors(masks: list[int]) -> list[int] | None:
    """Lexicographically smallest color assignment, item by item."""
    if assign_distinct_colors(masks) is None:
        return None
    out: list[int] = []
    fixed = list(masks)
    for i in range(len(masks)):
        m = masks[i]
        while m:
            low = m & -m
            c = low.bit_length() - 1
            m ^= low
            fixed[i] = low
            if assign_distinct_colors(fixed) is not None:
                out.append(c)
                break
        else:
            return None
    return out


# ---------------------------------------------------------------------
# rainbow-copy detection


def _pair_color_mask(rows_by_color, u: int, v: int) -> int:
    """Bit i set iff color i+1 contains the pair uv (rows are adjacency masks)."""
    mask = 0
    for i, rows in enumerate(rows_by_color):
        if rows[u] >> v & 1:
            mask |= 1 << i
    return mask


def _is_pure_matching(pattern: Graph) -> bool:
    return all(pattern.adj[v].bit_count() == 1 for v in range(pattern.n))


def _is_degree_le_one(pattern: Graph) -> bool:
    return all(pattern.adj[v].bit_count() <= 1 for v in range(pattern.n))


def _matching_exists_with(
    n: int, rows_by_color, size: int, init_masks: list[int], banned_vmask: int
) -> bool:
    """Rainbow matching of the given size avoiding banned vertices, with
    colors jointly assignable alongside the already fixed ``init_masks``.

    Matchings are searched as pair subsets rather than labeled embeddings;
    a matching on 2k vertices has k! 2^k labelings, so this is the only
    sane route for matching patterns on larger hosts.
    """
    if size < 0:
        return False
    pairs: list[tuple[int, int]] = []
    masks: list[int] = []
    for u in range(n):
        if banned_vmask >> u & 1:
            continue
        for v in range(u + 1, n):
            if banned_vmask >> v & 1:
                continue
            cm = _pair_color_mask(rows_by_color, u, v)
            if cm:
                pairs.append((u, v))
                masks.append(cm)
    chosen = list(init_masks)
    free0 = n - banned_vmask.bit_count()

    def dfs(idx: int, used: int, need: int) -> bool:
        if need == 0:
            return True
        if (free0 - used.bit_count()) // 2 < need or len(pairs) - idx < need:
            return False
        for j in range(idx, len(pairs)):
            u, v = pairs[j]
            m = (1 << u) | (1 << v)
            if m & used:
                continue
            chosen.append(masks[j])
            if assign_distinct_colors(chosen) is not None:
                if dfs(j + 1, used | m, need - 1):
                    chosen.pop()
                    return True
            chosen.pop()
        return False

    if assign_distinct_colors(chosen) is None:
        return False
    return dfs(0, 0, size)


def _core_order(pattern: Graph) -> list[int]:
    """Edge-touching pattern vertices, most constrained first."""
    core = [v for v in range(pattern.n) if pattern.adj[v]]
    order: list[int] = []
    left = set(core)
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


def rainbow_copy_exists(col: Collection, pattern: Graph) -> bool:
    """Fast existence test; equivalent to find_rainbow_copy(...) is not None."""
    return _exists(col.n, col.adj_rows(), col.union_rows(), pattern)


def _exists(n: int, rows_by_color, union_rows, pattern: Graph) -> bool:
    if pattern.n > n:
        return False
    m = pattern.edge_count()
    if m == 0:
        return True
    if m > len(rows_by_color):
        return False
    if _is_degree_le_one(pattern):
        return _matching_exists_with(n, rows_by_color, m, [], 0)
    order = _core_order(pattern)
    full = (1 << n) - 1
    vmap: dict[int, int] = {}
    edge_masks: list[int] = []

    def extend(idx: int, used: int) -> bool:
        if idx == len(order):
            return assign_distinct_colors(edge_masks) is not None
        pv = order[idx]
        cand = full & ~used
        back = [u for u in order[:idx] if pattern.has_edge(u, pv)]
        for u in back:
            cand &= union_rows[vmap[u]]
        while cand:
            low = cand & -cand
            hv = low.bit_length() - 1
            cand ^= low
            vmap[pv] = hv
            added = 0
            ok = True
            for u in back:
                cm = _pair_color_mask(rows_by_color, vmap[u], hv)
                if cm == 0:
                    ok = False
                    break
                edge_masks.append(cm)
                added += 1
            if ok and assign_distinct_colors(edge_masks) is not None:
                if extend(idx + 1, used | low):
                    return True
            del vmap[pv]
            del edge_masks[len(edge_masks) - added :]
        return False

    return extend(0, 0)


def _exists_using_pair(
    n: int, rows_by_color, union_rows, pattern: Graph, pair: tuple[int, int], forced_color: int | None
) -> bool:
    """Existence of a rainbow copy whose embedding uses the given host pair.

    When ``forced_color`` (1-based) is set, the pattern edge landing on the
    pair must take that color.  This is the incremental check used by the
    searches: after adding one edge to one color, any new rainbow copy must
    route through that (pair, color).
    """
    if pattern.edge_count() == 0 or pattern.edge_count() > len(rows_by_color) or pattern.n > n:
        return False
    full = (1 << n) - 1
    pu, pv = pair
    if _is_degree_le_one(pattern):
        anchor = _pair_color_mask(rows_by_color, min(pu, pv), max(pu, pv))
        if forced_color is not None:
            anchor &= 1 << (forced_color - 1)
        if anchor == 0:
            return False
        return _matching_exists_with(
            n,
            rows_by_color,
            pattern.edge_count() - 1,
            [anchor],
            (1 << pu) | (1 << pv),
        )
    pedges = pattern.edges()
    for a, b in pedges:
        for ha, hb in ((pu, pv), (pv, pu)):
            order = [a, b] + [x for x in _core_order(pattern) if x not in (a, b)]
            vmap = {a: ha, b: hb}
            anchor_mask = _pair_color_mask(rows_by_color, min(ha, hb), max(ha, hb))
            if forced_color is not None:
                anchor_mask &= 1 << (forced_color - 1)
            if anchor_mask == 0:
                continue
            edge_masks = [anchor_mask]

            def extend(idx: int, used: int) -> bool:
                if idx == len(order):
                    return assign_distinct_colors(edge_masks) is not None
                pw = order[idx]
                cand = full & ~used
                back = [u for u in order[:idx] if pattern.has_edge(u, pw)]
                for u in back:
                    cand &= union_rows[vmap[u]]
                while cand:
                    low = cand & -cand
                    hv = low.bit_length() - 1
                    cand ^= low
                    vmap[pw] = hv
                    added = 0
                    ok = True
                    for u in back:
                        cm = _pair_color_mask(rows_by_color, vmap[u], hv)
                        if cm == 0:
                            ok = False
                            break
                        edge_masks.append(cm)
                        added += 1
                    if ok and assign_distinct_colors(edge_masks) is not None:
                        if extend(idx + 1, used | low):
                            return True
                    del vmap[pw]
                    del edge_masks[len(edge_masks) - added :]
                return False

            if extend(2, (1 << ha) | (1 << hb)):
                return True
    return False


def find_rainbow_copy(col: Collection, pattern: Graph) -> RainbowWitness | None:
    """Lexicographically smallest rainbow copy of the pattern, if any.

    Pattern vertices are embedded in index order with host candidates
    ascending, so the first completable embedding has the smallest vmap;
    its color assignment is then minimized edge by edge.  Edgeless
    patterns on k vertices have a (vacuous) copy exactly when n >= k.
    """
    n, t = col.n, col.t
    if pattern.n > n:
        return None
    pedges = pattern.edges()
    if not pedges:
        return RainbowWitness(pattern, tuple(range(pattern.n)), ())
    if len(pedges) > t:
        return None
    rows_by_color = col.adj_rows()
    if _is_pure_matching(pattern):
        return _find_matching_witness(col, pattern, rows_by_color)
    union_rows = col.union_rows()
    full = (1 << n) - 1
    vmap = [-1] * pattern.n

    def masks_for(k: int) -> list[int] | None:
        out = []
        for a, b in pedges:
            if a < k and b < k:
                cm = _pair_color_mask(rows_by_color, vmap[a], vmap[b])
                if cm == 0:
                    return None
                out.append(cm)
        return out

    def extend(k: int, used: int) -> RainbowWitness | None:
        if k == pattern.n:
            masks = masks_for(k)
            assert masks is not None and len(masks) == len(pedges)
            chosen = lexmin_distinct_colors(masks)
            assert chosen is not None
            return RainbowWitness(pattern, tuple(vmap), tuple(c + 1 for c in chosen))
        cand = full & ~used
        for a, b in pedges:
            other = b if a == k else (a if b == k else None)
            if other is not None and other < k:
                cand &= union_rows[vmap[other]]
        while cand:
            low = cand & -cand
            hv = low.bit_length() - 1
            cand ^= low
            vmap[k] = hv
            masks = masks_for(k + 1)
            if masks is not None and assign_distinct_colors(masks) is not None:
                got = extend(k + 1, used | low)
                if got is not None:
                    return got
            vmap[k] = -1
        return None

    return extend(0, 0)


def _find_matching_witness(col: Collection, pattern: Graph, rows_by_color) -> RainbowWitness | None:
    """Lex-min witness for a pure matching pattern via pair-subset search.

    Pair subsets visited in lexicographic order correspond exactly to
    vmap tuples in lexicographic order (matching edges are (2i, 2i+1)
    with sorted host pairs), so the first feasible subset is minimal.
    """
    n = col.n
    size = pattern.edge_count()
    pairs: list[tuple[int, int]] = []
    masks: list[int] = []
    for u in range(n):
        for v in range(u + 1, n):
            cm = _pair_color_mask(rows_by_color, u, v)
            if cm:
                pairs.append((u, v))
                masks.append(cm)
    chosen_masks: list[int] = []
    picked: list[int] = []

    def dfs(idx: int, used: int, need: int) -> bool:
        if need == 0:
            return True
        if (n - used.bit_count()) // 2 < need or len(pairs) - idx < need:
            return False
        for j in range(idx, len(pairs)):
            u, v = pairs[j]
            m = (1 << u) | (1 << v)
            if m & used:
                continue
            chosen_masks.append(masks[j])
            if assign_distinct_colors(chosen_masks) is not None:
                picked.append(j)
                if dfs(j + 1, used | m, need - 1):
                    return True
                picked.pop()
            chosen_masks.pop()
        return False

    if not dfs(0, 0, size):
        return None
    chosen = lexmin_distinct_colors([masks[j] for j in picked])
    assert chosen is not None
    vmap = tuple(x for j in picked for x in pairs[j])
    return RainbowWitness(pattern, vmap, tuple(c + 1 for c in chosen))


def is_rainbow_free(col: Collection, family: PatternFamily) -> bool:
    """No member of the family has a rainbow copy in the collection."""
    rows = col.adj_rows()
    union_rows = col.union_rows()
    return not any(_exists(col.n, rows, union_rows, f) for f in family)


# ---------------------------------------------------------------------
# maximum rainbow matching


def max_rainbow_matching(col: Collection) -> tuple[int, RainbowMatching]:
    """Exact maximum rainbow matching via lexicographic backtracking.

    Edges are scanned in increasing pair order; color feasibility of the
    chosen edge set is maintained as a bipartite matching.  The first
    maximum found in this order is the lexicographically smallest one.
    """
    n, t = col.n, col.t
    pairs: list[tuple[int, int]] = []
    masks: list[int] = []
    rows = col.adj_rows()
    for u in range(n):
        for v in range(u + 1, n):
            cm = _pair_color_mask(rows, u, v)
            if cm:
                pairs.append((u, v))
                masks.append(cm)
    best_set: list[int] = []
    chosen: list[int] = []
    chosen_masks: list[int] = []

    def dfs(idx: int, used: int):
        nonlocal best_set
        if len(chosen) > len(best_set):
            best_set = list(chosen)
        free_cap = (n - used.bit_count()) // 2
        room = min(t - len(chosen), free_cap, len(pairs) - idx)
        if len(chosen) + room <= len(best_set):
            return
        for j in range(idx, len(pairs)):
            u, v = pairs[j]
            m = (1 << u) | (1 << v)
            if m & used:
                continue
            chosen_masks.append(masks[j])
            if assign_distinct_colors(chosen_masks) is not None:
                chosen.append(j)
                dfs(j + 1, used | m)
                chosen.pop()
            chosen_masks.pop()

    dfs(0, 0)
    colors = lexmin_distinct_colors([masks[j] for j in best_set]) or []
    witness = RainbowMatching(
        tuple(pairs[j] for j in best_set), tuple(c + 1 for c in colors)
    )
    return len(best_set), witness


# ---------------------------------------------------------------------
# nesting transform


def nest_transform(col: Collection) -> Collection:
    """Unique nested collection with the same per-pair color multiplicity.

    Pair uv lands in colors 1..m where m is the number of original colors
    containing uv.  This is the fixpoint of the pairwise intersection /
    union exchanges and preserves rainbow freeness for colorless families.
    """
    n, t = col.n, col.t
    rows = [[0] * n for _ in range(t)]
    views = col.adj_rows()
    for u in range(n):
        for v in range(u + 1, n):
            m = _pair_color_mask(views, u, v).bit_count()
            for i in range(m):
                rows[i][u] |= 1 << v
                rows[i][v] |= 1 << u
    return Collection([Graph(n, r) for r in rows])
