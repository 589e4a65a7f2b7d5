"""Matching toolkit for collections: greedy growth, strong colors, covers.

The operations here are the executable counterparts of the standard
hand-proof steps used on rainbow matchings:

* two greedy procedures that grow a rainbow matching one color at a
  time from high-degree center vertices, and never fail under their
  stated degree preconditions;
* the exact "strong color" predicate (every rainbow matching of size at
  most s avoiding color i extends by an i-colored edge) together with
  three cheaply checkable sufficient conditions;
* its "very strong" variant quantifying over rainbow stars padded with
  isolated edges;
* the structure trichotomy of collections without a rainbow 2-matching;
* the rainbow-star-or-cover alternative at a fixed center vertex,
  computed by repeatedly deleting Hall violators with minimal
  neighborhood from the incident-edge/color bipartite graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .graphcore import Graph, matching_number_at_least
from .collection import (
    Collection,
    RainbowMatching,
    RainbowWitness,
    assign_distinct_colors,
    lexmin_distinct_colors,
    find_rainbow_copy,
    _pair_color_mask,
)


class PreconditionViolated(ValueError):
    """A greedy procedure was invoked outside its guaranteed regime."""


class TooSmall(ValueError):
    """Host has too few vertices for the requested structure analysis."""


# ---------------------------------------------------------------------
# greedy rainbow matchings


def greedy_extend(
    col: Collection, m0: RainbowMatching, centers: dict[int, int], q: int
) -> RainbowMatching:
    """Grow a rainbow matching of colors 1..p to size q along center vertices.

    ``centers[i]`` for p < i <= q must be distinct vertices outside the
    matching with degree at least 2q-1 in color i.  Each step picks the
    smallest usable neighbor; at most 2q-2 vertices ever need avoiding,
    so the procedure cannot fail once the preconditions hold.
    """
    try:
        m0.validate(col)
    except ValueError as exc:
        raise PreconditionViolated(f"M0 invalid: {exc}") from exc
    p = m0.size
    if set(m0.colors) != set(range(1, p + 1)):
        raise PreconditionViolated(f"M0 must use colors 1..{p}, got {sorted(m0.colors)}")
    if q < p:
        raise PreconditionViolated(f"target size {q} smaller than |M0|={p}")
    if set(centers) != set(range(p + 1, q + 1)):
        raise PreconditionViolated(
            f"centers must be keyed by colors {p + 1}..{q}, got {sorted(centers)}"
        )
    if len(set(centers.values())) != len(centers):
        raise PreconditionViolated("center vertices must be distinct")
    m0_vertices = m0.vertex_set()
    threshold = 2 * q - 1
    for i, v in centers.items():
        if not 0 <= v < col.n:
            raise PreconditionViolated(f"center {v} outside the vertex set")
        if v in m0_vertices:
            raise PreconditionViolated(f"center {v} lies inside M0")
        if col.graph(i).degree(v) < threshold:
            raise PreconditionViolated(
                f"center {v} has degree {col.graph(i).degree(v)} < {threshold} in color {i}"
            )

    avoid = set(m0_vertices) | set(centers.values())
    edges = list(m0.edges)
    colors = list(m0.colors)
    for i in range(p + 1, q + 1):
        v = centers[i]
        row = col.graph(i).adj[v]
        u = None
        while row:
            low = row & -row
            w = low.bit_length() - 1
            row ^= low
            if w not in avoid:
                u = w
                break
        assert u is not None, "counting guarantees a free neighbor"
        avoid.add(u)
        edges.append((min(u, v), max(u, v)))
        colors.append(i)
    out = RainbowMatching(tuple(edges), tuple(colors))
    out.validate(col)
    return out


def greedy_from_degrees(col: Collection, q: int) -> RainbowMatching:
    """Build a rainbow matching of size q from per-color degree supplies.

    Requires color i (for each i <= q) to have at least i vertices of
    degree at least 2q-1.  Distinct centers are picked in increasing
    color order and handed to greedy_extend.
    """
    if q < 0 or q > col.t:
        raise PreconditionViolated(f"size {q} outside 0..t={col.t}")
    threshold = 2 * q - 1
    centers: dict[int, int] = {}
    used: set[int] = set()
    for i in range(1, q + 1):
        high = [v for v in range(col.n) if col.graph(i).degree(v) >= threshold]
        if len(high) < i:
            raise PreconditionViolated(
                f"color {i} has {len(high)} vertices of degree >= {threshold}, needs {i}"
            )
        v = next(v for v in high if v not in used)
        used.add(v)
        centers[i] = v
    return greedy_extend(col, RainbowMatching((), ()), centers, q)


# ---------------------------------------------------------------------
# strong colors


class StrongVerdict(Enum):
    BY_EDGE_COUNT = "ByEdgeCount"
    BY_LOW_DEGREE = "ByLowDegree"
    BY_BIG_MATCHING = "ByBigMatching"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class StrongColorEvidence:
    verdict: StrongVerdict


def _matchings_avoiding(col: Collection, banned_color: int, max_size: int):
    """Yield the used-vertex mask of every rainbow matching of size <= max_size
    that avoids the banned color (the empty matching included)."""
    pairs: list[tuple[int, int, int]] = []
    drop = ~(1 << (banned_color - 1))
    for u in range(col.n):
        for v in range(u + 1, col.n):
            cm = _pair_color_mask(col.adj_rows(), u, v) & drop
            if cm:
                pairs.append((u, v, cm))
    chosen_masks: list[int] = []

    def dfs(idx: int, used: int, size: int):
        yield used
        if size == max_size:
            return
        for j in range(idx, len(pairs)):
            u, v, cm = pairs[j]
            m = (1 << u) | (1 << v)
            if m & used:
                continue
            chosen_masks.append(cm)
            if assign_distinct_colors(chosen_masks) is not None:
                yield from dfs(j + 1, used | m, size + 1)
            chosen_masks.pop()

    yield from dfs(0, 0, 0)


def strong_color_exact(col: Collection, i: int, s: int) -> bool:
    """Exact strong-color predicate, by exhausting small rainbow matchings.

    True iff every rainbow matching of size s' <= s avoiding color i
    (including the empty one, so an empty color is never strong) leaves
    some edge of color i vertex-disjoint from it.
    """
    if not 1 <= i <= col.t:
        raise ValueError(f"color {i} outside 1..{col.t}")
    gi_masks = [(1 << u) | (1 << v) for u, v in col.graph(i).edges()]
    if not gi_masks:
        return False
    for used in _matchings_avoiding(col, i, s):
        if not any(not m & used for m in gi_masks):
            return False
    return True


def strong_color_sufficient(col: Collection, i: int, s: int) -> StrongColorEvidence:
    """First applicable sufficient condition for color i being strong.

    Checked in the order: edge surplus, big monochromatic matching, then
    the many-edges/few-hubs condition.  The degree threshold n/2s is
    compared in integers as 2s*deg >= n.

    The low-degree case carries one extra exact check: the edges among
    low-degree vertices must outnumber the largest possible number of
    them meeting any 2s such vertices.  At proof scale this is implied
    by the other two hypotheses; at small n it is not, and without it
    the verdict can contradict the exact predicate (a 5-vertex double
    broom whose middle pair carries another color already fails).
    """
    if not 1 <= i <= col.t:
        raise ValueError(f"color {i} outside 1..{col.t}")
    g = col.graph(i)
    n = col.n
    e = g.edge_count()
    if e > 2 * s * (n - 2 * s) + (2 * s) * (2 * s - 1) // 2:
        return StrongColorEvidence(StrongVerdict.BY_EDGE_COUNT)
    if matching_number_at_least(g, 2 * s + 1):
        return StrongColorEvidence(StrongVerdict.BY_BIG_MATCHING)
    hub_mask = 0
    for v in range(n):
        if 2 * s * g.degree(v) >= n:
            hub_mask |= 1 << v
    if e >= s * (n - s) and hub_mask.bit_count() < s:
        inside = [
            (u, v) for u, v in g.edges() if not ((hub_mask >> u | hub_mask >> v) & 1)
        ]
        deg_in = [0] * n
        for u, v in inside:
            deg_in[u] += 1
            deg_in[v] += 1
        worst_kill = sum(sorted(deg_in, reverse=True)[: 2 * s])
        if len(inside) > worst_kill:
            return StrongColorEvidence(StrongVerdict.BY_LOW_DEGREE)
    return StrongColorEvidence(StrongVerdict.UNKNOWN)


def very_strong_color(col: Collection, i: int, r: int, m: int) -> bool:
    """Strong-color variant against rainbow stars padded with isolated edges.

    True iff for every rainbow S_r plus up to m-1 further pairwise
    disjoint edges (all colors distinct, color i unused throughout),
    some edge of color i avoids every vertex of the configuration.
    Configurations without an actual S_r core are not quantified, but an
    empty color is never very strong.
    """
    if r < 2 or m < 1:
        raise ValueError("need r >= 2 and m >= 1")
    if not 1 <= i <= col.t:
        raise ValueError(f"color {i} outside 1..{col.t}")
    gi_masks = [(1 << u) | (1 << v) for u, v in col.graph(i).edges()]
    if not gi_masks:
        return False
    drop = ~(1 << (i - 1))
    n = col.n
    pairs: list[tuple[int, int, int]] = []
    for u in range(n):
        for v in range(u + 1, n):
            cm = _pair_color_mask(col.adj_rows(), u, v) & drop
            if cm:
                pairs.append((u, v, cm))

    def avoided(used: int) -> bool:
        return any(not gm & used for gm in gi_masks)

    extra_masks: list[int] = []

    def extras(idx: int, used: int, budget: int, config: list[int]) -> bool:
        # True while every configuration reachable from here is avoided
        if not avoided(used):
            return False
        if budget == 0:
            return True
        for j in range(idx, len(pairs)):
            u, v, cm = pairs[j]
            pm = (1 << u) | (1 << v)
            if pm & used:
                continue
            extra_masks.append(cm)
            if assign_distinct_colors(config + extra_masks) is not None:
                if not extras(j + 1, used | pm, budget - 1, config):
                    extra_masks.pop()
                    return False
            extra_masks.pop()
        return True

    for center in range(n):
        nbrs = []
        for leaf in range(n):
            if leaf == center:
                continue
            cm = _pair_color_mask(col.adj_rows(), min(center, leaf), max(center, leaf)) & drop
            if cm:
                nbrs.append((leaf, cm))
        if len(nbrs) < r:
            continue
        for combo in combinations(nbrs, r):
            star_masks = [cm for _, cm in combo]
            if assign_distinct_colors(star_masks) is None:
                continue
            used = 1 << center
            for leaf, _ in combo:
                used |= 1 << leaf
            if not extras(0, used, m - 1, star_masks):
                return False
    return True


# ---------------------------------------------------------------------
# structure without a rainbow 2-matching


@dataclass(frozen=True)
class M2Structure:
    """Trichotomy outcome: which of the three shapes the collection has."""

    kind: str  # "has_rainbow_m2" | "common_vertex" | "all_but_one_small"
    witness: RainbowWitness | None = None
    vertex: int | None = None
    exempt: int | None = None


def m2_structure(col: Collection) -> M2Structure:
    """Classify a collection by rainbow-2-matching structure.

    Either a rainbow 2-matching exists (witness returned), or some vertex
    meets every edge of every color (smallest such vertex returned), or
    every color except at most one has few edges (the color with the most
    edges is exempted, smallest index on ties).
    """
    if col.n < 4:
        raise TooSmall(f"need at least 4 vertices, have {col.n}")
    w = find_rainbow_copy(col, Graph.matching(2))
    if w is not None:
        return M2Structure(kind="has_rainbow_m2", witness=w)
    union = col.union_rows()
    edges = [(u, v) for u in range(col.n) for v in range(u + 1, col.n) if union[u] >> v & 1]
    for v in range(col.n):
        if all(v in e for e in edges):
            return M2Structure(kind="common_vertex", vertex=v)
    counts = col.edge_counts()
    exempt = max(range(1, col.t + 1), key=lambda i: (counts[i - 1], -i))
    return M2Structure(kind="all_but_one_small", exempt=exempt)


# ---------------------------------------------------------------------
# rainbow star or small cover at a vertex


@dataclass(frozen=True)
class StarCover:
    """Either a rainbow star witness at v, or a small cover of exceptions.

    In the cover case every color outside ``exempt`` that appears on an
    edge incident to v appears only on ``cover`` edges; both parts have
    fewer than p elements.
    """

    witness: RainbowWitness | None
    cover: tuple[tuple[int, int], ...] = ()
    exempt: tuple[int, ...] = ()


def _max_matching_size(masks: list[int]) -> int:
    owner: dict[int, int] = {}

    def augment(idx: int, banned: set[int]) -> bool:
        m = masks[idx]
        while m:
            low = m & -m
            c = low.bit_length() - 1
            m ^= low
            if c in banned:
                continue
            banned.add(c)
            if c not in owner or augment(owner[c], banned):
                owner[c] = idx
                return True
        return False

    return sum(1 for idx in range(len(masks)) if augment(idx, set()))


def star_cover(col: Collection, v: int, p: int) -> StarCover:
    """Rainbow S_p centered at v, or the Hall-deletion cover certificate.

    Builds the bipartite graph of v-incident edges versus their colors.
    A matching of size p yields the star.  Otherwise Hall violators with
    minimal neighborhood (lexicographically smallest on ties) are deleted
    round by round; deleted colors become exempt, their matched edges and
    the undeleted leftovers form the cover.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if not 0 <= v < col.n:
        raise ValueError(f"vertex {v} outside 0..{col.n - 1}")
    others = sorted(set(range(col.n)) - {v})
    incident: list[int] = []  # leaf endpoints, ascending
    masks: list[int] = []
    for u in others:
        cm = _pair_color_mask(col.adj_rows(), min(u, v), max(u, v))
        if cm:
            incident.append(u)
            masks.append(cm)

    if _max_matching_size(masks) >= p:
        leaves = _lexmin_star_leaves(masks, p)
        leaf_masks = [masks[j] for j in leaves]
        chosen = lexmin_distinct_colors(leaf_masks)
        assert chosen is not None
        vmap = tuple([v] + [incident[j] for j in leaves])
        witness = RainbowWitness(Graph.star(p), vmap, tuple(c + 1 for c in chosen))
        witness.validate(col)
        return StarCover(witness=witness)

    alive = list(range(len(incident)))
    live_colors = 0
    for m in masks:
        live_colors |= m
    exempt_bits = 0
    matched_cover: list[int] = []
    while True:
        violator = None  # (|B'|, tuple(A'), B' bits)
        for size in range(1, len(alive) + 1):
            for sub in combinations(alive, size):
                nb = 0
                for j in sub:
                    nb |= masks[j] & live_colors
                if nb.bit_count() < size:
                    key = (nb.bit_count(), sub)
                    if violator is None or key < (violator[0], violator[1]):
                        violator = (nb.bit_count(), sub, nb)
        if violator is None:
            break
        _, sub, nb = violator
        matched_cover.extend(_match_covering_colors(sub, masks, nb))
        exempt_bits |= nb
        live_colors &= ~nb
        alive = [j for j in alive if j not in sub]
        masks = [m & live_colors if idx in alive else m for idx, m in enumerate(masks)]

    cover_idx = sorted(set(matched_cover) | set(alive))
    cover = tuple((min(v, incident[j]), max(v, incident[j])) for j in cover_idx)
    exempt = []
    while exempt_bits:
        low = exempt_bits & -exempt_bits
        exempt.append(low.bit_length())
        exempt_bits ^= low
    assert len(cover) <= p - 1 and len(exempt) <= p - 1
    return StarCover(witness=None, cover=cover, exempt=tuple(exempt))


def _lexmin_star_leaves(masks: list[int], p: int) -> list[int]:
    """Smallest index set of p edges that still admits a full matching."""
    chosen: list[int] = []
    for j in range(len(masks)):
        if len(chosen) == p:
            break
        trial = chosen + [j]
        pool = trial + list(range(j + 1, len(masks)))
        if _max_matching_with_forced([masks[x] for x in trial], [masks[x] for x in range(j + 1, len(masks))]) >= p:
            chosen = trial
    assert len(chosen) == p
    return chosen


def _max_matching_with_forced(forced: list[int], optional: list[int]) -> int:
    masks = forced + optional
    owner: dict[int, int] = {}

    def augment(idx: int, banned: set[int]) -> bool:
        m = masks[idx]
        while m:
            low = m & -m
            c = low.bit_length() - 1
            m ^= low
            if c in banned:
                continue
            banned.add(c)
            if c not in owner or augment(owner[c], banned):
                owner[c] = idx
                return True
        return False

    for idx in range(len(forced)):
        if not augment(idx, set()):
            return -1
    extra = sum(1 for idx in range(len(forced), len(masks)) if augment(idx, set()))
    return len(forced) + extra


def _match_covering_colors(sub: tuple[int, ...], masks: list[int], color_bits: int) -> list[int]:
    """Edges of the deleted block matched to its colors, one per color."""
    owner: dict[int, int] = {}  # edge index -> color

    def augment(c: int, banned: set[int]) -> bool:
        for j in sub:
            if not masks[j] >> c & 1 or j in banned:
                continue
            banned.add(j)
            if j not in owner or augment(owner[j], banned):
                owner[j] = c
                return True
        return False

    bits = color_bits
    while bits:
        low = bits & -bits
        c = low.bit_length() - 1
        bits ^= low
        ok = augment(c, set())
        assert ok, "minimal Hall violator always has a matching onto its colors"
    return sorted(owner)
