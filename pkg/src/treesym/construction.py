"""Parameter computation and witness construction.

Colorings live on internal vertex ids.  Color 0 is reserved for the repair
color written as ``*`` in output; palettes are 1..k.

The canonical order on coloring classes, used by rank/unrank, is: root
color ascending, then sibling classes in code order, then within a class
the strictly decreasing tuple of child-class ranks in subset-rank order.
It exists purely to make counts, ranks, and constructed witnesses
deterministic and bijective.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .counting import BigCount, CountTable
from .errors import (
    CountIndexError,
    NoColoringError,
    NotDistinguishingError,
    SaturatedCountError,
)
from .trees import RootedTree, Tree, to_rooted

STAR_COLOR = 0


@dataclass(frozen=True)
class Coloring:
    """Total assignment of color ids to vertex ids."""

    colors: dict

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def restricted_to(self, vertices) -> "Coloring":
        keep = set(vertices)
        return Coloring({v: c for v, c in self.colors.items() if v in keep})


@dataclass(frozen=True)
class Certificate:
    """Witness that the proper variant needs one extra color: a vertex of
    the rooted reduction together with a full sibling class that is too
    large for the colorings available to it."""

    vertex: int
    children: tuple
    k: int
    degenerate: bool = False


def _as_rooted(t) -> RootedTree:
    if isinstance(t, RootedTree):
        return t
    if isinstance(t, Tree):
        return to_rooted(t)
    raise TypeError(f"expected Tree or RootedTree, got {type(t).__name__}")


def _as_colors(coloring) -> dict:
    return coloring.colors if isinstance(coloring, Coloring) else dict(coloring)


def _exact_index(index) -> int:
    if isinstance(index, BigCount):
        if index.saturated:
            raise SaturatedCountError(
                "index is a saturated count; rerun the count uncapped"
            )
        return index.value
    return int(index)


def _least_positive_k(positive, start: int = 1, limit: int | None = None) -> int:
    # linear probes while k is small (answers usually are), then doubling;
    # a final bisection pins the threshold
    if positive(start):
        return start
    lo = start
    k = start + 1
    while not positive(k):
        if limit is not None and k >= limit:
            raise NoColoringError(f"no positive count for any k <= {limit}")
        lo = k
        k = k + 1 if k < start + 8 else k * 2
    hi = k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if positive(mid):
            hi = mid
        else:
            lo = mid
    return hi


def distinguishing_number(t) -> int:
    """Least k admitting a distinguishing k-coloring.

    Uses saturating counts (cap n+1) and a doubling-plus-bisection search,
    so it stays fast on large trees.
    """
    rt = _as_rooted(t)
    table = CountTable(rt, cap=rt.n + 1)
    return _least_positive_k(
        lambda k: table.distinguishing_raw(rt.root, k) > 0, limit=2 * rt.n + 2
    )


def _halves_rigid(rt: RootedTree, table: CountTable) -> bool:
    u, v = rt.children[rt.root]
    return (table.distinguishing_raw(u, 1) == 1
            and table.distinguishing_raw(v, 1) == 1)


def distinguishing_chromatic_number(t) -> int:
    """Least k admitting a proper distinguishing k-coloring.

    Edge-centered trees where no nontrivial automorphism fixes both central
    endpoints are 2-colorable distinguishably; all other edge-centered
    trees need at least 3 colors, at which point the subdivided reduction
    gives the exact answer.
    """
    rt = _as_rooted(t)
    table = CountTable(rt, cap=rt.n + 1)

    def positive(k: int) -> bool:
        return table.proper_raw(rt.root, k) > 0

    if not rt.subdivided:
        return _least_positive_k(positive, limit=2 * rt.n + 2)
    if _halves_rigid(rt, table):
        return 2
    return _least_positive_k(positive, start=3, limit=2 * rt.n + 2)


# -- subset rank/unrank ----------------------------------------------------


def _subset_rank(sorted_asc) -> int:
    return sum(comb(c, i + 1) for i, c in enumerate(sorted_asc))


def _subset_unrank_desc(r: int, m: int) -> list:
    """The m-subset with subset rank r, as a strictly decreasing list."""
    out = []
    for i in range(m, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        out.append(c)
        r -= comb(c, i)
    return out


# -- rank / unrank ----------------------------------------------------------


def unrank_distinguishing(rt: RootedTree, k: int, index) -> Coloring:
    """Canonical representative of the index-th class of distinguishing
    k-colorings; distinct indices yield inequivalent colorings."""
    idx = _exact_index(index)
    table = CountTable(rt)
    total = table.distinguishing_raw(rt.root, k)
    if not 0 <= idx < total:
        raise CountIndexError(f"index {idx} outside [0, {total})")
    out: dict = {}
    stack = [(rt.root, idx)]
    while stack:
        v, ix = stack.pop()
        classes = rt.sibling_classes(v)
        bases = [
            comb(table.distinguishing_raw(cls.representative, k), cls.size)
            for cls in classes
        ]
        block = 1
        for b in bases:
            block *= b
        out[v] = ix // block + 1
        rem = ix % block
        for cls, b in zip(classes, bases):
            block //= b
            ranks = _subset_unrank_desc(rem // block, cls.size)
            rem %= block
            for child, r in zip(cls.members, ranks):
                stack.append((child, r))
    return Coloring(out)


def rank_distinguishing(rt: RootedTree, k: int, coloring) -> BigCount:
    """Index of the coloring's equivalence class in the canonical order;
    inverse of :func:`unrank_distinguishing` on class representatives."""
    colors = _as_colors(coloring)
    for v in range(rt.n):
        if v not in colors:
            raise ValueError(f"coloring misses vertex {v}")
        if not 1 <= colors[v] <= k:
            raise ValueError(f"color {colors[v]} at vertex {v} outside 1..{k}")
    table = CountTable(rt)
    ranks: dict = {}
    for v in reversed(rt.bfs_order):
        idx = colors[v] - 1
        for cls in rt.sibling_classes(v):
            rs = sorted(ranks[c] for c in cls.members)
            if len(set(rs)) != cls.size:
                raise NotDistinguishingError(
                    f"children of vertex {v} carry equivalent colorings"
                )
            d = table.distinguishing_raw(cls.representative, k)
            idx = idx * comb(d, cls.size) + _subset_rank(rs)
        ranks[v] = idx
    return BigCount(ranks[rt.root])


def unrank_proper_distinguishing(rt: RootedTree, k: int, root_color: int,
                                 index) -> Coloring:
    """Representative of the index-th class of proper distinguishing
    k-colorings with the root colored ``root_color``."""
    if not 1 <= root_color <= k:
        raise ValueError(f"root color {root_color} outside 1..{k}")
    return Coloring(_unrank_proper_from(rt, rt.root, k, root_color,
                                        _exact_index(index)))


def _unrank_proper_from(rt: RootedTree, start: int, k: int, root_color: int,
                        idx: int) -> dict:
    table = CountTable(rt)
    total = table.proper_raw(start, k)
    if not 0 <= idx < total:
        raise CountIndexError(f"index {idx} outside [0, {total})")
    out: dict = {}
    stack = [(start, root_color, idx)]
    while stack:
        v, color, ix = stack.pop()
        out[v] = color
        classes = rt.sibling_classes(v)
        infos = []
        block = 1
        for cls in classes:
            dchi = table.proper_raw(cls.representative, k)
            b = comb((k - 1) * dchi, cls.size)
            infos.append((cls, dchi, b))
            block *= b
        allowed = [c for c in range(1, k + 1) if c != color]
        rem = ix
        for cls, dchi, b in infos:
            block //= b
            slots = _subset_unrank_desc(rem // block, cls.size)
            rem %= block
            for child, a in zip(cls.members, slots):
                stack.append((child, allowed[a // dchi], a % dchi))
    return out


# -- properization and certificates ----------------------------------------


def properize(rt: RootedTree, coloring) -> Coloring:
    """Repair a distinguishing coloring into a proper one with one extra
    color: walking top-down, a child clashing with its parent's repaired
    color is recolored ``*`` (color 0).  The result stays distinguishing."""
    base = _as_colors(coloring)
    for v in range(rt.n):
        if v not in base:
            raise ValueError(f"coloring misses vertex {v}")
    out = {rt.root: base[rt.root]}
    for v in rt.bfs_order:
        for u in rt.children[v]:
            out[u] = STAR_COLOR if out[v] == base[u] else base[u]
    return Coloring(out)


def chi_certificate(t) -> Certificate | None:
    """Certificate that the proper parameter exceeds the plain one, or None
    when the two coincide.

    With k the distinguishing number: a tree on at least two vertices with
    k = 1 gets the degenerate certificate; otherwise some vertex of the
    rooted reduction must own a sibling class larger than the pool of
    proper colorings available to it, and that (vertex, class) pair is the
    certificate.  Edge-centered trees whose halves are rigid are the
    2-proper-colorable special case and never carry one.
    """
    rt = _as_rooted(t)
    k = distinguishing_number(rt)
    if rt.origin_count == 1:
        return None
    if k == 1:
        return Certificate(rt.root, (), 1, degenerate=True)
    table = CountTable(rt, cap=rt.n + 2)
    if rt.subdivided and _halves_rigid(rt, table):
        return None
    for v in rt.bfs_order:
        for cls in rt.sibling_classes(v):
            # saturated counts exceed n+1 > class size, so the comparison
            # below is exact either way
            pool = (k - 1) * table.proper_raw(cls.representative, k)
            if pool < cls.size:
                return Certificate(v, cls.members, k, degenerate=False)
    return None


# -- whole-tree witnesses ----------------------------------------------------


def _restrict_to_origin(rt: RootedTree, coloring: Coloring) -> Coloring:
    if not rt.subdivided:
        return coloring
    return Coloring({v: c for v, c in coloring.colors.items()
                     if v != rt.subdivision_vertex})


def construct_distinguishing_coloring(t, k: int | None = None) -> Coloring:
    """A distinguishing k-coloring of the input tree (class representative
    at index 0 of the rooted reduction, synthetic vertex dropped)."""
    rt = _as_rooted(t)
    needed = distinguishing_number(rt)
    if k is None:
        k = needed
    elif k < needed:
        raise NoColoringError(
            f"no distinguishing {k}-coloring exists; need at least {needed} colors"
        )
    return _restrict_to_origin(rt, unrank_distinguishing(rt, k, 0))


def _parity_coloring(rt: RootedTree) -> Coloring:
    # proper 2-coloring of an edge-centered tree, synthetic vertex dropped;
    # colors follow distance parity from one central endpoint
    first = rt.children[rt.root][0]
    side = bytearray(rt.n)
    stack = [first]
    while stack:
        x = stack.pop()
        side[x] = 1
        stack.extend(rt.children[x])
    out = {}
    for v in range(rt.n):
        if v == rt.subdivision_vertex:
            continue
        dist = rt.depth[v] - 1 if side[v] else rt.depth[v]
        out[v] = 1 + dist % 2
    return Coloring(out)


def construct_proper_distinguishing_coloring(t, k: int | None = None,
                                             index=0) -> Coloring:
    """A proper distinguishing k-coloring of the input tree.

    Vertex-centered (and plain rooted) trees take the index-th class with
    the root colored 1.  Edge-centered trees are colored half by half with
    the two central endpoints pinned to colors 1 and 2, indexing the pair
    of half classes; their 2-colorable special case has one witness, the
    distance-parity coloring.
    """
    rt = _as_rooted(t)
    needed = distinguishing_chromatic_number(rt)
    if k is None:
        k = needed
    elif k < needed:
        raise NoColoringError(
            f"no proper distinguishing {k}-coloring exists; need at least {needed} colors"
        )
    idx = _exact_index(index)
    if not rt.subdivided:
        return Coloring(_unrank_proper_from(rt, rt.root, k, 1, idx))
    if k == 2:
        if idx != 0:
            raise CountIndexError("the 2-colorable edge-centered case has one witness")
        return _parity_coloring(rt)
    # gluing: the subdivided reduction must not be used here, because the
    # two central endpoints are adjacent in the original tree
    u, v = rt.children[rt.root]
    right_total = CountTable(rt).proper_raw(v, k)
    left = _unrank_proper_from(rt, u, k, 1, idx // right_total)
    right = _unrank_proper_from(rt, v, k, 2, idx % right_total)
    return Coloring({**left, **right})
