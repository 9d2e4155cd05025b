"""Tree structures, parsing, centers, rooted reductions, and canonical codes.

Vertices are dense integer ids ``0..n-1`` bound to external string labels.
A :class:`RootedTree` adds parent/children arrays plus a canonical code per
rooted subtree; two subtrees get equal codes exactly when they are
isomorphic root-to-root, which is what every counting and construction
routine in the package leans on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidTreeError, TreeSyntaxError

SYNTHETIC_CENTER_LABEL = "⟨center⟩"


class Tree:
    """Immutable unrooted tree; ``labels[i]`` names vertex id ``i``."""

    def __init__(self, labels, edges):
        self.labels = tuple(str(s) for s in labels)
        n = len(self.labels)
        if n == 0:
            raise InvalidTreeError("empty input: a tree needs at least one vertex")
        if len(set(self.labels)) != n:
            raise InvalidTreeError("vertex labels must be unique")
        seen = set()
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidTreeError(f"edge ({u},{v}) references unknown vertex ids")
            if u == v:
                raise InvalidTreeError(f"self-loop at {self.labels[u]!r}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InvalidTreeError(
                    f"duplicate edge {self.labels[u]!r} {self.labels[v]!r}"
                )
            seen.add((u, v))
            norm.append((u, v))
        self.edges = tuple(norm)
        if len(self.edges) > n - 1:
            raise InvalidTreeError("cycle detected: too many edges")
        if len(self.edges) < n - 1:
            raise InvalidTreeError("disconnected input: too few edges")
        self._build_csr()
        # n-1 edges plus full reachability rules out both cycles and splits
        if n > 1:
            off, flat = self._adj_off, self._adj_flat
            seen_v = bytearray(n)
            seen_v[0] = 1
            stack = [0]
            reached = 1
            while stack:
                x = stack.pop()
                for j in range(off[x], off[x + 1]):
                    y = flat[j]
                    if not seen_v[y]:
                        seen_v[y] = 1
                        reached += 1
                        stack.append(y)
            if reached != n:
                raise InvalidTreeError("disconnected input")
        self._adjacency: tuple | None = None
        self._ids: dict | None = None
        self._rooted: "RootedTree | None" = None

    def _build_csr(self):
        # flat neighbor array with per-vertex offsets; the traversal-heavy
        # internals read this instead of per-vertex tuples
        n = len(self.labels)
        off = [0] * (n + 2)
        for u, v in self.edges:
            off[u + 2] += 1
            off[v + 2] += 1
        for i in range(2, n + 2):
            off[i] += off[i - 1]
        flat = [0] * (2 * len(self.edges))
        for u, v in self.edges:
            flat[off[u + 1]] = v
            off[u + 1] += 1
            flat[off[v + 1]] = u
            off[v + 1] += 1
        self._adj_off = off
        self._adj_flat = flat

    @classmethod
    def _trusted(cls, labels: tuple, edges: list) -> "Tree":
        # internal fast path for trees built from already-validated parts
        t = object.__new__(cls)
        t.labels = labels
        t.edges = tuple(edges)
        t._build_csr()
        t._adjacency = None
        t._ids = None
        t._rooted = None
        return t

    @property
    def _label_ids(self) -> dict:
        if self._ids is None:
            self._ids = {s: i for i, s in enumerate(self.labels)}
        return self._ids

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def adjacency(self) -> tuple:
        """Neighbor tuples per vertex id, in ascending order."""
        if self._adjacency is None:
            off, flat = self._adj_off, self._adj_flat
            self._adjacency = tuple(
                tuple(sorted(flat[off[v]:off[v + 1]]))
                for v in range(len(self.labels))
            )
        return self._adjacency

    def degree(self, v: int) -> int:
        return self._adj_off[v + 1] - self._adj_off[v]

    def vertex_id(self, label: str) -> int:
        try:
            return self._label_ids[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def labeled_edges(self) -> frozenset:
        return frozenset(
            frozenset((self.labels[u], self.labels[v])) for u, v in self.edges
        )

    def __repr__(self):
        return f"Tree(n={self.n})"


def center(t: Tree) -> frozenset:
    """Vertex set of minimum eccentricity: one vertex, or two adjacent ones.

    Computed by iteratively stripping leaves, so it runs in linear time.
    """
    n = t.n
    if n <= 2:
        return frozenset(range(n))
    off, flat = t._adj_off, t._adj_flat
    deg = [off[v + 1] - off[v] for v in range(n)]
    leaves = [v for v in range(n) if deg[v] == 1]
    count = n
    while count > 2:
        count -= len(leaves)
        nxt = []
        for v in leaves:
            for w in flat[off[v]:off[v + 1]]:
                if deg[w] > 0:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
            deg[v] = 0
        leaves = nxt
    return frozenset(leaves)


class RootedTree:
    """A rooted view of a tree: parent/children arrays, BFS order, codes.

    ``subdivided`` marks trees produced from an edge-centered input, where a
    synthetic vertex (the new root) splits the central edge.  All original
    vertices keep their ids; the synthetic vertex gets the last id.
    """

    def __init__(self, base: Tree, root: int, subdivided: bool = False,
                 subdivision_vertex: int | None = None,
                 origin_count: int | None = None):
        if subdivided != (subdivision_vertex is not None):
            raise InvalidTreeError("subdivision flag inconsistent with subdivision vertex")
        self._base = base
        self._pending_base = None
        self.root = int(root)
        self.subdivided = bool(subdivided)
        self.subdivision_vertex = subdivision_vertex
        self.origin_count = base.n if origin_count is None else int(origin_count)
        n = base.n
        if not 0 <= self.root < n:
            raise InvalidTreeError(f"root id {root} out of range")
        parent = [-1] * n
        depth = [0] * n
        span = [0] * (2 * n)
        order = [self.root]
        seen = bytearray(n)
        seen[self.root] = 1
        i = 0
        off, flat = base._adj_off, base._adj_flat
        while i < len(order):
            v = order[i]
            i += 1
            span[2 * v] = len(order)
            dv = depth[v] + 1
            for w in flat[off[v]:off[v + 1]]:
                if not seen[w]:
                    seen[w] = 1
                    parent[w] = v
                    depth[w] = dv
                    order.append(w)
            span[2 * v + 1] = len(order)
        self.parent = tuple(parent)
        self.depth = tuple(depth)
        self.bfs_order = tuple(order)
        self._child_span = span
        r = self.root
        if self.subdivided and (self.subdivision_vertex != r
                                or span[2 * r + 1] - span[2 * r] != 2):
            raise InvalidTreeError("subdivision vertex must be the root covering one edge")
        self._init_caches()

    def _init_caches(self):
        self._children: tuple | None = None
        self._code_ids: tuple | None = None
        self._strings: dict | None = None
        self._ranks: dict | None = None
        self._sizes: tuple | None = None
        self._class_structure: tuple | None = None

    @classmethod
    def _subdividing(cls, t: Tree, u: int, v: int, label: str) -> "RootedTree":
        # rooted view of t with the edge (u, v) split by a synthetic root;
        # the subdivided base tree itself is materialized only on demand
        rt = object.__new__(cls)
        x = t.n
        n = x + 1
        rt._base = None
        rt._pending_base = (t, label)
        rt.root = x
        rt.subdivided = True
        rt.subdivision_vertex = x
        rt.origin_count = t.n
        parent = [-1] * n
        depth = [0] * n
        span = [0] * (2 * n)
        parent[u] = x
        parent[v] = x
        depth[u] = depth[v] = 1
        span[2 * x], span[2 * x + 1] = 1, 3
        order = [x, u, v]
        seen = bytearray(n)
        seen[x] = seen[u] = seen[v] = 1
        off, flat = t._adj_off, t._adj_flat
        i = 1
        while i < len(order):
            y = order[i]
            i += 1
            span[2 * y] = len(order)
            dy = depth[y] + 1
            for w in flat[off[y]:off[y + 1]]:
                if not seen[w]:
                    seen[w] = 1
                    parent[w] = y
                    depth[w] = dy
                    order.append(w)
            span[2 * y + 1] = len(order)
        rt.parent = tuple(parent)
        rt.depth = tuple(depth)
        rt.bfs_order = tuple(order)
        rt._child_span = span
        rt._init_caches()
        return rt

    @property
    def children(self) -> tuple:
        """Children per vertex, in BFS discovery order (materialized lazily;
        the children of each vertex sit contiguously in ``bfs_order``)."""
        if self._children is None:
            order = self.bfs_order
            span = self._child_span
            self._children = tuple(
                tuple(order[span[2 * v]:span[2 * v + 1]]) for v in range(self.n)
            )
        return self._children

    @property
    def base(self) -> Tree:
        if self._base is None:
            t, label = self._pending_base
            x = self.root
            u, v = sorted(self.children[x])
            edges = [e for e in t.edges if e != (u, v)] + [(u, x), (v, x)]
            self._base = Tree._trusted(t.labels + (label,), edges)
        return self._base

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def labels(self):
        return self.base.labels

    def is_synthetic(self, v: int) -> bool:
        return self.subdivided and v == self.subdivision_vertex

    def origin_label(self, v: int) -> str | None:
        """Original label of ``v``, or None for the synthetic center vertex."""
        return None if self.is_synthetic(v) else self.base.labels[v]

    @property
    def origin_map(self) -> dict:
        return {v: self.origin_label(v) for v in range(self.n)}

    def subtree_sizes(self) -> tuple:
        if self._sizes is None:
            sizes = [1] * self.n
            for v in reversed(self.bfs_order):
                p = self.parent[v]
                if p >= 0:
                    sizes[p] += sizes[v]
            self._sizes = tuple(sizes)
        return self._sizes

    # -- canonical codes ------------------------------------------------

    def code_ids(self) -> tuple:
        """Dense class id per vertex; equal ids iff isomorphic rooted subtrees.

        Computed bottom-up by interning the sorted tuple of child class ids,
        so the total work is O(n log n) and no code strings are built.  Class
        ids come out in children-before-parents order, and the per-class
        child multiplicities are recorded along the way.
        """
        if self._code_ids is None:
            parent = self.parent
            ids = [0] * self.n
            table: dict = {(): 0}
            mults: list = [()]
            pending: list = [None] * self.n
            for v in reversed(self.bfs_order):
                kc = pending[v]
                if kc is not None:
                    kc.sort()
                    key = tuple(kc)
                    cid = table.get(key)
                    if cid is None:
                        cid = len(table)
                        table[key] = cid
                        counts: dict = {}
                        for cc in kc:
                            counts[cc] = counts.get(cc, 0) + 1
                        mults.append(tuple(counts.items()))
                    ids[v] = cid
                p = parent[v]
                if p >= 0:
                    kcp = pending[p]
                    if kcp is None:
                        pending[p] = [ids[v]]
                    else:
                        kcp.append(ids[v])
            self._code_ids = tuple(ids)
            self._class_structure = (tuple(range(len(mults))), tuple(mults))
        return self._code_ids

    def code_id(self, v: int) -> int:
        return self.code_ids()[v]

    def class_count(self) -> int:
        self.code_ids()
        return len(self._class_structure[0])

    def _class_strings(self) -> dict:
        # one balanced-parenthesis string per distinct class, built on demand;
        # children sorted by their own strings makes the result canonical
        if self._strings is None:
            ids = self.code_ids()
            strings: dict = {}
            for v in reversed(self.bfs_order):
                cid = ids[v]
                if cid not in strings:
                    parts = sorted(strings[ids[c]] for c in self.children[v])
                    strings[cid] = "(" + "".join(parts) + ")"
            self._strings = strings
        return self._strings

    def _class_ranks(self) -> dict:
        if self._ranks is None:
            strings = self._class_strings()
            ordered = sorted(strings, key=strings.__getitem__)
            self._ranks = {cid: i for i, cid in enumerate(ordered)}
        return self._ranks

    def grouped_children(self, v: int) -> dict:
        """Multiplicity of each child class below ``v`` (unordered, fast)."""
        ids = self.code_ids()
        out: dict = {}
        for c in self.children[v]:
            cid = ids[c]
            out[cid] = out.get(cid, 0) + 1
        return out

    def class_structure(self) -> tuple:
        """``(order, mults)``: distinct class ids listed children-first, and
        per class the (child class id, multiplicity) pairs of one
        representative.  Lets count passes touch each class exactly once."""
        self.code_ids()
        return self._class_structure

    def sibling_classes(self, v: int) -> tuple:
        """Partition of the children of ``v`` into isomorphism classes,
        ordered by the codes of their representatives."""
        ids = self.code_ids()
        ranks = self._class_ranks()
        groups: dict = {}
        for c in self.children[v]:
            groups.setdefault(ids[c], []).append(c)
        ordered = sorted(groups.items(), key=lambda kv: ranks[kv[0]])
        return tuple(
            ChildClass(members=tuple(sorted(ms)), representative=min(ms), code_id=cid)
            for cid, ms in ordered
        )

    def __repr__(self):
        tag = ", subdivided" if self.subdivided else ""
        return f"RootedTree(n={self.n}, root={self.root}{tag})"


@dataclass(frozen=True)
class CanonicalCode:
    """Balanced-parenthesis invariant of a rooted subtree.

    Equal codes mean isomorphic rooted subtrees; the string has length
    twice the subtree's vertex count.
    """

    code: str

    def __len__(self):
        return len(self.code)


@dataclass(frozen=True)
class ChildClass:
    members: tuple
    representative: int
    code_id: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ChildClasses:
    """Ordered sibling-class partitions for every vertex of a rooted tree."""

    classes: dict

    def at(self, v: int) -> tuple:
        return self.classes[v]


def canonical_code(rt: RootedTree, v: int) -> CanonicalCode:
    """Canonical code of the subtree rooted at ``v``."""
    if not 0 <= v < rt.n:
        raise InvalidTreeError(f"vertex id {v} out of range")
    return CanonicalCode(rt._class_strings()[rt.code_id(v)])


def child_classes(rt: RootedTree) -> ChildClasses:
    return ChildClasses({v: rt.sibling_classes(v) for v in rt.bfs_order})


def to_rooted(t: Tree) -> RootedTree:
    """Root ``t`` at its center, subdividing the central edge when the
    center is an edge.  The synthetic vertex becomes the root.

    The reduction is a pure function of the tree and is cached on it, so
    repeated analyses share one rooted view.
    """
    if t._rooted is not None:
        return t._rooted
    c = sorted(center(t))
    if len(c) == 1:
        rt = RootedTree(t, c[0])
    else:
        u, v = c
        label = SYNTHETIC_CENTER_LABEL
        while label in t.labels:
            label += "′"
        rt = RootedTree._subdividing(t, u, v, label)
    t._rooted = rt
    return rt


def original_tree(rt: RootedTree) -> Tree:
    """Undo the subdivision of :func:`to_rooted`: drop the synthetic vertex
    and restore the central edge.  For unsubdivided views this is the base."""
    if not rt.subdivided:
        return rt.base
    x = rt.subdivision_vertex
    u, v = sorted(rt.children[x])
    labels = rt.base.labels[: rt.origin_count]
    edges = [e for e in rt.base.edges if x not in e] + [(u, v)]
    return Tree(labels, edges)


def extract_subtree(rt: RootedTree, v: int) -> RootedTree:
    """The subtree of ``rt`` rooted at ``v``, as a standalone rooted tree."""
    verts = []
    stack = [v]
    while stack:
        x = stack.pop()
        verts.append(x)
        stack.extend(rt.children[x])
    remap = {x: i for i, x in enumerate(verts)}
    labels = [rt.base.labels[x] for x in verts]
    edges = [(remap[rt.parent[x]], remap[x]) for x in verts if x != v]
    return RootedTree(Tree(labels, edges), 0)


def vertex_orbits(rt: RootedTree) -> tuple:
    """Orbit id per vertex under the root-preserving automorphism group.

    Two vertices share an orbit exactly when their parents do and their
    subtree codes agree, so a top-down refinement suffices.
    """
    ids = rt.code_ids()
    orbit = [0] * rt.n
    table: dict = {}
    for v in rt.bfs_order:
        if v == rt.root:
            continue
        key = (orbit[rt.parent[v]], ids[v])
        got = table.get(key)
        if got is None:
            got = len(table) + 1
            table[key] = got
        orbit[v] = got
    return tuple(orbit)


# -- parsing and serialisation ------------------------------------------


def parse_tree(text: str, fmt: str = "edge-list"):
    """Parse ``text`` as a tree.

    ``edge-list`` yields a :class:`Tree`; ``parens`` yields a label-free
    :class:`RootedTree` with ``subdivided=False``.
    """
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "parens":
        return _parse_parens(text)
    raise ValueError(f"unknown tree format {fmt!r}")


def _parse_edge_list(text: str) -> Tree:
    labels: dict = {}
    uf: list = []

    def intern(s: str) -> int:
        i = labels.get(s)
        if i is None:
            i = len(labels)
            labels[s] = i
            uf.append(i)
        return i

    def find(x: int) -> int:
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    edges = []
    edge_set = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            intern(parts[0])
            continue
        if len(parts) != 2:
            raise TreeSyntaxError(
                f"line {lineno}: expected two whitespace-separated labels, got {len(parts)}"
            )
        u, v = intern(parts[0]), intern(parts[1])
        if u == v:
            raise InvalidTreeError(f"line {lineno}: self-loop at {parts[0]!r}")
        key = (u, v) if u < v else (v, u)
        if key in edge_set:
            raise InvalidTreeError(f"line {lineno}: duplicate edge {parts[0]!r} {parts[1]!r}")
        edge_set.add(key)
        if find(u) == find(v):
            raise InvalidTreeError(f"line {lineno}: cycle detected")
        uf[find(u)] = find(v)
        edges.append(key)
    if not labels:
        raise InvalidTreeError("empty input")
    return Tree(list(labels), edges)


def _parse_parens(text: str) -> RootedTree:
    stack: list = []
    labels: list = []
    edges: list = []
    root = None
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch == "(":
            vid = len(labels)
            labels.append(str(vid))
            if stack:
                edges.append((stack[-1], vid))
            elif root is not None:
                raise TreeSyntaxError(f"position {pos}: second top-level group")
            else:
                root = vid
            stack.append(vid)
        elif ch == ")":
            if not stack:
                raise TreeSyntaxError(f"position {pos}: unmatched ')'")
            stack.pop()
        else:
            raise TreeSyntaxError(f"position {pos}: unexpected character {ch!r}")
    if stack:
        raise TreeSyntaxError("unbalanced input: missing ')'")
    if root is None:
        raise InvalidTreeError("empty input")
    return RootedTree(Tree(labels, edges), root)


def to_edge_list(t) -> str:
    """Serialise to the edge-list format; inverse of the edge-list parser
    up to internal id relabeling."""
    tt = t.base if isinstance(t, RootedTree) else t
    if tt.n == 1:
        return tt.labels[0] + "\n"
    lines = [f"{tt.labels[u]} {tt.labels[v]}" for u, v in tt.edges]
    return "\n".join(lines) + "\n"


def to_parens(rt: RootedTree) -> str:
    """Canonical parenthesis string of the whole rooted tree."""
    return rt._class_strings()[rt.code_id(rt.root)]
