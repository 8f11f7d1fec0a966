"""Four-colourings of triangulations up to permutation of the colours.

A colouring is stored as a :class:`ColorPartition`, i.e. a labelling
normalised so that classes are numbered by their smallest vertex.  On top
of the enumeration sit the tree/cycle classification, the bicoloured and
two-bicoloured-union structure reports, and the checks on tricoloured
subgraphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from triangulata.embedding import PlaneTriangulation, is_divisible

INF = float("inf")


# ----------------------------------------------------------------------
# partitions
# ----------------------------------------------------------------------


def _normalise(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for c in labels:
        if c not in seen:
            seen[c] = len(seen)
        out.append(seen[c])
    return tuple(out)


@dataclass(frozen=True, order=True)
class ColorPartition:
    """Partition of the vertices into independent colour classes.

    ``labels[v]`` is the class of ``v``; class ``i`` is the ``i``-th class
    met when scanning vertices in id order.
    """

    labels: tuple[int, ...]

    @classmethod
    def from_coloring(cls, coloring: Sequence[int]) -> ColorPartition:
        return cls(_normalise(coloring))

    @property
    def k(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def classes(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.k)]
        for v, c in enumerate(self.labels):
            out[c].add(v)
        return tuple(frozenset(s) for s in out)

    def color(self, v: int) -> int:
        return self.labels[v]

    def is_proper(self, g: PlaneTriangulation) -> bool:
        return len(self.labels) == g.n and all(self.labels[u] != self.labels[v] for u, v in g.edges())


@dataclass(frozen=True)
class PartitionSet:
    """Result of :func:`enumerate_partitions`."""

    partitions: tuple[ColorPartition, ...]
    three_coloring: ColorPartition | None

    @property
    def three_chromatic(self) -> bool:
        return self.three_coloring is not None

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)


def _search_order(g: PlaneTriangulation, start: Sequence[int]) -> list[int]:
    # grow from the fixed face, always taking the vertex with most placed neighbours
    placed = list(start)
    inside = set(start)
    count = [0] * g.n
    for v in start:
        for w in g.neighbors(v):
            count[w] += 1
    while len(placed) < g.n:
        v = max((w for w in range(g.n) if w not in inside), key=lambda w: (count[w], -w))
        placed.append(v)
        inside.add(v)
        for w in g.neighbors(v):
            count[w] += 1
    return placed


def enumerate_partitions(g: PlaneTriangulation) -> PartitionSet:
    """All partitions into exactly four nonempty independent classes.

    The outer face is fixed to classes 0, 1, 2, which picks exactly one
    labelling per partition.  A completion that leaves class 3 empty is a
    3-colouring; it is reported separately.
    """
    face = tuple(g.outer_face)
    order = _search_order(g, face)
    adj = [g.neighbors(v) for v in range(g.n)]
    col = [-1] * g.n
    for i, v in enumerate(face):
        col[v] = i
    four: list[ColorPartition] = []
    three: list[ColorPartition] = []

    def rec(idx: int) -> None:
        if idx == g.n:
            p = ColorPartition.from_coloring(col)
            (four if 3 in col else three).append(p)
            return
        v = order[idx]
        used = {col[w] for w in adj[v]}
        for c in range(4):
            if c not in used:
                col[v] = c
                rec(idx + 1)
        col[v] = -1

    rec(3)
    return PartitionSet(tuple(sorted(four)), three[0] if three else None)


def count_labeled_colorings(g: PlaneTriangulation, k: int = 4) -> int:
    """Number of proper colourings ``V -> {0..k-1}`` using every colour.

    Plain backtracking over vertices in id order with no symmetry breaking,
    so it is independent of :func:`enumerate_partitions`.
    """
    adj = [g.neighbors(v) for v in range(g.n)]
    col = [-1] * g.n
    total = 0
    uses = [0] * k

    def rec(v: int) -> None:
        nonlocal total
        if v == g.n:
            if all(uses):
                total += 1
            return
        missing = sum(1 for u in uses if u == 0)
        if missing > g.n - v:
            return
        for c in range(k):
            if all(col[w] != c for w in adj[v] if w < v):
                col[v] = c
                uses[c] += 1
                rec(v + 1)
                uses[c] -= 1
        col[v] = -1

    rec(0)
    return total


# ----------------------------------------------------------------------
# bicoloured subgraphs and tree/cycle classification
# ----------------------------------------------------------------------


def _as_partition(f: ColorPartition | Sequence[int]) -> ColorPartition:
    return f if isinstance(f, ColorPartition) else ColorPartition.from_coloring(f)


def bicolored_subgraph(g: PlaneTriangulation, f: ColorPartition | Sequence[int], i: int, j: int) -> nx.Graph:
    """Subgraph induced by classes ``i`` and ``j``; node attribute ``color``."""
    f = _as_partition(f)
    keep = [v for v in range(g.n) if f.labels[v] in (i, j)]
    h = nx.Graph()
    for v in keep:
        h.add_node(v, color=f.labels[v])
    for u, v in g.edges():
        if f.labels[u] in (i, j) and f.labels[v] in (i, j):
            h.add_edge(u, v)
    return h


def _first_cycle(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[int] | None:
    """The cycle closed by the first non-forest edge (edges in given order)."""
    parent: dict[int, int] = {v: v for v in nodes}
    forest: dict[int, list[int]] = {v: [] for v in parent}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            # walk the forest from u to v
            prev = {u: u}
            q = deque([u])
            while q:
                x = q.popleft()
                if x == v:
                    break
                for y in forest[x]:
                    if y not in prev:
                        prev[y] = x
                        q.append(y)
            path = [v]
            while path[-1] != u:
                path.append(prev[path[-1]])
            return path[::-1]
        parent[ru] = rv
        forest[u].append(v)
        forest[v].append(u)
    return None


@dataclass(frozen=True)
class ColoringClassification:
    kind: str
    bicolored_cycles: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]


def classify_coloring(g: PlaneTriangulation, f: ColorPartition | Sequence[int]) -> ColoringClassification:
    """``cycle`` if some two-colour subgraph has a cycle, else ``tree``.

    Every colour pair carrying a cycle is listed with one witness cycle.
    """
    f = _as_partition(f)
    found = []
    for i, j in combinations(range(f.k), 2):
        nodes = [v for v in range(g.n) if f.labels[v] in (i, j)]
        edges = [(u, v) for u, v in g.edges() if f.labels[u] in (i, j) and f.labels[v] in (i, j)]
        cyc = _first_cycle(nodes, edges)
        if cyc is not None:
            found.append(((i, j), tuple(cyc)))
    return ColoringClassification("cycle" if found else "tree", tuple(found))


@dataclass(frozen=True)
class GraphClassification:
    kind: str
    partitions: int
    tree_count: int
    cycle_count: int
    three_chromatic: bool
    divisible: bool


def classify_graph(g: PlaneTriangulation, parts: PartitionSet | None = None) -> GraphClassification:
    """Census of one graph.

    ``kind`` is ``divisible`` or ``3-chromatic`` when those apply (in that
    order), otherwise ``pure-tree``, ``pure-cycle`` or ``impure``.  The
    counts are always filled in.
    """
    parts = enumerate_partitions(g) if parts is None else parts
    tree = sum(1 for p in parts if classify_coloring(g, p).kind == "tree")
    cyc = len(parts) - tree
    div = is_divisible(g)
    if div:
        kind = "divisible"
    elif parts.three_chromatic:
        kind = "3-chromatic"
    elif cyc == 0:
        kind = "pure-tree"
    elif tree == 0:
        kind = "pure-cycle"
    else:
        kind = "impure"
    return GraphClassification(kind, len(parts), tree, cyc, parts.three_chromatic, div)


# ----------------------------------------------------------------------
# fences and unions of two bicoloured subgraphs
# ----------------------------------------------------------------------


def _boundary_walks(g: PlaneTriangulation, h: nx.Graph) -> list[list[tuple[int, int]]]:
    """Face boundary walks of ``h`` under the rotation inherited from ``g``."""
    rot = {v: [w for w in g.neighbors(v) if h.has_edge(v, w)] for v in h.nodes}
    seen: set[tuple[int, int]] = set()
    walks = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append((a, b))
                r = rot[b]
                a, b = b, r[(r.index(a) + 1) % len(r)]
            walks.append(walk)
    return walks


@dataclass(frozen=True)
class FenceReport:
    fence: bool
    t: float
    suspending_vertices: frozenset[int]
    weld_vertices: frozenset[int]
    walk_lengths: tuple[int, ...] = ()
    cycle_lengths: tuple[int, ...] = ()


def fence_analyze(g: PlaneTriangulation, h: nx.Graph) -> FenceReport:
    """Fence structure of a subgraph ``h`` of ``g`` drawn with ``g``'s embedding.

    ``h`` is a fence when it has a cycle and every face boundary has even
    length.  Suspending vertices have degree 0 or 1 in ``h``; each is tied
    to the first cycle vertex (weld vertex) reached from it, and ``t`` is
    the largest such distance, infinite when a suspending vertex's
    component has no cycle.
    """
    walks = _boundary_walks(g, h)
    lengths = tuple(sorted(len(w) for w in walks))
    has_cycle = any(True for _ in nx.cycle_basis(h))
    fence = has_cycle and all(x % 2 == 0 for x in lengths)
    core = nx.k_core(h, 2) if h.number_of_edges() else nx.Graph()
    core_nodes = set(core.nodes)
    susp = frozenset(v for v in h.nodes if h.degree(v) <= 1)
    welds = set()
    t: float = 0
    for v in sorted(susp):
        dist = nx.single_source_shortest_path_length(h, v)
        hits = [(d, u) for u, d in dist.items() if u in core_nodes]
        if not hits:
            t = INF
            continue
        d, u = min(hits)
        welds.add(u)
        t = max(t, d)
    cycles = tuple(sorted(len(c) for c in nx.minimum_cycle_basis(h))) if has_cycle else ()
    return FenceReport(fence, t if has_cycle else INF, susp, frozenset(welds), lengths, cycles)


@dataclass(frozen=True)
class UnionReport:
    graph: nx.Graph
    odd_cycle_free: bool
    fence: FenceReport
    factor_orders: tuple[int, int]
    suspending_touch_common_only: bool
    tree_coloring: bool


def union_two_bicolored(
    g: PlaneTriangulation,
    f: ColorPartition | Sequence[int],
    common: int,
    others: tuple[int, int],
) -> UnionReport:
    """Union of the two bicoloured subgraphs sharing the class ``common``."""
    f = _as_partition(f)
    a, b = others
    h1 = bicolored_subgraph(g, f, common, a)
    h2 = bicolored_subgraph(g, f, common, b)
    h = nx.compose(h1, h2)
    report = fence_analyze(g, h)
    touch = all(
        all(f.labels[w] == common for w in h.neighbors(v)) for v in report.suspending_vertices
    )
    tree = classify_coloring(g, f).kind == "tree"
    return UnionReport(h, nx.is_bipartite(h), report, (h1.number_of_nodes(), h2.number_of_nodes()), touch, tree)


def common_on_cycle_properties(g: PlaneTriangulation, f: ColorPartition | Sequence[int], common: int, others: tuple[int, int]) -> dict | None:
    """Cycle and leaf counts of a union whose common-class vertices all lie on one cycle.

    Returns ``None`` when no cycle of the union carries every vertex of
    the common class.  Otherwise reports the class sizes ``a, b, c``, the
    number of cycles of each length, the number of degree-1 vertices and,
    for every edge outside pendant paths, how many 4-cycles contain it.
    """
    f = _as_partition(f)
    rep = union_two_bicolored(g, f, common, others)
    h = rep.graph
    ones = {v for v in h.nodes if f.labels[v] == common}
    cycles = [c for c in nx.simple_cycles(h)]
    if not any(ones <= set(c) for c in cycles):
        return None
    a = len(ones)
    b = sum(1 for v in h.nodes if f.labels[v] == others[0])
    c = sum(1 for v in h.nodes if f.labels[v] == others[1])
    by_len: dict[int, int] = {}
    for cyc in cycles:
        by_len[len(cyc)] = by_len.get(len(cyc), 0) + 1
    core = nx.k_core(h, 2)
    in4 = {}
    for u, v in core.edges():
        in4[(min(u, v), max(u, v))] = sum(
            1 for cyc in cycles if len(cyc) == 4 and u in cyc and v in cyc and _consecutive(cyc, u, v)
        )
    leaves = sum(1 for v in h.nodes if h.degree(v) == 1)
    return {"a": a, "b": b, "c": c, "cycles_by_length": by_len, "leaves": leaves, "four_cycles_per_edge": in4}


def _consecutive(cyc: Sequence[int], u: int, v: int) -> bool:
    i = cyc.index(u)
    k = len(cyc)
    return cyc[(i + 1) % k] == v or cyc[i - 1] == v


# ----------------------------------------------------------------------
# tricoloured subgraphs
# ----------------------------------------------------------------------


@dataclass
class TricolorReport:
    removed: int
    restricted_kind: str
    kind: str
    equivalence_holds: bool
    faces_without_removed: int
    predicted_triangles: int
    triangles_without_removed: int
    odd_vertex_paths_hold: bool
    path_checks: list[dict] = field(default_factory=list)


def _restricted_kind(g: PlaneTriangulation, f: ColorPartition, keep: Sequence[int]) -> str:
    disconnected = False
    for i, j in combinations(keep, 2):
        h = bicolored_subgraph(g, f, i, j)
        if h.number_of_nodes() == 0:
            continue
        if nx.cycle_basis(h):
            return "cycle"
        if not nx.is_connected(h):
            disconnected = True
    return "disconnected" if disconnected else "tree"


def tricolored_checks(g: PlaneTriangulation, f: ColorPartition | Sequence[int], removed: int = 3, *, max_path_len: int = 2) -> TricolorReport:
    """Checks on the subgraph left after deleting class ``removed``.

    * tree/cycle status of ``f`` against the three remaining bicoloured
      subgraphs (cycle-colourings may instead show up as a disconnected
      bicoloured subgraph);
    * faces avoiding the removed class against ``2n - 4 - (degree sum)``;
    * in the union of two bicoloured subgraphs sharing a class, every path
      between the other two classes has an odd number of vertices;
    * for each path ``P`` (length up to ``max_path_len``) in the third
      bicoloured subgraph, the number ``q`` of paths joining its ends in
      the union and the parity of the cycles it closes.
    """
    f = _as_partition(f)
    if f.k != 4:
        raise ValueError("needs a partition into four classes")
    keep = [c for c in range(4) if c != removed]
    kind = classify_coloring(g, f).kind
    rk = _restricted_kind(g, f, keep)
    equiv = (kind == "tree") == (rk == "tree")
    rset = {v for v in range(g.n) if f.labels[v] == removed}
    free_faces = sum(1 for face in g._faces if not (set(face) & rset))
    predicted = 2 * g.n - 4 - sum(g.degree(v) for v in rset)
    rest = [v for v in range(g.n) if v not in rset]
    sub = g.to_networkx().subgraph(rest)
    tri = sum(nx.triangles(sub).values()) // 3
    common, x, y = keep
    union = union_two_bicolored(g, f, common, (x, y)).graph
    odd_ok = True
    if nx.is_connected(union):
        side = nx.bipartite.color(union)
        xs = [v for v in union.nodes if f.labels[v] == x]
        ys = [v for v in union.nodes if f.labels[v] == y]
        odd_ok = len({side[v] for v in xs + ys}) <= 1
    third = bicolored_subgraph(g, f, x, y)
    checks = []
    for path in _short_paths(third, max_path_len):
        u, w = path[0], path[-1]
        q = sum(1 for _ in nx.all_simple_paths(union, u, w))
        inner = set(path[1:-1])
        avoid = union.subgraph([v for v in union.nodes if v not in inner])
        closing = [len(p) - 1 + len(path) - 1 for p in nx.all_simple_paths(avoid, u, w)]
        p_len = len(path) - 1
        checks.append(
            {
                "path": tuple(path),
                "length": p_len,
                "q": q,
                "cycles": len(closing),
                "parity_ok": all(c % 2 == p_len % 2 for c in closing),
            }
        )
    return TricolorReport(removed, rk, kind, equiv, free_faces, predicted, tri, odd_ok, checks)


def _short_paths(h: nx.Graph, max_len: int) -> list[list[int]]:
    out = []
    for u in sorted(h.nodes):
        stack = [[u]]
        while stack:
            p = stack.pop()
            if len(p) > 1 and p[0] < p[-1]:
                out.append(p)
            if len(p) - 1 < max_len:
                for w in sorted(h.neighbors(p[-1]), reverse=True):
                    if w not in p:
                        stack.append(p + [w])
    return sorted(out)


# ----------------------------------------------------------------------
# export
# ----------------------------------------------------------------------

_SHAPES = ("circle", "box", "triangle", "diamond")


def to_dot(g: PlaneTriangulation, f: ColorPartition | Sequence[int] | None = None, name: str = "G") -> str:
    """DOT text for ``g``; with a colouring, each class gets its own node shape."""
    lines = [f"graph {name} {{"]
    part = None if f is None else _as_partition(f)
    for v in range(g.n):
        if part is None:
            lines.append(f"  {v};")
        else:
            c = part.labels[v]
            lines.append(f'  {v} [shape={_SHAPES[c % 4]}, label="{v}:{c + 1}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def census_record(g: PlaneTriangulation) -> dict:
    """One census line: code, order, degree sequence, counts and class."""
    from triangulata.embedding import canonical_code

    c = classify_graph(g)
    return {
        "code": canonical_code(g).hex(),
        "n": g.n,
        "degree_sequence": g.degree_sequence(),
        "partitions": c.partitions,
        "tree_count": c.tree_count,
        "cycle_count": c.cycle_count,
        "class": c.kind,
    }
