"""Plane triangulations as rotation systems.

A :class:`PlaneTriangulation` stores, for each vertex ``0..n-1``, the cyclic
order of its neighbours.  Faces are traced with the rule

    the face dart after ``(u, v)`` is ``(v, w)``, where ``w`` follows ``u``
    in the rotation of ``v``.

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, NamedTuple, Sequence

import networkx as nx


class StructureError(ValueError):
    """Raised when a rotation system is not a simple plane triangulation."""


class DomainError(ValueError):
    """Raised when an operation is applied to an object it is not defined on."""


class FaceTriple(NamedTuple):
    a: int
    b: int
    c: int


class Diagnosis(NamedTuple):
    ok: bool
    reason: str


def _cyc_min(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so that its smallest entry comes first."""
    if not seq:
        return ()
    k = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[k:]) + tuple(seq[:k])


def _trace_faces(rotation: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    succ = [{u: r[(i + 1) % len(r)] for i, u in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in seen:
                continue
            cyc = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                cyc.append(a)
                a, b = b, succ[b][a]
            faces.append(_cyc_min(cyc))
    return faces


def validate_maximal_planar(rotation: PlaneTriangulation | Sequence[Sequence[int]]) -> Diagnosis:
    """Check that a rotation system describes a simple plane triangulation.

    Returns the first violated condition, or ``Diagnosis(True, "valid")``.
    """
    if isinstance(rotation, PlaneTriangulation):
        rotation = rotation.rotation
    n = len(rotation)
    if n < 3:
        return Diagnosis(False, "fewer than 3 vertices")
    for u, r in enumerate(rotation):
        if len(set(r)) != len(r):
            return Diagnosis(False, f"repeated neighbour at vertex {u}")
        for v in r:
            if v == u:
                return Diagnosis(False, f"loop at vertex {u}")
            if not 0 <= v < n:
                return Diagnosis(False, f"neighbour {v} of {u} out of range")
            if u not in rotation[v]:
                return Diagnosis(False, f"edge {u}-{v} not symmetric")
    m = sum(len(r) for r in rotation) // 2
    if m != 3 * n - 6:
        return Diagnosis(False, f"edge count {m} != 3n-6 = {3 * n - 6}")
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in rotation[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != n:
        return Diagnosis(False, "not connected")
    faces = _trace_faces(rotation)
    for f in faces:
        if len(f) != 3:
            return Diagnosis(False, f"face of degree {len(f)}: {f}")
    if len(faces) != 2 * n - 4:
        return Diagnosis(False, f"face count {len(faces)} != 2n-4 (not planar)")
    return Diagnosis(True, "valid")


@dataclass(frozen=True)
class PlaneTriangulation:
    """A maximal planar graph with a fixed embedding and outer face.

    Attributes:
        rotation: ``rotation[v]`` is the cyclic order of the neighbours of
            ``v``; each tuple is stored starting from its smallest entry.
        outer_face: a face ``(a, b, c)`` in boundary order, smallest first.
    """

    rotation: tuple[tuple[int, ...], ...]
    outer_face: FaceTriple
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _faces: tuple[FaceTriple, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_adj", tuple(frozenset(r) for r in self.rotation))
        faces = sorted(FaceTriple(*f) for f in _trace_faces(self.rotation))
        object.__setattr__(self, "_faces", tuple(faces))

    @classmethod
    def from_rotation(
        cls,
        rotation: Sequence[Sequence[int]],
        outer_face: Sequence[int] | None = None,
        *,
        strict_outer: bool = True,
    ) -> PlaneTriangulation:
        """Build and validate.

        When ``outer_face`` is missing (or, with ``strict_outer=False``, is no
        longer a face), the lexicographically smallest face is used.
        """
        diag = validate_maximal_planar(rotation)
        if not diag.ok:
            raise StructureError(diag.reason)
        rot = tuple(_cyc_min(list(r)) for r in rotation)
        faces = {FaceTriple(*f) for f in _trace_faces(rot)}
        if outer_face is not None:
            of = FaceTriple(*_cyc_min(list(outer_face)))
            if of not in faces:
                if strict_outer:
                    raise DomainError(f"{tuple(outer_face)} is not a face")
                of = min(faces)
        else:
            of = min(faces)
        return cls(rot, of)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> PlaneTriangulation:
        """Embed an abstract maximal planar graph.

        The embedding of a triangulation is unique up to reflection; of the
        two mirror images the one with the smaller rotation tuple is kept.
        """
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        ok, emb = nx.check_planarity(g)
        if not ok:
            raise StructureError("graph is not planar")
        rot = [list(emb.neighbors_cw_order(v)) if g.degree(v) else [] for v in range(n)]
        diag = validate_maximal_planar(rot)
        if not diag.ok:
            raise StructureError(diag.reason)
        a = tuple(_cyc_min(r) for r in rot)
        b = tuple(_cyc_min(r[::-1]) for r in rot)
        return cls.from_rotation(min(a, b))

    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, r in enumerate(self.rotation) for v in r if u < v]

    def degree_sequence(self) -> str:
        """Degrees in ascending order, concatenated (``"4444455"``)."""
        return "".join(str(d) for d in sorted(len(r) for r in self.rotation))

    def min_degree(self) -> int:
        return min(len(r) for r in self.rotation)

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` in the rotation of ``v``."""
        r = self.rotation[v]
        return r[(r.index(u) + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rotation[v]
        return r[r.index(u) - 1]

    def is_face(self, tri: Sequence[int]) -> bool:
        return FaceTriple(*_cyc_min(list(tri))) in set(self._faces)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def relabel(self, perm: Sequence[int]) -> PlaneTriangulation:
        """Rename vertex ``v`` to ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.n
        for v, r in enumerate(self.rotation):
            rot[perm[v]] = tuple(perm[u] for u in r)
        return PlaneTriangulation.from_rotation(rot, [perm[x] for x in self.outer_face])

    def mirror(self) -> PlaneTriangulation:
        """Reflect the embedding (reverse every rotation)."""
        a, b, c = self.outer_face
        return PlaneTriangulation.from_rotation([r[::-1] for r in self.rotation], (a, c, b))


# ----------------------------------------------------------------------
# faces and local structure
# ----------------------------------------------------------------------


def faces(g: PlaneTriangulation) -> list[FaceTriple]:
    """All ``2n-4`` faces; the outer face comes first, the rest sorted."""
    rest = [f for f in g._faces if f != g.outer_face]
    return [g.outer_face] + rest


def reroot_outer_face(g: PlaneTriangulation, f: Sequence[int]) -> PlaneTriangulation:
    """Same embedding with ``f`` as the designated outer face."""
    tri = FaceTriple(*_cyc_min(list(f)))
    if not g.is_face(tri):
        raise DomainError(f"{tuple(f)} is not a face")
    return PlaneTriangulation(g.rotation, tri)


class NeighborCycle(NamedTuple):
    kind: Literal["basic", "chord", "triangle"]
    cycle: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]


def neighbor_cycle(g: PlaneTriangulation, v: int) -> NeighborCycle:
    """The link of ``v`` and what it induces.

    ``basic`` means the neighbours induce exactly the cycle.  Any chord makes
    it a chord-cycle; a chord joining two vertices two apart on the cycle
    closes a triangle with the vertex between them, reported as
    ``triangle``.  Degree 3 is always ``triangle``.
    """
    cyc = g.rotation[v]
    k = len(cyc)
    chords = []
    for i, j in combinations(range(k), 2):
        if j - i in (1, k - 1):
            continue
        a, b = cyc[i], cyc[j]
        if g.adjacent(a, b):
            chords.append((min(a, b), max(a, b), min(j - i, k - j + i)))
    if k == 3 or any(c[2] == 2 for c in chords):
        kind: Literal["basic", "chord", "triangle"] = "triangle"
    elif chords:
        kind = "chord"
    else:
        kind = "basic"
    return NeighborCycle(kind, cyc, tuple(sorted((a, b) for a, b, _ in chords)))


def separating_triangles(g: PlaneTriangulation) -> list[tuple[int, int, int]]:
    """All 3-cycles that do not bound a face, as sorted triples."""
    faceset = {tuple(sorted(f)) for f in g._faces}
    out = []
    for u, v in g.edges():
        for w in g._adj[u] & g._adj[v]:
            if w > v:
                t = (u, v, w)
                if t not in faceset:
                    out.append(t)
    return sorted(out)


def is_divisible(g: PlaneTriangulation) -> bool:
    return bool(separating_triangles(g))


# ----------------------------------------------------------------------
# canonical form
# ----------------------------------------------------------------------


def _vertex_invariant(g: PlaneTriangulation) -> list[tuple]:
    deg = [len(r) for r in g.rotation]
    return [(deg[v], tuple(sorted(deg[u] for u in r))) for v, r in enumerate(g.rotation)]


def _bfs_code(
    rot: Sequence[Sequence[int]],
    pos: Sequence[dict[int, int]],
    v0: int,
    w0: int,
    step: int,
    best: list[int] | None,
) -> tuple[list[int], list[int]] | None:
    """Breadth-first embedding code from dart ``v0 -> w0``.

    Walks each rotation in direction ``step`` starting at the edge back to
    the vertex it was discovered from.  Returns ``(code, order)``, or
    ``None`` as soon as the partial code exceeds ``best``.
    """
    n = len(rot)
    label = [0] * n
    ref = [0] * n
    label[v0] = 1
    ref[v0] = w0
    order = [v0]
    nxt_label = 2
    code: list[int] = []
    tight = best is not None
    i = 0
    while i < len(order):
        x = order[i]
        r = rot[x]
        d = len(r)
        k = pos[x][ref[x]]
        for j in range(d):
            y = r[(k + step * j) % d]
            ly = label[y]
            if ly == 0:
                ly = nxt_label
                label[y] = ly
                ref[y] = x
                nxt_label += 1
                order.append(y)
            if tight:
                b = best[len(code)]  # type: ignore[index]
                if ly > b:
                    return None
                if ly < b:
                    tight = False
            code.append(ly)
        if tight:
            if best[len(code)] != 0:  # type: ignore[index]
                # separator (0) is smaller than any label
                tight = False
        code.append(0)
        i += 1
    return code, order


def _canonical_search(g: PlaneTriangulation) -> tuple[list[int], list[list[int]]]:
    """Return the minimal code and the vertex orders of every optimal start."""
    if g.n < 4:
        raise DomainError("canonical code needs n >= 4")
    rot = g.rotation
    pos = [{u: i for i, u in enumerate(r)} for r in rot]
    inv = _vertex_invariant(g)
    top = max(inv[v] for v in range(g.n))
    cands = [(v, w) for v in range(g.n) if inv[v] == top for w in rot[v]]
    top2 = max(inv[w] for _, w in cands)
    cands = [(v, w) for v, w in cands if inv[w] == top2]
    best: list[int] | None = None
    orders: list[list[int]] = []
    for v, w in cands:
        for step in (1, -1):
            res = _bfs_code(rot, pos, v, w, step, best)
            if res is None:
                continue
            code, order = res
            if best is None or code < best:
                best = code
                orders = [order]
            elif code == best:
                orders.append(order)
    assert best is not None
    return best, orders


def canonical_code(g: PlaneTriangulation) -> bytes:
    """Isomorphism-invariant byte string of the abstract graph."""
    code, _ = _canonical_search(g)
    return bytes([g.n]) + bytes(code)


def canonical_form(g: PlaneTriangulation) -> PlaneTriangulation:
    """Relabel ``g`` so that vertex ids follow the canonical BFS order."""
    _, orders = _canonical_search(g)
    perm = [0] * g.n
    for i, v in enumerate(orders[0]):
        perm[v] = i
    h = g.relabel(perm)
    return PlaneTriangulation.from_rotation(h.rotation)


def automorphisms(g: PlaneTriangulation) -> list[tuple[int, ...]]:
    """All automorphisms of the abstract graph, as permutation tuples.

    Includes orientation-reversing ones.  The identity comes first.
    """
    _, orders = _canonical_search(g)
    base = orders[0]
    auts = set()
    for order in orders:
        sigma = [0] * g.n
        for a, b in zip(base, order):
            sigma[a] = b
        auts.add(tuple(sigma))
    ident = tuple(range(g.n))
    return [ident] + sorted(a for a in auts if a != ident)


SubgraphKind = Literal["edge", "path2", "triangle", "funnel"]


def subgraph_occurrences(
    g: PlaneTriangulation, kind: SubgraphKind, *, induced: bool = False
) -> list[tuple[int, ...]]:
    """List every occurrence of a small pattern, in a normal form.

    * edge: ``(u, v)`` with ``u < v``
    * path2: ``(x, u, y)`` with ``x < y``
    * triangle: facial triangle as a sorted triple
    * funnel: ``(top, middle, b1, b2)`` with ``b1 < b2``, where
      ``middle, b1, b2`` bound a face and the top is another neighbour of
      the middle

    With ``induced=True`` path ends must be nonadjacent and a funnel top
    must be adjacent to neither bottom.
    """
    adj = g._adj
    out: list[tuple[int, ...]] = []
    if kind == "edge":
        out = list(g.edges())
    elif kind == "path2":
        for u in range(g.n):
            for x, y in combinations(sorted(g.rotation[u]), 2):
                if induced and y in adj[x]:
                    continue
                out.append((x, u, y))
    elif kind == "triangle":
        out = sorted({tuple(sorted(f)) for f in g._faces})
    elif kind == "funnel":
        for u in range(g.n):
            r = g.rotation[u]
            d = len(r)
            for i in range(d):
                b1, b2 = sorted((r[i], r[(i + 1) % d]))
                for t in r:
                    if t in (b1, b2):
                        continue
                    if induced and (t in adj[b1] or t in adj[b2]):
                        continue
                    out.append((t, u, b1, b2))
    else:
        raise DomainError(f"unknown subgraph kind {kind!r}")
    return sorted(out)


def _apply(kind: str, sigma: Sequence[int], occ: tuple[int, ...]) -> tuple[int, ...]:
    s = [sigma[v] for v in occ]
    if kind == "edge":
        return tuple(sorted(s))
    if kind == "path2":
        x, u, y = s
        return (min(x, y), u, max(x, y))
    if kind == "triangle":
        return tuple(sorted(s))
    t, u, b1, b2 = s
    return (t, u, min(b1, b2), max(b1, b2))


def automorphism_orbits(
    g: PlaneTriangulation,
    subgraph_kind: SubgraphKind,
    *,
    induced: bool = True,
    auts: list[tuple[int, ...]] | None = None,
) -> list[tuple[tuple[int, ...], int]]:
    """One representative per Aut(g)-orbit, with the orbit size.

    Representatives are the smallest member of their orbit; the list is
    sorted by representative.  By default paths and funnels are the induced
    ones (see :func:`subgraph_occurrences`).
    """
    occs = subgraph_occurrences(g, subgraph_kind, induced=induced)
    if auts is None:
        auts = automorphisms(g)
    seen: set[tuple[int, ...]] = set()
    out = []
    for occ in occs:
        if occ in seen:
            continue
        orbit = {_apply(subgraph_kind, s, occ) for s in auts}
        seen |= orbit
        out.append((min(orbit), len(orbit)))
    return sorted(out)


# ----------------------------------------------------------------------
# graph6
# ----------------------------------------------------------------------


def to_graph6(g: PlaneTriangulation) -> str:
    """Standard graph6 text (no header, no newline) of the abstract graph."""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def from_graph6(text: str) -> PlaneTriangulation:
    """Parse one graph6 record and reconstruct its embedding."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    try:
        h = nx.from_graph6_bytes(s.encode("ascii"))
    except (ValueError, nx.NetworkXError) as exc:
        raise StructureError(f"bad graph6 record: {exc}") from exc
    return PlaneTriangulation.from_edges(h.number_of_nodes(), h.edges())


# ----------------------------------------------------------------------
# a few named graphs
# ----------------------------------------------------------------------


def k3() -> PlaneTriangulation:
    return PlaneTriangulation.from_rotation([(1, 2), (2, 0), (0, 1)])


def k4() -> PlaneTriangulation:
    return PlaneTriangulation.from_edges(4, combinations(range(4), 2))


def octahedron() -> PlaneTriangulation:
    edges = [(u, v) for u, v in combinations(range(6), 2) if v - u != 3]
    return PlaneTriangulation.from_edges(6, edges)


def icosahedron() -> PlaneTriangulation:
    return PlaneTriangulation.from_edges(12, nx.icosahedral_graph().edges())


def double_wheel(k: int) -> PlaneTriangulation:
    """Cycle of length ``k`` plus two centres joined to all of it."""
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k, i) for i in range(k)] + [(k + 1, i) for i in range(k)]
    return PlaneTriangulation.from_edges(k + 2, edges)
