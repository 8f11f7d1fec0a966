"""Mutable half-edge map used while a wheel operation is in flight.

Darts come in twin pairs ``d`` and ``d ^ 1``.  Each vertex keeps the cyclic
list of darts leaving it, in the same rotation sense as
:class:`~triangulata.embedding.PlaneTriangulation`.  Parallel edges are
allowed here so that the 2-wheel step of a compound extension has somewhere
to live; callers convert back with :meth:`DartMap.to_triangulation`, which
refuses anything that is not simple.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from triangulata.embedding import PlaneTriangulation


class DartMap:
    """Rotation system over darts, supporting local surgery."""

    __slots__ = ("tail", "alive", "rot", "outer")

    def __init__(self) -> None:
        self.tail: list[int] = []
        self.alive: list[bool] = []
        self.rot: dict[int, list[int]] = {}
        self.outer: tuple[int, int, int] | None = None

    # ------------------------------------------------------------------
    # construction / export
    # ------------------------------------------------------------------

    @classmethod
    def from_triangulation(cls, g: PlaneTriangulation) -> DartMap:
        dm = cls()
        index: dict[tuple[int, int], int] = {}
        for u, nbrs in enumerate(g.rotation):
            dm.rot[u] = []
            for v in nbrs:
                if (v, u) in index:
                    d = index[(v, u)] ^ 1
                else:
                    d = len(dm.tail)
                    dm.tail.extend((u, v))
                    dm.alive.extend((True, True))
                    index[(u, v)] = d
                dm.rot[u].append(d)
        dm.outer = g.outer_face
        return dm

    def copy(self) -> DartMap:
        dm = DartMap()
        dm.tail = list(self.tail)
        dm.alive = list(self.alive)
        dm.rot = {v: list(r) for v, r in self.rot.items()}
        dm.outer = self.outer
        return dm

    def to_triangulation(self, keep: dict[int, int] | None = None) -> PlaneTriangulation:
        """Compact vertex ids and freeze.

        Ids at or above the new vertex count move down into the vacated ids,
        smallest stray id into the smallest hole.  With a single deletion this
        is just "the top id takes the hole".  ``keep`` receives the resulting
        old-id to new-id map when given.
        """
        from triangulata.embedding import PlaneTriangulation, StructureError

        ids = sorted(self.rot)
        mapping = {v: v for v in ids}
        present = set(ids)
        n = len(ids)
        holes = sorted(i for i in range(n) if i not in present)
        strays = sorted(v for v in ids if v >= n)
        for h, v in zip(holes, strays):
            mapping[v] = h
        rotation: list[tuple[int, ...]] = [()] * n
        for v in ids:
            nbrs = [mapping[self.head(d)] for d in self.rot[v]]
            if len(set(nbrs)) != len(nbrs) or mapping[v] in nbrs:
                raise StructureError("multigraph cannot be frozen")
            rotation[mapping[v]] = tuple(nbrs)
        outer = None
        if self.outer is not None and all(x in mapping for x in self.outer):
            outer = tuple(mapping[x] for x in self.outer)
        if keep is not None:
            keep.update(mapping)
        return PlaneTriangulation.from_rotation(rotation, outer_face=outer, strict_outer=False)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def head(self, d: int) -> int:
        return self.tail[d ^ 1]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def nxt(self, d: int) -> int:
        r = self.rot[self.tail[d]]
        return r[(r.index(d) + 1) % len(r)]

    def prv(self, d: int) -> int:
        r = self.rot[self.tail[d]]
        return r[r.index(d) - 1]

    def fnext(self, d: int) -> int:
        """Next dart along the face to the left of ``d``."""
        return self.nxt(d ^ 1)

    def face(self, d: int) -> list[int]:
        out = [d]
        e = self.fnext(d)
        while e != d:
            out.append(e)
            e = self.fnext(e)
            if len(out) > len(self.tail):
                raise RuntimeError("face tracing did not close")
        return out

    def darts(self) -> Iterator[int]:
        for v in sorted(self.rot):
            yield from self.rot[v]

    def find(self, u: int, v: int) -> int:
        for d in self.rot[u]:
            if self.head(d) == v:
                return d
        raise KeyError((u, v))

    def vertices(self) -> list[int]:
        return sorted(self.rot)

    def new_vertex_id(self) -> int:
        return max(self.rot) + 1 if self.rot else 0

    # ------------------------------------------------------------------
    # surgery
    # ------------------------------------------------------------------

    def _new_edge(self, u: int, v: int) -> int:
        d = len(self.tail)
        self.tail.extend((u, v))
        self.alive.extend((True, True))
        return d

    def add_edge(self, after_u: int, after_v: int) -> int:
        """Add an edge between the tails of the two darts.

        The new dart at each end is placed right after the given dart.
        Returns the new dart leaving ``tail(after_u)``.
        """
        u, v = self.tail[after_u], self.tail[after_v]
        d = self._new_edge(u, v)
        ru = self.rot[u]
        ru.insert(ru.index(after_u) + 1, d)
        rv = self.rot[v]
        rv.insert(rv.index(after_v) + 1, d ^ 1)
        return d

    def remove_edge(self, d: int) -> None:
        for e in (d, d ^ 1):
            self.rot[self.tail[e]].remove(e)
            self.alive[e] = False

    def remove_vertex(self, v: int) -> list[int]:
        """Delete ``v``; returns the boundary darts of the hole it leaves."""
        spokes = list(self.rot[v])
        # the hole is traced by the darts following each spoke's twin
        hole_start = self.nxt(spokes[0] ^ 1) if len(self.rot[self.head(spokes[0])]) > 1 else None
        for d in spokes:
            self.rot[self.head(d)].remove(d ^ 1)
            self.alive[d] = self.alive[d ^ 1] = False
        del self.rot[v]
        if hole_start is None:
            return []
        return self.face(hole_start)

    def insert_vertex_in_face(self, face: list[int], vid: int | None = None) -> int:
        """Put a new vertex inside the face bounded by ``face`` and join it to every corner."""
        w = self.new_vertex_id() if vid is None else vid
        self.rot[w] = []
        k = len(face)
        corners = [self.tail[d] for d in face]
        # at corner i the spoke goes right after twin(face[i-1])
        anchors = [face[i - 1] ^ 1 for i in range(k)]
        new = []
        for i in range(k):
            d = self._new_edge(w, corners[i])
            r = self.rot[corners[i]]
            r.insert(r.index(anchors[i]) + 1, d ^ 1)
            new.append(d)
        self.rot[w] = new[::-1]
        return w

    def split_vertex(self, keep_first: int, keep_last: int) -> tuple[int, int]:
        """Split ``u = tail(keep_first)`` along two of its darts.

        ``u`` keeps the arc of its rotation from ``keep_first`` to
        ``keep_last`` (inclusive).  A new vertex ``u2`` takes the complementary
        arc plus fresh edges to ``head(keep_last)`` and ``head(keep_first)``,
        and the whole thing opens a quadrilateral face
        ``u -> head(keep_first) -> u2 -> head(keep_last) -> u``.
        Returns ``(u2, dart u -> head(keep_first))`` so the caller can find
        that face.
        """
        u = self.tail[keep_first]
        r = self.rot[u]
        i, j = r.index(keep_first), r.index(keep_last)
        if i <= j:
            arc, rest = r[i : j + 1], r[j + 1 :] + r[:i]
        else:
            arc, rest = r[i:] + r[: j + 1], r[j + 1 : i]
        u2 = self.new_vertex_id()
        self.rot[u] = arc
        for d in rest:
            self.tail[d] = u2
        x = self.head(keep_first)
        y = self.head(keep_last)
        # new darts u2->y and u2->x sit at the ends of the moved arc
        dy = self._new_edge(u2, y)
        dx = self._new_edge(u2, x)
        self.rot[u2] = [dy] + rest + [dx]
        ry = self.rot[y]
        ry.insert(ry.index(keep_last ^ 1), dy ^ 1)
        rx = self.rot[x]
        rx.insert(rx.index(keep_first ^ 1) + 1, dx ^ 1)
        return u2, keep_first

    def merge_vertices(self, corner_a: int, corner_b: int) -> int:
        """Identify the tails of two darts that bound the same face.

        ``corner_a`` and ``corner_b`` are darts of one face leaving ``a`` and
        ``b``.  The rotation of ``b`` is spliced into ``a``'s at the face
        corner; ``b`` disappears.  The two resulting sub-faces are what is
        left of the old face.  Returns the surviving vertex.
        """
        a, b = self.tail[corner_a], self.tail[corner_b]
        ra, rb = self.rot[a], self.rot[b]
        # corner of a inside the face lies between prv-twin and corner_a;
        # same at b.  Splice b's rotation (starting at corner_b) before corner_a.
        k = rb.index(corner_b)
        seq = rb[k:] + rb[:k]
        pos = ra.index(corner_a)
        self.rot[a] = ra[:pos] + seq + ra[pos:]
        for d in seq:
            self.tail[d] = a
        del self.rot[b]
        return a

    def parallel_pairs(self, v: int) -> list[tuple[int, int]]:
        seen: dict[int, int] = {}
        out = []
        for d in self.rot[v]:
            h = self.head(d)
            if h in seen:
                out.append((seen[h], d))
            else:
                seen[h] = d
        return out

    def loops(self, v: int) -> list[int]:
        return [d for d in self.rot[v] if self.head(d) == v]

    def relabel(self, old: int, new: int) -> None:
        if old == new:
            return
        if new in self.rot:
            raise ValueError("target id in use")
        self.rot[new] = self.rot.pop(old)
        for d in self.rot[new]:
            self.tail[d] = new
        if self.outer is not None and old in self.outer:
            self.outer = tuple(new if x == old else x for x in self.outer)  # type: ignore[assignment]
