"""Extending and contracting wheel operations.

Extending a ``k``-wheel adds a new centre of degree ``k``:

* ``extend3`` fills a face,
* ``extend2`` doubles an edge and puts a degree-2 vertex between the copies
  (only meaningful as the first step of a compound extension),
* ``extend4`` splits the middle ``u`` of a 2-path ``x-u-y`` into ``u, u'``
  and puts the centre in the resulting quadrilateral ``x u y u'``,
* ``extend5`` splits the middle of a funnel and fills the resulting
  pentagon ``u t u' b2 b1``.

Contracting inverts these: delete the centre, then identify a pair of its
neighbours.  New vertices always take the next free ids (``n``, then
``n + 1``); deletions compact ids as described in
:meth:`triangulata._darts.DartMap.to_triangulation`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from triangulata._darts import DartMap
from triangulata.coloring import ColorPartition
from triangulata.embedding import (
    DomainError,
    PlaneTriangulation,
    StructureError,
    automorphism_orbits,
    automorphisms,
    canonical_code,
)

OpKind = Literal[
    "extend2", "contract2", "extend3", "contract3",
    "extend4", "contract4", "extend5", "contract5",
]


@dataclass(frozen=True)
class WheelOpRecord:
    """One wheel operation, enough to replay it.

    ``obj`` holds vertex ids in the source graph: an edge ``(a, b)``, a face
    ``(a, b, c)``, a path ``(x, u, y)``, a funnel ``(top, middle, b1, b2)`` or
    a centre ``(v,)``.  ``identified_pairs`` lists merges made by a
    contraction.  ``result_code`` is the hex canonical code of the result
    (empty when the result is not a simple triangulation).  ``copies``
    picks among parallel edges while a compound step is in flight: entry
    ``i`` is the index, in rotation order, of the dart used for the
    ``i``-th edge the operation needs.
    """

    kind: str
    obj: tuple[int, ...]
    identified_pairs: tuple[tuple[int, int], ...] = ()
    result_code: str = ""
    compound: bool = False
    copies: tuple[int, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "object": list(self.obj),
                "identified_pairs": [list(p) for p in self.identified_pairs],
                "result_code": self.result_code,
                "compound": self.compound,
                "copies": list(self.copies),
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> WheelOpRecord:
        d = json.loads(line)
        return cls(
            d["kind"],
            tuple(d["object"]),
            tuple(tuple(p) for p in d["identified_pairs"]),
            d.get("result_code", ""),
            d.get("compound", False),
            tuple(d.get("copies", ())),
        )


# ----------------------------------------------------------------------
# dart-level primitives (multigraph friendly)
# ----------------------------------------------------------------------


def _face_of(dm: DartMap, tri: Sequence[int]) -> list[int]:
    a, b, c = tri
    for d in dm.rot[a]:
        if dm.head(d) != b:
            continue
        f = dm.face(d)
        if [dm.tail[e] for e in f] == [a, b, c]:
            return f
    raise DomainError(f"{tuple(tri)} is not a face")


def dm_extend2(dm: DartMap, d: int) -> int:
    """Double the edge of dart ``d`` inside its left face and fill the digon."""
    p = dm.prv(d)  # a -> z, the dart before d at a
    # the new copy sits between p and d at a, and right after twin(d) at b
    new = dm.add_edge(p, d ^ 1)
    return dm.insert_vertex_in_face([d, new ^ 1])


def dm_extend3(dm: DartMap, face: list[int]) -> int:
    if len(face) != 3:
        raise DomainError("extend3 needs a triangular face")
    return dm.insert_vertex_in_face(face)


def dm_extend4(dm: DartMap, dx: int, dy: int) -> tuple[int, int]:
    """``dx = u->x``, ``dy = u->y``; returns ``(u', centre)``."""
    if dm.tail[dx] != dm.tail[dy] or dx == dy:
        raise DomainError("extend4 needs two distinct darts at the middle vertex")
    u2, start = dm.split_vertex(dx, dy)
    v = dm.insert_vertex_in_face(dm.face(start))
    return u2, v


def dm_extend5(dm: DartMap, dt: int, db1: int) -> tuple[int, int]:
    """Funnel given by ``dt = u->top`` and ``db1 = u->b1`` where the next dart
    at ``u`` after ``db1`` goes to the other bottom.  ``b1`` stays with
    ``u``; the other bottom moves to ``u'``.  Returns ``(u', centre)``."""
    if dm.tail[dt] != dm.tail[db1] or dt == db1 or dm.nxt(db1) == dt:
        raise DomainError("not a funnel")
    u2, start = dm.split_vertex(dt, db1)
    extra = dm.rot[u2][0]  # u'->b1, created by the split
    dm.remove_edge(extra)
    v = dm.insert_vertex_in_face(dm.face(start))
    return u2, v


def _collapse_digons(dm: DartMap) -> None:
    changed = True
    while changed:
        changed = False
        for d in list(dm.darts()):
            if not dm.alive[d]:
                continue
            f = dm.face(d)
            if len(f) == 2:
                dm.remove_edge(max(f[0], f[1] ^ 1))
                changed = True
                break
            if len(f) == 1:
                raise StructureError("loop face")


def dm_delete_and_merge(dm: DartMap, v: int, pairs: Sequence[tuple[int, int]] = ()) -> list[tuple[int, int]]:
    """Delete ``v`` and identify the given pairs of its neighbours.

    Each pair is merged across the face the deletion opened (or what is
    left of it); the lower id survives.  Digon faces are collapsed
    afterwards.  Returns the merges performed as ``(kept, removed)``.
    """
    dm.remove_vertex(v)
    done = []
    for a, b in pairs:
        a, b = min(a, b), max(a, b)
        face = None
        for d in list(dm.rot[a]):
            f = dm.face(d)
            tails = [dm.tail[e] for e in f]
            if b in tails and len(f) >= 4:
                face = f
                break
        if face is None:
            raise DomainError(f"{a} and {b} do not share a non-triangular face")
        ca = next(e for e in face if dm.tail[e] == a)
        cb = next(e for e in face if dm.tail[e] == b)
        dm.merge_vertices(ca, cb)
        done.append((a, b))
    _collapse_digons(dm)
    return done


def dm_is_simple(dm: DartMap) -> bool:
    for v, r in dm.rot.items():
        heads = [dm.head(d) for d in r]
        if v in heads or len(set(heads)) != len(heads):
            return False
    return True


def dm_min_degree(dm: DartMap) -> int:
    return min(len(r) for r in dm.rot.values())


# ----------------------------------------------------------------------
# simple-graph operations
# ----------------------------------------------------------------------


def _freeze(dm: DartMap) -> PlaneTriangulation:
    if not dm_is_simple(dm):
        raise DomainError("operation would create a loop or parallel edge")
    return dm.to_triangulation()


def extend3(g: PlaneTriangulation, f: Sequence[int]) -> PlaneTriangulation:
    """Add a degree-3 vertex (id ``n``) inside face ``f``."""
    dm = DartMap.from_triangulation(g)
    dm_extend3(dm, _face_of(dm, _oriented_face(g, f)))
    return _freeze(dm)


def _oriented_face(g: PlaneTriangulation, f: Sequence[int]) -> tuple[int, int, int]:
    a, b, c = f
    if g.adjacent(a, b) and g.succ(b, a) == c and g.succ(c, b) == a:
        return (a, b, c)
    if g.adjacent(a, c) and g.succ(c, a) == b and g.succ(b, c) == a:
        return (a, c, b)
    raise DomainError(f"{tuple(f)} is not a face")


def contract3(g: PlaneTriangulation, v: int) -> PlaneTriangulation:
    """Delete a degree-3 vertex."""
    if g.degree(v) != 3:
        raise DomainError(f"vertex {v} has degree {g.degree(v)}, not 3")
    if g.n <= 4:
        raise DomainError("contracting would leave fewer than 3 vertices")
    dm = DartMap.from_triangulation(g)
    dm.remove_vertex(v)
    return _freeze(dm)


def extend2(g: PlaneTriangulation, e: tuple[int, int]) -> PlaneTriangulation:
    """Standalone 2-wheel extension.

    The result always has a doubled edge, so this only ever raises; the
    operation is available inside :func:`compound_extend`.
    """
    a, b = e
    if not g.adjacent(a, b):
        raise DomainError(f"{a}-{b} is not an edge")
    raise DomainError("extend2 on its own leaves a parallel edge; use compound_extend")


def contract2(dm: DartMap, v: int) -> None:
    """Remove a degree-2 vertex from a dart map and merge the doubled edge."""
    if dm.degree(v) != 2:
        raise DomainError(f"vertex {v} has degree {dm.degree(v)}, not 2")
    dm.remove_vertex(v)
    _collapse_digons(dm)


def _path_darts(dm: DartMap, path: Sequence[int]) -> tuple[int, int]:
    x, u, y = path
    try:
        return dm.find(u, x), dm.find(u, y)
    except KeyError:
        raise DomainError(f"{tuple(path)} is not a 2-path") from None


def extend4(g: PlaneTriangulation, p: Sequence[int]) -> PlaneTriangulation:
    """Extend a 4-wheel on the path ``x-u-y``; ``u'`` gets id ``n``, the centre ``n+1``.

    The arc of ``u``'s rotation running from ``x`` forward to ``y`` stays
    with ``u``.  Taking the other arc instead swaps the names ``u`` and
    ``u'`` and gives the same graph.
    """
    x, u, y = p
    if x == y or not (g.adjacent(u, x) and g.adjacent(u, y)):
        raise DomainError(f"{tuple(p)} is not a 2-path")
    dm = DartMap.from_triangulation(g)
    dm_extend4(dm, *_path_darts(dm, p))
    return _freeze(dm)


def _funnel_darts(dm: DartMap, g: PlaneTriangulation, funnel: Sequence[int]) -> tuple[int, int]:
    t, u, b1, b2 = funnel
    if t in (b1, b2) or not all(g.adjacent(u, w) for w in (t, b1, b2)):
        raise DomainError(f"{tuple(funnel)} is not a funnel")
    if g.succ(u, b1) == b2:
        first = b1
    elif g.succ(u, b2) == b1:
        first = b2
    else:
        raise DomainError(f"{tuple(funnel)}: bottoms are not consecutive around the middle")
    return dm.find(u, t), dm.find(u, first)


def extend5(g: PlaneTriangulation, funnel: Sequence[int]) -> PlaneTriangulation:
    """Extend a 5-wheel on ``(top, middle, b1, b2)``; ``u'`` gets id ``n``, the centre ``n+1``."""
    dm = DartMap.from_triangulation(g)
    dm_extend5(dm, *_funnel_darts(dm, g, funnel))
    return _freeze(dm)


def contraction_pairs(g: PlaneTriangulation, v: int) -> list[tuple[int, int]]:
    """Neighbour pairs of a degree-4/5 vertex that a contraction may identify.

    These are the pairs two apart on the link cycle, sorted.
    """
    r = g.rotation[v]
    k = len(r)
    if k == 4:
        pairs = [(r[0], r[2]), (r[1], r[3])]
    elif k == 5:
        pairs = [(r[i], r[(i + 2) % 5]) for i in range(5)]
    else:
        raise DomainError(f"vertex {v} has degree {k}, expected 4 or 5")
    return sorted((min(a, b), max(a, b)) for a, b in pairs)


def _contract_k(g: PlaneTriangulation, v: int, pair: tuple[int, int], k: int) -> PlaneTriangulation:
    if g.degree(v) != k:
        raise DomainError(f"vertex {v} has degree {g.degree(v)}, not {k}")
    a, b = min(pair), max(pair)
    if (a, b) not in contraction_pairs(g, v):
        raise DomainError(f"{pair} is not an identifiable pair at {v}")
    if g.adjacent(a, b):
        raise DomainError(f"{a} and {b} are adjacent; use the other pair")
    common = (g.adjacency()[a] & g.adjacency()[b]) - {v}
    allowed = {w for w in g.rotation[v] if g.adjacent(w, a) and g.adjacent(w, b)}
    if common - allowed:
        raise DomainError(f"identifying {a} and {b} would create a parallel edge")
    dm = DartMap.from_triangulation(g)
    dm_delete_and_merge(dm, v, [(a, b)])
    return _freeze(dm)


def contract4(g: PlaneTriangulation, v: int, pair: tuple[int, int]) -> PlaneTriangulation:
    """Delete a degree-4 vertex and identify an opposite pair of its neighbours."""
    return _contract_k(g, v, pair, 4)


def contract5(g: PlaneTriangulation, v: int, pair: tuple[int, int]) -> PlaneTriangulation:
    """Delete a degree-5 vertex and identify two of its neighbours two apart."""
    return _contract_k(g, v, pair, 5)


# ----------------------------------------------------------------------
# compound operations
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ContractibleSubgraph:
    """What a compound contraction removed.

    ``removed`` lists the deleted vertices in order (seed first) with the
    wheel size each had when deleted; ``configuration`` is a letter ``a``
    to ``n``; ``parameter`` counts the repeated step for the open-ended
    families.
    """

    removed: tuple[tuple[int, int], ...]
    identified: tuple[int, int]
    degrees: tuple[int, ...]
    configuration: str
    parameter: int | None = None

    @property
    def X(self) -> tuple[int, ...]:  # noqa: N802
        return tuple(v for v, _ in self.removed)


@dataclass(frozen=True)
class CompoundContraction:
    result: PlaneTriangulation | None
    sub: ContractibleSubgraph
    status: Literal["ok", "exhausted", "non-simple"]
    record: WheelOpRecord = field(repr=False)


def _classify(steps: list[int], seed_deg: int, fives_adjacent: bool) -> tuple[str, int | None]:
    rest = steps[1:]
    twos, threes = rest.count(2), rest.count(3)
    if seed_deg == 4:
        table = {(0, 0): "a", (1, 0): "c", (0, 1): "d", (2, 0): "f", (1, 1): "g", (0, 2): "j"}
        if (twos, threes) in table:
            return table[(twos, threes)], None
        if threes == 0:
            return "k", twos
        return "l", twos
    table = {(0, 0): "b", (1, 0): "d", (0, 1): "e", (2, 0): "g", (1, 1): "h", (0, 2): "i"}
    if (twos, threes) in table:
        return table[(twos, threes)], None
    if twos == 0:
        return ("m" if fives_adjacent else "n"), threes
    return "l", twos


def compound_contract_all(g: PlaneTriangulation, seed: int) -> list[CompoundContraction]:
    """Every compound contraction starting at ``seed``, one per identifiable pair.

    After the 4- or 5-wheel contraction, vertices of degree 2 or 3 are
    removed (lowest degree, then lowest id, first) and digons collapsed
    until the minimum degree is at least 4.
    """
    if g.degree(seed) not in (4, 5):
        raise DomainError(f"seed {seed} has degree {g.degree(seed)}")
    out = []
    for a, b in contraction_pairs(g, seed):
        if g.adjacent(a, b):
            continue
        out.append(_compound_one(g, seed, (a, b)))
    return out


def _compound_one(g: PlaneTriangulation, seed: int, pair: tuple[int, int]) -> CompoundContraction:
    k = g.degree(seed)
    dm = DartMap.from_triangulation(g)
    removed = [(seed, k)]
    dm_delete_and_merge(dm, seed, [pair])
    status: Literal["ok", "exhausted", "non-simple"] = "ok"
    while True:
        if len(dm.rot) < 6:
            status = "exhausted"
            break
        low = min(dm.rot, key=lambda v: (len(dm.rot[v]), v))
        d = len(dm.rot[low])
        if d >= 4:
            break
        if d < 2:
            status = "non-simple"
            break
        removed.append((low, d))
        dm.remove_vertex(low)
        _collapse_digons(dm)
    result = None
    if status == "ok":
        if dm_is_simple(dm):
            result = dm.to_triangulation()
        else:
            status = "non-simple"
    degs = tuple(g.degree(v) for v, _ in removed)
    fives = [v for v, _ in removed if g.degree(v) == 5]
    adj5 = len(fives) == 2 and g.adjacent(*fives)
    conf, param = _classify([s for _, s in removed], k, adj5)
    sub = ContractibleSubgraph(tuple(removed), pair, degs, conf, param)
    rec = WheelOpRecord(
        f"contract{k}",
        (seed,),
        (pair,),
        canonical_code(result).hex() if result is not None else "",
        compound=True,
    )
    return CompoundContraction(result, sub, status, rec)


def compound_contract(
    g: PlaneTriangulation, seed: int, pair: tuple[int, int] | None = None
) -> CompoundContraction:
    """Compound contraction at ``seed``.

    Without ``pair``, the identifiable pairs are tried in increasing order
    and the first that ends in a simple graph of minimum degree 4 wins.
    """
    if pair is not None:
        return _compound_one(g, seed, (min(pair), max(pair)))
    results = compound_contract_all(g, seed)
    for res in results:
        if res.status == "ok":
            return res
    if not results:
        raise DomainError(f"no identifiable nonadjacent pair at {seed}")
    return results[0]


Step = tuple[str, tuple[int, ...]]


def compound_extend(g: PlaneTriangulation, pre: Iterable[Step], main: Step) -> PlaneTriangulation:
    """Atomically apply 2-/3-wheel pre-steps, then one 4- or 5-wheel extension.

    Pre-steps are ``("extend2", (a, b))`` (edge, doubled inside the face to
    the left of ``a -> b``) or ``("extend3", (a, b, c))``.  New vertices get
    consecutive ids starting at ``n``, so later steps may refer to them.
    The main step is ``("extend4", (x, u, y))`` or
    ``("extend5", (top, middle, b1, b2))``.  Fails unless the final graph is
    simple.
    """
    dm = DartMap.from_triangulation(g)
    for kind, obj in pre:
        if kind == "extend2":
            a, b = obj
            dm_extend2(dm, dm.find(a, b))
        elif kind == "extend3":
            f = _dm_face(dm, obj)
            dm_extend3(dm, f)
        else:
            raise DomainError(f"unsupported pre-step {kind}")
    kind, obj = main
    if kind == "extend4":
        x, u, y = obj
        dm_extend4(dm, dm.find(u, x), dm.find(u, y))
    elif kind == "extend5":
        t, u, b1, b2 = obj
        dt = dm.find(u, t)
        for d in dm.rot[u]:
            if dm.head(d) in (b1, b2) and dm.head(dm.nxt(d)) in (b1, b2) and dm.head(dm.nxt(d)) != dm.head(d):
                dm_extend5(dm, dt, d)
                break
        else:
            raise DomainError(f"{tuple(obj)} is not a funnel")
    else:
        raise DomainError(f"unsupported main step {kind}")
    return _freeze(dm)


def _dm_face(dm: DartMap, tri: Sequence[int]) -> list[int]:
    s = set(tri)
    for d in dm.rot[tri[0]]:
        f = dm.face(d)
        if len(f) == 3 and {dm.tail[e] for e in f} == s:
            return f
    raise DomainError(f"{tuple(tri)} is not a face")


# ----------------------------------------------------------------------
# object enumeration
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionObject:
    kind: Literal["path2", "funnel", "dumbbell"]
    obj: tuple[int, ...]
    orbit_size: int
    admissible: bool
    result_code: str


def _dumbbell_result(g: PlaneTriangulation, obj: tuple[int, ...]) -> PlaneTriangulation:
    u, *rest = obj
    f1, f2 = tuple(rest[:3]), tuple(rest[3:])
    n = g.n
    return compound_extend(g, [("extend3", f1), ("extend3", f2)], ("extend4", (n, u, n + 1)))


def enumerate_extension_objects(g: PlaneTriangulation) -> dict[str, list[ExtensionObject]]:
    """Orbit representatives of extension objects, each flagged admissible
    when the extension keeps the minimum degree at least 4.

    Paths and funnels are the induced ones.  A dumbbell is a vertex ``u``
    with two of its faces; both faces get a degree-3 vertex and the path
    between the two new vertices through ``u`` is extended.
    """
    auts = automorphisms(g)
    out: dict[str, list[ExtensionObject]] = {"path2": [], "funnel": [], "dumbbell": []}
    for rep, size in automorphism_orbits(g, "path2", auts=auts):
        h = extend4(g, rep)
        out["path2"].append(ExtensionObject("path2", rep, size, h.min_degree() >= 4, canonical_code(h).hex()))
    for rep, size in automorphism_orbits(g, "funnel", auts=auts):
        h = extend5(g, rep)
        out["funnel"].append(ExtensionObject("funnel", rep, size, h.min_degree() >= 4, canonical_code(h).hex()))
    seen: set[tuple[int, ...]] = set()
    for u in range(g.n):
        r = g.rotation[u]
        d = len(r)
        fs = [tuple(sorted((u, r[i], r[(i + 1) % d]))) for i in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                obj = (u, *fs[i], *fs[j])
                if obj in seen:
                    continue
                orbit = set()
                for s in auts:
                    a, b = tuple(sorted(s[x] for x in fs[i])), tuple(sorted(s[x] for x in fs[j]))
                    orbit.add((s[u], *min(a, b), *max(a, b)))
                seen |= orbit
                rep = min(orbit)
                try:
                    h = _dumbbell_result(g, rep)
                    ok, code = h.min_degree() >= 4, canonical_code(h).hex()
                except DomainError:
                    ok, code = False, ""
                out["dumbbell"].append(ExtensionObject("dumbbell", rep, len(orbit), ok, code))
    out["dumbbell"].sort(key=lambda e: e.obj)
    return out


# ----------------------------------------------------------------------
# replay
# ----------------------------------------------------------------------


def replay(g: PlaneTriangulation, rec: WheelOpRecord) -> PlaneTriangulation:
    """Re-run a recorded basic operation on ``g``."""
    k = rec.kind
    if k == "extend3":
        return extend3(g, rec.obj)
    if k == "contract3":
        return contract3(g, rec.obj[0])
    if k == "extend4":
        return extend4(g, rec.obj)
    if k == "extend5":
        return extend5(g, rec.obj)
    if k in ("contract4", "contract5") and len(rec.obj) == 1 and rec.identified_pairs:
        if not rec.compound:
            return _contract_k(g, rec.obj[0], rec.identified_pairs[0], int(k[-1]))
        res = compound_contract(g, rec.obj[0], rec.identified_pairs[0])
        if res.result is None:
            raise DomainError(f"replay failed: {res.status}")
        return res.result
    raise DomainError(f"cannot replay {k}")


# ----------------------------------------------------------------------
# operations under a colouring
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ColoredContraction:
    """Result of :func:`contract_k_under_coloring`.

    ``walk`` is the old link cycle of the centre read in the result's ids;
    feeding it back to :func:`extend_under_coloring` with kind ``k``,
    ``coloring`` and ``center_color`` undoes the contraction.  ``coloring``
    keeps the colour names of the source; ``partition`` is its normal form.
    ``mapping`` sends every surviving vertex of the source graph to its id
    in ``graph``.
    """

    graph: PlaneTriangulation
    partition: ColorPartition
    coloring: tuple[int, ...]
    center: int
    center_color: int
    identified_pairs: tuple[tuple[int, int], ...]
    walk: tuple[int, ...]
    mapping: dict[int, int] = field(compare=False)

    def record(self) -> WheelOpRecord:
        k = len(self.walk)
        return WheelOpRecord(
            f"contract{k}" if k <= 5 else "contract",
            (self.center,),
            self.identified_pairs,
            canonical_code(self.graph).hex(),
        )


def _merge_across(dm: DartMap, a: int, b: int, face: list[int]) -> None:
    ca = next(e for e in face if dm.tail[e] == a)
    cb = next(e for e in face if dm.tail[e] == b)
    dm.merge_vertices(ca, cb)
    _collapse_digons(dm)


def _open_faces(dm: DartMap) -> list[list[int]]:
    out, seen = [], set()
    for d in dm.darts():
        if d in seen:
            continue
        f = dm.face(d)
        seen.update(f)
        if len(f) > 3:
            out.append(f)
    return out


def _identify(
    dm: DartMap, color: dict[int, int], first: tuple[int, int] | None
) -> tuple[DartMap, list[tuple[int, int]]] | None:
    faces = _open_faces(dm)
    if not faces:
        return (dm, []) if dm_is_simple(dm) else None
    face = faces[0]
    tails = [dm.tail[e] for e in face]
    m = len(tails)
    cands = set()
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            a, b = tails[i], tails[j]
            if a != b and color[a] == color[b]:
                cands.add((min(a, b), max(a, b)))
    order = sorted(cands)
    if first is not None:
        order = [first] if first in cands else []
    for a, b in order:
        trial = dm.copy()
        _merge_across(trial, a, b, trial.face(face[0]))
        if not dm_is_simple(trial):
            continue
        sub = _identify(trial, color, None)
        if sub is not None:
            return sub[0], [(a, b)] + sub[1]
    return None


def contract_k_under_coloring(
    g: PlaneTriangulation,
    f: ColorPartition | Sequence[int],
    v: int,
    k: int | None = None,
    *,
    pair: tuple[int, int] | None = None,
) -> ColoredContraction:
    """Delete ``v`` and identify same-coloured vertices of the opened face.

    Identification repeats on whatever non-triangular face remains until the
    graph is a triangulation again.  Candidate pairs are tried smallest ids
    first, with backtracking when a merge would leave a parallel edge;
    ``pair`` forces the first identification.  Raises :class:`DomainError`
    when no sequence of merges works.
    """
    labels = f.labels if isinstance(f, ColorPartition) else tuple(f)
    if len(labels) != g.n or any(labels[a] == labels[b] for a, b in g.edges()):
        raise DomainError("colouring is not proper on this graph")
    deg = g.degree(v)
    if k is not None and k != deg:
        raise DomainError(f"vertex {v} has degree {deg}, not {k}")
    if g.n <= 4:
        raise DomainError("contracting would leave fewer than 3 vertices")
    dm = DartMap.from_triangulation(g)
    boundary = [dm.tail[d] for d in dm.remove_vertex(v)]
    color = {u: labels[u] for u in range(g.n) if u != v}
    if pair is not None:
        pair = (min(pair), max(pair))
    found = _identify(dm, color, pair)
    if found is None:
        raise DomainError(f"no colour-consistent contraction at {v}")
    dm, pairs = found
    rep = {u: u for u in color}
    for a, b in pairs:
        for u, r in rep.items():
            if r == b:
                rep[u] = a
    keep: dict[int, int] = {}
    h = dm.to_triangulation(keep)
    mapping = {u: keep[rep[u]] for u in color}
    new = [0] * h.n
    for u, w in mapping.items():
        new[w] = color[u]
    return ColoredContraction(
        h,
        ColorPartition.from_coloring(new),
        tuple(new),
        v,
        labels[v],
        tuple(pairs),
        tuple(mapping[u] for u in boundary),
        mapping,
    )


def _cut_along_walk(g: PlaneTriangulation, walk: Sequence[int]) -> tuple[PlaneTriangulation, list[int]]:
    """Open ``g`` along a closed walk and put a new centre in the hole.

    The walk must keep the region being opened on its left, which is how
    the hole of a deleted vertex is traced.  The first visit of a vertex
    keeps its id, later visits take ids ``n, n+1, ...`` in walk order and the
    centre takes the next id.  Returns the graph and the id used at each
    visit.
    """
    k = len(walk)
    if k < 3:
        raise DomainError("walk too short")
    for i in range(k):
        a, b = walk[i], walk[(i + 1) % k]
        if a == b or not g.adjacent(a, b):
            raise DomainError(f"{a}-{b} is not an edge")
    nid = g.n
    copy: list[int] = []
    seen: set[int] = set()
    for w in walk:
        if w in seen:
            copy.append(nid)
            nid += 1
        else:
            copy.append(w)
            seen.add(w)
    centre = nid
    arcs: list[list[int]] = []
    interior: dict[tuple[int, int], int] = {}
    covered: dict[int, list[int]] = {w: [] for w in seen}
    for j, w in enumerate(walk):
        r = g.rotation[w]
        out, inn = walk[(j + 1) % k], walk[j - 1]
        i0, i1 = r.index(out), r.index(inn)
        span = (i1 - i0) % len(r) if out != inn else len(r)
        arc = [r[(i0 + t) % len(r)] for t in range(span + 1)]
        arcs.append(arc)
        for x in arc[1:-1]:
            if (w, x) in interior:
                raise DomainError("walk crosses itself")
            interior[(w, x)] = copy[j]
        covered[w].extend(arc)
    for w in seen:
        if set(covered[w]) != set(g.rotation[w]):
            raise DomainError("walk does not bound an opened region on its left")
    rotation: list[list[int]] = [list(r) for r in g.rotation] + [[] for _ in range(nid + 1 - g.n)]
    for j, arc in enumerate(arcs):
        nbrs = [copy[(j + 1) % k]]
        for x in arc[1:-1]:
            nbrs.append(interior.get((x, walk[j]), x) if x in seen else x)
        nbrs.append(copy[j - 1])
        rotation[copy[j]] = nbrs + [centre]
    for u in range(g.n):
        if u in seen:
            continue
        rotation[u] = [interior.get((x, u), x) if x in seen else x for x in g.rotation[u]]
    rotation[centre] = copy[::-1]
    try:
        h = PlaneTriangulation.from_rotation(rotation)
    except StructureError as e:
        raise DomainError(f"walk does not give a triangulation: {e}") from None
    return h, copy


def extend_under_coloring(
    g: PlaneTriangulation,
    f: ColorPartition | Sequence[int],
    obj: Sequence[int],
    kind: int,
    *,
    center_color: int | None = None,
) -> tuple[PlaneTriangulation, ColorPartition]:
    """Extend a wheel and carry the colouring along.

    ``kind`` 3 takes a face, 4 a path ``x-u-y`` and 5 a funnel
    ``(top, middle, b1, b2)`` whose top shares a colour with a bottom; these
    use :func:`extend3`, :func:`extend4` and :func:`extend5` and their id
    conventions.  An object of length ``kind`` is read as a closed walk (see
    :func:`contract_k_under_coloring`) and works for any ``kind >= 3``.
    Split copies inherit their colour; the centre takes ``center_color`` or
    the smallest colour missing from the object.
    """
    labels = list(f.labels if isinstance(f, ColorPartition) else f)
    obj = tuple(obj)
    if len(obj) == kind:
        h, copies = _cut_along_walk(g, obj)
        new = labels + [labels[obj[j]] for j in range(kind) if copies[j] >= g.n]
    elif kind == 4 and len(obj) == 3:
        h = extend4(g, obj)
        new = labels + [labels[obj[1]]]
    elif kind == 5 and len(obj) == 4:
        t, _, b1, b2 = obj
        if labels[t] not in (labels[b1], labels[b2]):
            raise DomainError("funnel top shares no colour with a bottom")
        h = extend5(g, obj)
        new = labels + [labels[obj[1]]]
    else:
        raise DomainError(f"object {obj} does not fit a {kind}-wheel")
    used = {labels[x] for x in obj}
    if center_color is None:
        free = [c for c in range(4) if c not in used]
        if not free:
            raise DomainError("object already uses four colours")
        center_color = free[0]
    elif center_color in used:
        raise DomainError(f"colour {center_color} already on the object")
    new.append(center_color)
    return h, ColorPartition.from_coloring(new)
