"""Black-White colouring on even cycles.

A cycle ``C`` of a triangulation cuts it into two discs, each a
:class:`SemiMPG`: ``C`` on the outside, triangles everywhere inside.  ``C``
is *2-colourable* when some 4-colouring uses exactly two colours on it.
Equivalently, the vertices split into a black set containing ``C`` and a
white set, with neither inducing an odd cycle.  The Black-White operation
builds that split layer by layer from ``C``; the improved operation adds
forced-colour propagation and backtracking, which makes it a decision
procedure.  :func:`oracle_2colorable` answers the same question from the
enumerated 4-colourings, independently of everything here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from triangulata.coloring import ColorPartition, PartitionSet, enumerate_partitions
from triangulata.embedding import DomainError, PlaneTriangulation, canonical_code, is_divisible

BLACK, WHITE = "B", "W"


def _other(c: str) -> str:
    return WHITE if c == BLACK else BLACK


# ----------------------------------------------------------------------
# semi-maximal planar graphs
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SemiMPG:
    """One side of a cycle: the cycle, the vertices strictly on that side,
    and the chords drawn on that side."""

    host: PlaneTriangulation
    boundary: tuple[int, ...]
    interior: frozenset[int]
    chords: frozenset[tuple[int, int]] = frozenset()
    adj: Mapping[int, frozenset[int]] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        host: PlaneTriangulation,
        boundary: Sequence[int],
        interior: Iterable[int],
        chords: Iterable[tuple[int, int]] = (),
    ) -> SemiMPG:
        bnd = tuple(boundary)
        inner = frozenset(interior)
        ch = frozenset((min(a, b), max(a, b)) for a, b in chords)
        on = set(bnd)
        k = len(bnd)
        adj: dict[int, set[int]] = {v: set() for v in on | inner}
        for i, v in enumerate(bnd):
            adj[v] |= {bnd[i - 1], bnd[(i + 1) % k]}
            adj[v] |= {w for w in host.neighbors(v) if w in inner}
        for a, b in ch:
            adj[a].add(b)
            adj[b].add(a)
        for v in inner:
            adj[v] = set(host.neighbors(v))
        return cls(host, bnd, inner, ch, {v: frozenset(s) for v, s in adj.items()})

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, w) for u, ns in self.adj.items() for w in ns if u < w)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(sorted(self.adj))
        h.add_edges_from(self.edges())
        return h

    def boundary_neighbors(self) -> frozenset[int]:
        """Interior vertices adjacent to the boundary."""
        return frozenset(w for v in self.boundary for w in self.adj[v] if w in self.interior)


def _check_cycle(g: PlaneTriangulation, cycle: Sequence[int]) -> tuple[int, ...]:
    c = tuple(cycle)
    k = len(c)
    if len(set(c)) != k or k < 3:
        raise DomainError(f"{c} is not a cycle")
    for i in range(k):
        if not g.adjacent(c[i], c[(i + 1) % k]):
            raise DomainError(f"{c[i]}-{c[(i + 1) % k]} is not an edge")
    return c


def split_on_cycle(g: PlaneTriangulation, cycle: Sequence[int]) -> tuple[SemiMPG, SemiMPG]:
    """The two sides of ``cycle``: first the one on the left of its traversal."""
    c = _check_cycle(g, cycle)
    if len(c) < 4:
        raise DomainError("cycle must have length at least 4")
    on = set(c)
    k = len(c)
    seeds: tuple[set[int], set[int]] = (set(), set())
    chords: tuple[set[tuple[int, int]], set[tuple[int, int]]] = (set(), set())
    for i, v in enumerate(c):
        prev, nxt = c[i - 1], c[(i + 1) % k]
        r = g.rotation[v]
        d = len(r)
        start = r.index(prev)
        side = 0
        for s in range(1, d):
            w = r[(start + s) % d]
            if w == nxt:
                side = 1
            elif w in on:
                chords[side].add((min(v, w), max(v, w)))
            else:
                seeds[side].add(w)
    if chords[0] & chords[1]:
        raise DomainError("inconsistent chord sides")
    sides = []
    for s in (0, 1):
        seen = set(seeds[s])
        todo = deque(seen)
        while todo:
            u = todo.popleft()
            for w in g.neighbors(u):
                if w not in on and w not in seen:
                    seen.add(w)
                    todo.append(w)
        sides.append(seen)
    if sides[0] & sides[1]:
        raise DomainError("cycle does not separate")
    return (
        SemiMPG.build(g, c, sides[0], chords[0]),
        SemiMPG.build(g, c, sides[1], chords[1]),
    )


def gamma_star(s: SemiMPG) -> frozenset[int]:
    """Interior vertices adjacent to an odd-position and an even-position
    vertex of the boundary."""
    if len(s.boundary) % 2:
        raise DomainError("boundary must be even")
    par = {v: i % 2 for i, v in enumerate(s.boundary)}
    out = set()
    for v in s.interior:
        seen = {par[w] for w in s.adj[v] if w in par}
        if len(seen) == 2:
            out.add(v)
    return frozenset(out)


# ----------------------------------------------------------------------
# odd-cycle tests
# ----------------------------------------------------------------------


def _sides(adj: Mapping[int, Iterable[int]], xs: set[int]) -> tuple[dict[int, tuple[int, int]], bool]:
    """Component id and parity for every vertex of ``xs``; flag is True when
    ``xs`` induces a bipartite graph."""
    lab: dict[int, tuple[int, int]] = {}
    ok = True
    comp = 0
    for s in sorted(xs):
        if s in lab:
            continue
        lab[s] = (comp, 0)
        todo = deque([s])
        while todo:
            u = todo.popleft()
            pu = lab[u][1]
            for w in adj[u]:
                if w not in xs:
                    continue
                if w not in lab:
                    lab[w] = (comp, 1 - pu)
                    todo.append(w)
                elif lab[w][1] == pu:
                    ok = False
        comp += 1
    return lab, ok


def _bipartite(adj: Mapping[int, Iterable[int]], xs: set[int]) -> bool:
    return _sides(adj, xs)[1]


def _odd_through(adj: Mapping[int, Iterable[int]], xs: set[int], v: int) -> bool:
    """Whether ``v`` lies on an odd cycle of the graph induced by ``xs | {v}``."""
    rest = xs - {v}
    lab, ok = _sides(adj, rest)
    nb = [lab[w] for w in adj[v] if w in rest]
    if ok:
        return any(a[0] == b[0] and a[1] != b[1] for a, b in combinations(nb, 2))
    # a 2-connected non-bipartite block has an odd cycle through each vertex
    h = nx.Graph()
    h.add_nodes_from(rest | {v})
    h.add_edges_from((a, b) for a in rest | {v} for b in adj[a] if b in rest | {v} and a < b)
    for block in nx.biconnected_components(h):
        if v in block and len(block) > 2 and not nx.is_bipartite(h.subgraph(block)):
            return True
    return False


def _odd_cycle(adj: Mapping[int, Iterable[int]], xs: set[int]) -> list[int] | None:
    """Some odd cycle of the graph induced by ``xs``, or None."""
    h = nx.Graph()
    h.add_nodes_from(xs)
    h.add_edges_from((a, b) for a in xs for b in adj[a] if b in xs and a < b)
    if nx.is_bipartite(h):
        return None
    for cyc in nx.cycle_basis(h):
        if len(cyc) % 2:
            return cyc
    for cyc in nx.simple_cycles(h):
        if len(cyc) % 2:
            return cyc
    return None  # pragma: no cover


# ----------------------------------------------------------------------
# Black-White states
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    """One step of a Black-White run.

    ``kind`` is one of ``layer``, ``fixed``, ``petal``, ``restricted``,
    ``sign``, ``backtrack``, ``grey``.
    """

    kind: str
    layer: int | None
    vertices: tuple[int, ...]
    color: str | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "layer": self.layer, "vertices": list(self.vertices), "color": self.color}


@dataclass(frozen=True)
class BwState:
    B: frozenset[int]
    W: frozenset[int]
    A: frozenset[int]
    trace: tuple[TraceStep, ...]
    proper: bool
    unique: bool
    petal_vertices: frozenset[int] = frozenset()
    boundary_odd: bool = False
    petal_syndrome: bool = False
    diagnostics: PetalDiagnostics | None = None

    def color_map(self) -> dict[int, str]:
        out = {v: BLACK for v in self.B}
        out.update({v: WHITE for v in self.W})
        return out

    def to_json(self) -> dict:
        d = {
            "B": sorted(self.B),
            "W": sorted(self.W),
            "A": sorted(self.A),
            "proper": self.proper,
            "unique": self.unique,
            "petal_vertices": sorted(self.petal_vertices),
            "boundary_odd": self.boundary_odd,
            "petal_syndrome": self.petal_syndrome,
            "trace": [t.to_json() for t in self.trace],
        }
        if self.diagnostics is not None:
            d["petal"] = self.diagnostics.to_json()
        return d


def _classes(col: Mapping[int, str]) -> tuple[set[int], set[int]]:
    b = {v for v, c in col.items() if c == BLACK}
    return b, set(col) - b


def _layers(s: SemiMPG, col: dict[int, str], trace: list[TraceStep]) -> None:
    prev, cur, t = set(s.boundary), BLACK, 0
    while True:
        t += 1
        nxt = sorted(v for v in s.interior if v not in col and _odd_through(s.adj, prev | {v}, v))
        if not nxt:
            return
        cur = _other(cur)
        for v in nxt:
            col[v] = cur
        trace.append(TraceStep("layer", t, tuple(nxt), cur))
        prev = set(nxt)


def _start(s: SemiMPG) -> tuple[dict[int, str], list[TraceStep]]:
    if len(s.boundary) % 2:
        raise DomainError("boundary must be even")
    col = {v: BLACK for v in s.boundary}
    trace = [TraceStep("layer", 0, tuple(s.boundary), BLACK)]
    _layers(s, col, trace)
    return col, trace


def _forced(s: SemiMPG, col: Mapping[int, str], v: int) -> tuple[bool, bool]:
    """(black closes an odd cycle through v, white does)."""
    b, w = _classes(col)
    return _odd_through(s.adj, b | {v}, v), _odd_through(s.adj, w | {v}, v)


def _petal_vertices(s: SemiMPG, col: Mapping[int, str]) -> frozenset[int]:
    out = set()
    b, w = _classes(col)
    for v in s.vertices:
        if v in s.interior and _odd_through(s.adj, b | {v}, v) and _odd_through(s.adj, w | {v}, v):
            out.add(v)
    return frozenset(out)


def is_proper(s: SemiMPG, state: BwState) -> bool:
    """Neither coloured class induces an odd cycle (grey vertices ignored)."""
    return _bipartite(s.adj, set(state.B)) and _bipartite(s.adj, set(state.W))


def bw_operation(s: SemiMPG, *, diagnostics: bool = True) -> BwState:
    """Layered Black-White colouring followed by fixed/petal propagation.

    Layer 0 is the boundary, black.  Layer ``t`` collects the uncoloured
    vertices lying on an odd cycle together with layer ``t-1`` and takes the
    other colour.  Vertices left over are grey; then, repeatedly, a grey
    vertex forced one way is coloured that way and one forced both ways (a
    petal vertex) is coloured black.  ``unique`` means nothing was grey after
    the layers.  ``petal_vertices`` lists every interior vertex that closes
    an odd cycle with either class once the run ends.
    """
    col, trace = _start(s)
    unique = len(col) == len(s.adj)
    while True:
        fixed: list[tuple[int, str]] = []
        petal: list[int] = []
        for v in sorted(s.vertices - set(col)):
            nb, nw = _forced(s, col, v)
            if nb and nw:
                petal.append(v)
            elif nb or nw:
                fixed.append((v, WHITE if nb else BLACK))
        if not fixed and not petal:
            break
        for v, c in fixed:
            col[v] = c
        for c in (BLACK, WHITE):
            vs = tuple(v for v, cc in fixed if cc == c)
            if vs:
                trace.append(TraceStep("fixed", None, vs, c))
        if petal:
            for v in petal:
                col[v] = BLACK
            trace.append(TraceStep("petal", None, tuple(petal), BLACK))
    b, w = _classes(col)
    a = s.vertices - set(col)
    if a:
        trace.append(TraceStep("grey", None, tuple(sorted(a))))
    pv = _petal_vertices(s, col)
    diag = petal_diagnostics(s, col) if diagnostics and a else None
    return BwState(
        frozenset(b),
        frozenset(w),
        frozenset(a),
        tuple(trace),
        _bipartite(s.adj, b) and _bipartite(s.adj, w),
        unique,
        pv,
        not _bipartite(s.adj, set(s.boundary)),
        bool(diag and diag.general_petal_vertices),
        diag,
    )


# ----------------------------------------------------------------------
# propagation and the improved operation
# ----------------------------------------------------------------------


def _propagate(s: SemiMPG, col: dict[int, str]) -> bool:
    """Colour forced grey vertices to a fixpoint; False on a conflict."""
    while True:
        b, w = _classes(col)
        if not (_bipartite(s.adj, b) and _bipartite(s.adj, w)):
            return False
        changed = False
        for v in sorted(s.vertices - set(col)):
            nb, nw = _odd_through(s.adj, b | {v}, v), _odd_through(s.adj, w | {v}, v)
            if nb and nw:
                return False
            if nb or nw:
                col[v] = WHITE if nb else BLACK
                changed = True
                break
        if not changed:
            return True


def _restrict(s: SemiMPG, col: dict[int, str], trace: list[TraceStep]) -> bool:
    """Probe each grey vertex both ways; adopt the only surviving colour."""
    if not _propagate(s, col):
        return False
    while True:
        changed = False
        for u in sorted(s.vertices - set(col)):
            trial = {}
            for c in (BLACK, WHITE):
                t = dict(col)
                t[u] = c
                if _propagate(s, t):
                    trial[c] = t
            if not trial:
                return False
            if len(trial) == 1:
                (c, t), = trial.items()
                fixed = tuple(sorted(set(t) - set(col) - {u}))
                trace.append(TraceStep("restricted", None, (u,) + fixed, c))
                col.clear()
                col.update(t)
                changed = True
                break
        if not changed:
            return True


def _sign_vertex(s: SemiMPG, col: Mapping[int, str]) -> int:
    grey = s.vertices - set(col)
    return min(grey, key=lambda v: (-sum(1 for w in s.adj[v] if w in col), v))


def improved_bw_operation(s: SemiMPG) -> BwState:
    """Layered colouring, then forced colours and sign-vertex branching.

    A sign vertex is the grey vertex with most coloured neighbours; it is
    tried black first.  When propagation hits a one-colour odd cycle or a
    vertex forced both ways, the latest sign vertex still black turns white
    and everything coloured after it goes grey again.  Success leaves no
    grey vertex; on failure the returned state is the one before any sign
    vertex was chosen, with the offending vertices grey.
    """
    col, trace = _start(s)
    unique = len(col) == len(s.adj)
    b, w = _classes(col)
    bad = _odd_cycle(s.adj, b) or _odd_cycle(s.adj, w)
    if bad is not None:
        v = min((x for x in bad if x in s.interior), default=min(bad))
        del col[v]
        trace.append(TraceStep("grey", None, (v,)))
        return _final(s, col, trace, unique, False)
    root = dict(col)
    if not _restrict(s, col, trace):
        trace.append(TraceStep("grey", None, tuple(sorted(s.vertices - set(root)))))
        return _final(s, root, trace, unique, False)
    root = dict(col)
    stack: list[tuple[int, dict[int, str], str]] = []
    while len(col) < len(s.adj):
        v = _sign_vertex(s, col)
        stack.append((v, dict(col), BLACK))
        col[v] = BLACK
        trace.append(TraceStep("sign", len(stack), (v,), BLACK))
        while not _restrict(s, col, trace):
            while stack and stack[-1][2] == WHITE:
                stack.pop()
            if not stack:
                trace.append(TraceStep("grey", None, tuple(sorted(s.vertices - set(root)))))
                return _final(s, root, trace, unique, False)
            v, snap, _ = stack[-1]
            stack[-1] = (v, snap, WHITE)
            col = dict(snap)
            col[v] = WHITE
            trace.append(TraceStep("backtrack", len(stack), (v,), WHITE))
    return _final(s, col, trace, unique, True)


def _final(s: SemiMPG, col: Mapping[int, str], trace: list[TraceStep], unique: bool, ok: bool) -> BwState:
    b, w = _classes(col)
    a = s.vertices - set(col)
    return BwState(
        frozenset(b),
        frozenset(w),
        frozenset(a),
        tuple(trace),
        ok and _bipartite(s.adj, b) and _bipartite(s.adj, w),
        unique,
        _petal_vertices(s, col),
        not _bipartite(s.adj, set(s.boundary)),
    )


# ----------------------------------------------------------------------
# petal diagnostics
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BwPath:
    vertices: tuple[int, ...]
    exclusive: bool
    conditions: tuple[bool, bool, bool]


@dataclass(frozen=True)
class PetalDiagnostics:
    petal_pairs: tuple[tuple[int, int, str], ...]
    petal_edges: tuple[tuple[int, int], ...]
    strict_petal_edges: tuple[tuple[int, int], ...]
    petal_graph: nx.Graph = field(compare=False)
    petal_sets: tuple[tuple[int, ...], ...]
    petal_cycles: tuple[tuple[int, ...], ...]
    exclusive_petal_graph: bool
    bw_paths: tuple[BwPath, ...]
    general_petal_vertices: tuple[int, ...]

    @property
    def max_petal_set(self) -> int:
        return max((len(p) for p in self.petal_sets), default=0)

    def to_json(self) -> dict:
        return {
            "petal_pairs": [list(p) for p in self.petal_pairs],
            "petal_edges": [list(p) for p in self.petal_edges],
            "strict_petal_edges": [list(p) for p in self.strict_petal_edges],
            "petal_sets": [list(p) for p in self.petal_sets],
            "petal_cycles": [list(p) for p in self.petal_cycles],
            "exclusive_petal_graph": self.exclusive_petal_graph,
            "bw_paths": [{"vertices": list(p.vertices), "exclusive": p.exclusive} for p in self.bw_paths],
            "general_petal_vertices": list(self.general_petal_vertices),
        }


def _pairs(s: SemiMPG, col: Mapping[int, str]) -> list[tuple[int, int, str]]:
    b, w = _classes(col)
    grey = sorted(s.vertices - set(col))
    out = []
    for cls, xs in ((BLACK, b), (WHITE, w)):
        alone = {v: _odd_through(s.adj, xs | {v}, v) for v in grey}
        for u, v in combinations(grey, 2):
            if alone[u] or alone[v]:
                continue
            if _odd_through(s.adj, xs | {u, v}, u):
                out.append((u, v, cls))
    return out


def _petal_graph(pairs: Iterable[tuple[int, int, str]]) -> nx.Graph:
    h = nx.Graph()
    h.add_edges_from((u, v) for u, v, _ in pairs)
    return h


def _fixed_set(s: SemiMPG, col: Mapping[int, str], u: int, c: str) -> dict[int, str]:
    """Colour ``u`` and push forced colours; vertices forced both ways go black."""
    t = dict(col)
    t[u] = c
    while True:
        b, w = _classes(t)
        step = {}
        for v in sorted(s.vertices - set(t)):
            nb, nw = _odd_through(s.adj, b | {v}, v), _odd_through(s.adj, w | {v}, v)
            if nb or nw:
                step[v] = WHITE if nb and not nw else BLACK
        if not step:
            return t
        t.update(step)


def _has_two_disjoint_odd(adj: Mapping[int, Iterable[int]], xs: set[int]) -> bool:
    h = nx.Graph()
    h.add_nodes_from(xs)
    h.add_edges_from((a, b) for a in xs for b in adj[a] if b in xs and a < b)
    odd = [frozenset(frozenset(e) for e in zip(c, c[1:] + c[:1])) for c in nx.simple_cycles(h) if len(c) % 2]
    return any(not (x & y) for x, y in combinations(odd, 2))


def _odd(adj: Mapping[int, Iterable[int]], xs: set[int]) -> bool:
    return not _bipartite(adj, xs)


def petal_diagnostics(s: SemiMPG, col: Mapping[int, str] | BwState, *, max_paths: int = 200) -> PetalDiagnostics:
    """Petal relations among the grey vertices of a Black-White colouring.

    A petal pair is two grey vertices neither of which closes an odd cycle
    with a class alone but which do together; ``petal_pairs`` records the
    class.  ``strict_petal_edges`` are adjacent pairs that are petal pairs
    for both classes, so they can only take different colours.  Exclusive petal graphs,
    Black-White paths and general petal vertices follow their definitions
    condition by condition.
    """
    if isinstance(col, BwState):
        col = col.color_map()
    b, w = _classes(col)
    grey = sorted(s.vertices - set(col))
    pairs = _pairs(s, col)
    pg = _petal_graph(pairs)
    sets = tuple(sorted(tuple(sorted(c)) for c in nx.find_cliques(pg) if len(c) >= 2))
    cycles = tuple(tuple(c) for c in nx.cycle_basis(pg))
    edges = tuple(sorted({(u, v) for u, v, _ in pairs if v in s.adj[u]}))
    by_class: dict[tuple[int, int], set[str]] = {}
    for u, v, c in pairs:
        by_class.setdefault((u, v), set()).add(c)
    strict = tuple(sorted(p for p in edges if len(by_class[p]) == 2))

    exclusive = False
    if pg.number_of_nodes() and nx.is_bipartite(pg):
        xs: set[int] = set()
        for comp in nx.connected_components(pg):
            left, _ = nx.bipartite.sets(pg.subgraph(comp))
            xs |= left if min(comp) in left else set(comp) - left
        ys = set(pg) - xs
        c1 = (_odd(s.adj, b | xs) and _odd(s.adj, b | ys)) or (_odd(s.adj, w | xs) and _odd(s.adj, w | ys))
        c2 = (_odd(s.adj, b | xs) and _odd(s.adj, w | xs)) or (_odd(s.adj, b | ys) and _odd(s.adj, w | ys))
        exclusive = c1 and c2

    dsets = {}
    for u in grey:
        for c in (BLACK, WHITE):
            t = _fixed_set(s, col, u, c)
            nb, nw = _classes({v: cc for v, cc in t.items() if v not in col})
            dsets[(u, c)] = (t, nb, nw)

    paths = []
    not_bb = {frozenset((u, v)) for u, v, c in pairs if c == BLACK}
    not_ww = {frozenset((u, v)) for u, v, c in pairs if c == WHITE}

    def grow(p: list[int], need: set[frozenset[int]]) -> Iterator[list[int]]:
        if len(p) >= 3:
            yield p
        for x in sorted(s.adj[p[-1]]):
            if x in grey and x not in p and frozenset((p[-1], x)) in need:
                yield from grow(p + [x], not_ww if need is not_bb else not_bb)

    for u in grey:
        for start in (not_bb, not_ww):
            for x in sorted(s.adj[u]):
                if x in grey and frozenset((u, x)) in start:
                    for p in grow([u, x], not_ww if start is not_bb else not_bb):
                        if len(paths) >= max_paths:
                            break
                        if p[0] < p[-1] or len(p) < 3:
                            inner = p[1:-1]
                            conds = [False, False, False]
                            for v in inner:
                                _, bb, bw = dsets[(v, BLACK)]
                                _, wb, ww = dsets[(v, WHITE)]
                                c1 = (_odd(s.adj, bb) or _odd(s.adj, bw)) and (_odd(s.adj, wb) or _odd(s.adj, ww))
                                c2 = _has_two_disjoint_odd(s.adj, bb) or _has_two_disjoint_odd(s.adj, bw)
                                c3 = _has_two_disjoint_odd(s.adj, wb) or _has_two_disjoint_odd(s.adj, ww)
                                conds = [conds[0] or c1, conds[1] or c2, conds[2] or c3]
                            paths.append(BwPath(tuple(p), any(conds), tuple(conds)))
    paths = sorted(set(paths), key=lambda p: p.vertices)

    general = []
    for u in grey:
        t1, _, _ = dsets[(u, WHITE)]
        t2, _, _ = dsets[(u, BLACK)]
        b1, w1 = _classes(t1)
        b2, w2 = _classes(t2)
        bad1 = _odd(s.adj, b1) or _odd(s.adj, w1)
        bad2 = _odd(s.adj, b2) or _odd(s.adj, w2)
        g1 = _petal_graph(_pairs(s, t1))
        g2 = _petal_graph(_pairs(s, t2))
        odd1 = bool(g1.number_of_nodes()) and not nx.is_bipartite(g1)
        odd2 = bool(g2.number_of_nodes()) and not nx.is_bipartite(g2)
        cyc1 = bool(nx.cycle_basis(g1))
        cyc2 = bool(nx.cycle_basis(g2))
        if (bad1 and bad2) or (odd1 and odd2) or (bad1 and cyc2) or (bad2 and cyc1):
            general.append(u)
    return PetalDiagnostics(
        tuple(pairs), edges, strict, pg, sets, cycles, exclusive, tuple(paths), tuple(general)
    )


# ----------------------------------------------------------------------
# decisions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TwoColorableResult:
    """Decision for one cycle.  ``certificate`` is a 4-colouring of the host
    using two colours on the cycle, when one was found."""

    cycle: tuple[int, ...]
    decision: bool
    sides: tuple[BwState, BwState]
    certificate: ColorPartition | None

    def __bool__(self) -> bool:
        return self.decision


def _two_colour(adj: Mapping[int, Iterable[int]], xs: set[int], base: int, out: dict[int, int]) -> None:
    lab, _ = _sides(adj, xs)
    for v, (_, p) in lab.items():
        out[v] = base + p


def is_2colorable_cycle(g: PlaneTriangulation, cycle: Sequence[int]) -> TwoColorableResult:
    """Run the improved operation on both sides of an even cycle."""
    c = _check_cycle(g, cycle)
    if len(c) % 2:
        raise DomainError("cycle must be even")
    s1, s2 = split_on_cycle(g, c)
    r1, r2 = improved_bw_operation(s1), improved_bw_operation(s2)
    ok = r1.proper and r2.proper and not r1.A and not r2.A
    cert = None
    if ok:
        b = set(r1.B | r2.B)
        w = set(r1.W | r2.W)
        adj = {v: set(g.neighbors(v)) for v in range(g.n)}
        lab: dict[int, int] = {}
        _two_colour(adj, b, 0, lab)
        _two_colour(adj, w, 2, lab)
        cert = ColorPartition.from_coloring([lab[v] for v in range(g.n)])
        if not cert.is_proper(g) or len({cert.labels[v] for v in c}) != 2:
            raise AssertionError("Black-White certificate is not a valid colouring")
    return TwoColorableResult(c, ok, (r1, r2), cert)


def oracle_2colorable(g: PlaneTriangulation, cycle: Sequence[int], parts: PartitionSet | None = None) -> bool:
    """Some 4-colouring (or the 3-colouring) puts exactly two colours on the cycle."""
    c = _check_cycle(g, cycle)
    if parts is None:
        parts = enumerate_partitions(g)
    cands = list(parts.partitions)
    if parts.three_coloring is not None:
        cands.append(parts.three_coloring)
    return any(len({p.labels[v] for v in c}) == 2 for p in cands)


# ----------------------------------------------------------------------
# cycles and their census
# ----------------------------------------------------------------------


def iter_cycles(g: PlaneTriangulation, min_len: int = 4, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every cycle once, starting at its smallest vertex, second vertex
    smaller than the last."""
    h = g.to_networkx()
    for cyc in nx.simple_cycles(h, length_bound=max_len):
        if len(cyc) < min_len:
            continue
        i = cyc.index(min(cyc))
        cyc = cyc[i:] + cyc[:i]
        if cyc[1] > cyc[-1]:
            cyc = [cyc[0]] + cyc[1:][::-1]
        yield tuple(cyc)


def is_basic_cycle(g: PlaneTriangulation, cycle: Sequence[int]) -> bool:
    """No chords: the cycle's vertices induce exactly the cycle."""
    vs = set(cycle)
    return sum(1 for v in vs for w in g.neighbors(v) if w in vs) == 2 * len(vs)


@dataclass(frozen=True)
class CycleCensus:
    by_length: dict[int, tuple[int, int]]
    basic_cycles: int
    chord_cycles: int
    cycle_count: int
    semi_mpg_count: int
    even: int
    odd: int
    max_len: int | None

    @property
    def cycle_bound_holds(self) -> bool:
        return self.basic_cycles <= self.semi_mpg_count / 2 - self.chord_cycles

    def to_json(self) -> dict:
        return {
            "by_length": {str(k): list(v) for k, v in sorted(self.by_length.items())},
            "basic_cycles": self.basic_cycles,
            "chord_cycles": self.chord_cycles,
            "cycle_count": self.cycle_count,
            "semi_mpg_count": self.semi_mpg_count,
            "even": self.even,
            "odd": self.odd,
            "max_len": self.max_len,
        }


def even_cycle_census(g: PlaneTriangulation, max_len: int | None = None) -> CycleCensus:
    """Count cycles of length at least 4.

    ``by_length[k]`` is ``(basic, with chords)``.  ``chord_cycles`` counts
    distinct vertex sets carrying a cycle with chords; every cycle bounds two
    semi-maximal planar graphs.  Without ``max_len`` the enumeration is
    exhaustive, which is only sensible for small graphs; the default cap is
    12 once the order passes 10.
    """
    if max_len is None and g.n > 10:
        max_len = 12
    by_len: dict[int, list[int]] = {}
    basic = 0
    chord_sets: set[frozenset[int]] = set()
    total = even = 0
    for cyc in iter_cycles(g, 4, max_len):
        total += 1
        k = len(cyc)
        even += k % 2 == 0
        slot = by_len.setdefault(k, [0, 0])
        if is_basic_cycle(g, cyc):
            basic += 1
            slot[0] += 1
        else:
            chord_sets.add(frozenset(cyc))
            slot[1] += 1
    return CycleCensus(
        {k: (a, b) for k, (a, b) in sorted(by_len.items())},
        basic,
        len(chord_sets),
        total,
        2 * total,
        even,
        total - even,
        max_len,
    )


def neighbor_set(g: PlaneTriangulation, hs: Iterable[int]) -> frozenset[int]:
    hs = set(hs)
    return frozenset(w for v in hs for w in g.neighbors(v) if w not in hs)


def _boundary_length(g: PlaneTriangulation, hs: set[int]) -> int:
    """Length of the face walk of ``G[hs]`` that holds the rest of the graph."""
    if len(hs) == 1:
        return 0
    rot = {v: [w for w in g.rotation[v] if w in hs] for v in hs}
    seen: set[tuple[int, int]] = set()
    found = []
    for u in sorted(hs):
        for w in rot[u]:
            if (u, w) in seen:
                continue
            walk = []
            a, b = u, w
            outside = False
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append((a, b))
                r = rot[b]
                c = r[(r.index(a) + 1) % len(r)]
                # the corner at b between a and c, in the full rotation
                full = g.rotation[b]
                i, j = full.index(a), full.index(c)
                gap = [full[(i + t) % len(full)] for t in range(1, (j - i) % len(full) or len(full))]
                if any(x not in hs for x in gap):
                    outside = True
                a, b = b, c
            if outside:
                found.append(len(walk))
    if len(found) != 1:
        raise DomainError("the rest of the graph meets more than one face of the subgraph")
    return found[0]


def path_cycle_length(g: PlaneTriangulation, path: Sequence[int]) -> int:
    """Predicted neighbour-cycle length of an induced path: the degree sum
    minus four per path edge."""
    p = list(path)
    if len(set(p)) != len(p) or any(not g.adjacent(a, b) for a, b in zip(p, p[1:])):
        raise DomainError(f"{tuple(p)} is not a path")
    vs = set(p)
    if sum(1 for v in vs for w in g.neighbors(v) if w in vs) != 2 * (len(p) - 1):
        raise DomainError(f"{tuple(p)} is not an induced path")
    nb = neighbor_set(g, vs)
    ring = g.to_networkx().subgraph(nb)
    if len(nb) < 3 or any(d != 2 for _, d in ring.degree()) or not nx.is_connected(ring):
        raise DomainError("neighbours do not induce a cycle")
    return sum(g.degree(v) for v in p) - 4 * (len(p) - 1)


def neighbor_cycle_length(g: PlaneTriangulation, hs: Iterable[int]) -> int:
    """Predicted length of the cycle induced by the neighbours of ``hs``.

    ``hs`` must induce a connected subgraph whose neighbours induce a cycle.
    The prediction is the degree sum in ``g`` minus the degree sum inside
    the subgraph minus the length of its outer boundary walk (a cut edge
    counts twice).
    """
    hs = set(hs)
    h = g.to_networkx().subgraph(hs)
    if not hs or not nx.is_connected(h):
        raise DomainError("subgraph must be nonempty and connected")
    nb = neighbor_set(g, hs)
    ring = g.to_networkx().subgraph(nb)
    if len(nb) < 3 or any(d != 2 for _, d in ring.degree()) or not nx.is_connected(ring):
        raise DomainError("neighbours do not induce a cycle")
    return sum(g.degree(v) for v in hs) - sum(d for _, d in h.degree()) - _boundary_length(g, hs)


# ----------------------------------------------------------------------
# closed cycles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedReport:
    """``kind`` is ``cycle-cycle``, ``cycle-tree``, ``cycle-fence``,
    ``closed-odd`` (the inner layer has an odd cycle but is not itself a
    cycle) or ``not-closed``.  For ``cycle-cycle``, ``inner`` is the inner
    cycle in order and ``reduced`` the decision on it; for the other closed
    kinds ``reduced`` is the decision read off the structure when it is
    immediate."""

    kind: str
    gamma_star: frozenset[int]
    inner: tuple[int, ...] = ()
    reduced: bool | None = None


def side_decision(s: SemiMPG) -> bool:
    """Whether the boundary is 2-colourable within this side alone."""
    r = improved_bw_operation(s)
    return r.proper and not r.A


def _cycle_order(h: nx.Graph) -> tuple[int, ...]:
    start = min(h)
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in h[cur] if w != prev) if prev is None else next(w for w in h[cur] if w != prev)
        if nxt == start:
            return tuple(order)
        order.append(nxt)
        prev, cur = cur, nxt


def classify_closed(s: SemiMPG) -> ClosedReport:
    """Closed-cycle type of a side: every interior neighbour of the boundary
    sees both parities of it.

    Chords between boundary vertices of equal parity close an odd cycle in
    the black class, so every immediate decision also requires the boundary
    to induce a bipartite graph.  An empty interior counts as a cycle-tree
    with an empty tree.
    """
    gs = gamma_star(s)
    if s.boundary_neighbors() != gs:
        return ClosedReport("not-closed", gs)
    flat = _bipartite(s.adj, set(s.boundary))
    h = s.to_networkx().subgraph(gs)
    if not gs:
        return ClosedReport("cycle-tree", gs, (), flat)
    if nx.is_connected(h) and all(d == 2 for _, d in h.degree()) and len(gs) >= 3:
        inner = _cycle_order(h)
        if len(inner) % 2 or not flat:
            return ClosedReport("cycle-cycle", gs, inner, False)
        away = [t for t in split_on_cycle(s.host, inner) if not (t.interior & set(s.boundary))]
        return ClosedReport("cycle-cycle", gs, inner, side_decision(away[0]))
    if nx.is_tree(h) and gs == s.interior:
        return ClosedReport("cycle-tree", gs, (), flat)
    if nx.is_bipartite(h):
        return ClosedReport("cycle-fence", gs)
    return ClosedReport("closed-odd", gs, (), False)


# ----------------------------------------------------------------------
# export
# ----------------------------------------------------------------------


def bw_record(g: PlaneTriangulation, cycle: Sequence[int]) -> dict:
    """JSON-ready summary of the decision on one cycle."""
    res = is_2colorable_cycle(g, cycle)
    return {
        "code": canonical_code(g).hex(),
        "cycle": list(res.cycle),
        "decision": res.decision,
        "sides": [st.to_json() for st in res.sides],
        "divisible": is_divisible(g),
    }


def bw_to_dot(s: SemiMPG, state: BwState, name: str = "GC") -> str:
    """DOT drawing: black filled, white open, grey for undecided."""
    lines = [f"graph {name} {{", "  node [style=filled, fontcolor=black];"]
    for v in sorted(s.adj):
        if v in state.B:
            attr = 'fillcolor=black, fontcolor=white'
        elif v in state.W:
            attr = "fillcolor=white"
        else:
            attr = "fillcolor=grey"
        shape = ", shape=doublecircle" if v in s.boundary else ""
        lines.append(f"  {v} [{attr}{shape}];")
    for a, b in s.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
