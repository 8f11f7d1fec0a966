"""Isomorph-free generation of minimum-degree-4 triangulations and FWF graphs.

Order ``n`` graphs of minimum degree at least 4 are grown from smaller
ones in three ways:

* order ``n - 2``: a 4-wheel extension on a 2-path or a 5-wheel extension
  on a funnel;
* order ``n - 3``: one 2- or 3-wheel pre-step, then a 4-/5-wheel extension
  whose object covers the new low-degree vertex;
* order ``n - 4``: two pre-steps, then a 4-/5-wheel extension covering both.

The first object on each parent is taken up to automorphism; everything
after that is enumerated exhaustively.  Duplicates are removed by canonical
code and entries are sorted by code, so the output never depends on how
the work was scheduled.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

from triangulata._darts import DartMap
from triangulata.embedding import (
    DomainError,
    PlaneTriangulation,
    automorphism_orbits,
    automorphisms,
    canonical_code,
    canonical_form,
    double_wheel,
    from_graph6,
    k4,
    to_graph6,
)
from triangulata.wheelops import (
    WheelOpRecord,
    compound_contract_all,
    dm_extend2,
    dm_extend3,
    dm_extend4,
    dm_extend5,
    dm_is_simple,
)

MAX_ORDER = 13


@dataclass(frozen=True)
class CatalogEntry:
    code: bytes
    graph: PlaneTriangulation
    degree_sequence: str
    parent: bytes = b""
    provenance: tuple[WheelOpRecord, ...] = ()


@dataclass
class Catalog:
    n: int
    entries: list[CatalogEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def graphs(self) -> list[PlaneTriangulation]:
        return [e.graph for e in self.entries]

    def codes(self) -> list[bytes]:
        return [e.code for e in self.entries]


def _entry(g: PlaneTriangulation, parent: bytes = b"", prov: tuple[WheelOpRecord, ...] = ()) -> CatalogEntry:
    c = canonical_form(g)
    return CatalogEntry(canonical_code(c), c, c.degree_sequence(), parent, prov)


# ----------------------------------------------------------------------
# expansion of one parent
# ----------------------------------------------------------------------


def _low(dm: DartMap) -> list[int]:
    return sorted(v for v, r in dm.rot.items() if len(r) < 4)


def _main_objects(dm: DartMap, low: list[int]) -> Iterator[tuple[str, tuple[int, int]]]:
    """4-/5-wheel objects (as dart pairs) whose ends cover every low vertex."""
    lowset = set(low)
    if len(lowset) > 3:
        return
    for u in sorted(dm.rot):
        if u in lowset:
            continue
        r = dm.rot[u]
        heads = [dm.head(d) for d in r]
        k = len(r)
        for i in range(k):
            for j in range(i + 1, k):
                if heads[i] == heads[j] or len(lowset) > 2:
                    continue
                if lowset <= {heads[i], heads[j]}:
                    yield "extend4", (r[i], r[j])
        for i in range(k):
            b1, b2 = heads[i], heads[(i + 1) % k]
            if b1 == b2:
                continue
            for j in range(k):
                t = heads[j]
                if t in (b1, b2) or j == i or j == (i + 1) % k:
                    continue
                if lowset <= {t, b1, b2}:
                    yield "extend5", (r[j], r[i])


def _apply_main(dm: DartMap, kind: str, darts: tuple[int, int]) -> DartMap | None:
    h = dm.copy()
    try:
        if kind == "extend4":
            dm_extend4(h, *darts)
        else:
            dm_extend5(h, *darts)
    except DomainError:
        return None
    if min(len(r) for r in h.rot.values()) < 4 or not dm_is_simple(h):
        return None
    return h


def _describe(dm: DartMap, kind: str, darts: tuple[int, int]) -> tuple[int, ...]:
    a, b = darts
    u = dm.tail[a]
    if kind == "extend4":
        return (dm.head(a), u, dm.head(b))
    return (dm.head(a), u, dm.head(b), dm.head(dm.nxt(b)))


def _copy_index(dm: DartMap, d: int) -> int:
    u, x = dm.tail[d], dm.head(d)
    same = [e for e in dm.rot[u] if dm.head(e) == x]
    return same.index(d)


def _record(dm: DartMap, kind: str, darts: Sequence[int], obj: tuple[int, ...]) -> WheelOpRecord:
    copies = tuple(_copy_index(dm, d) for d in darts)
    return WheelOpRecord(kind, obj, (), "", False, copies)


def _pre_steps(dm: DartMap, first_only_orbits: list[tuple[str, tuple[int, ...]]] | None) -> Iterator[tuple[str, int | list[int]]]:
    """All 2-/3-wheel pre-steps on a dart map, as (kind, dart or face)."""
    if first_only_orbits is not None:
        for kind, obj in first_only_orbits:
            if kind == "extend2":
                a, b = obj
                yield kind, dm.find(a, b)
            else:
                a, b, c = obj
                for d in dm.rot[a]:
                    f = dm.face(d)
                    if len(f) == 3 and {dm.tail[e] for e in f} == {a, b, c}:
                        yield kind, f
                        break
        return
    seen_faces: set[tuple[int, ...]] = set()
    for d in list(dm.darts()):
        yield "extend2", d
    for d in list(dm.darts()):
        f = dm.face(d)
        key = tuple(sorted(f))
        if key in seen_faces:
            continue
        seen_faces.add(key)
        yield "extend3", f


def _apply_pre(dm: DartMap, kind: str, obj: int | list[int]) -> tuple[DartMap, WheelOpRecord]:
    h = dm.copy()
    if kind == "extend2":
        assert isinstance(obj, int)
        rec = WheelOpRecord("extend2", (h.tail[obj], h.head(obj)), (), "", False, (_copy_index(h, obj),))
        dm_extend2(h, obj)
    else:
        assert isinstance(obj, list)
        rec = WheelOpRecord("extend3", tuple(h.tail[e] for e in obj), (), "", False, (_copy_index(h, obj[0]),))
        dm_extend3(h, obj)
    return h, rec


def extensions(
    g: PlaneTriangulation, delta: int, *, strict: bool = True
) -> Iterator[tuple[PlaneTriangulation, tuple[WheelOpRecord, ...]]]:
    """Minimum-degree-4 graphs of order ``g.n + delta`` built from ``g``.

    ``delta`` is 2, 3 or 4 (zero, one or two pre-steps).  With ``strict``
    the low-degree vertices left for the final step must be exactly the
    vertices the pre-steps created; otherwise any pre-step chain whose
    result the final step repairs is accepted.  Yields graphs together
    with the operation chain, in a deterministic order.
    """
    if delta not in (2, 3, 4):
        raise DomainError("delta must be 2, 3 or 4")
    auts = automorphisms(g)
    base = DartMap.from_triangulation(g)
    if delta == 2:
        for rep, _ in automorphism_orbits(g, "path2", induced=False, auts=auts):
            x, u, y = rep
            darts = (base.find(u, x), base.find(u, y))
            h = _apply_main(base, "extend4", darts)
            if h is not None:
                yield h.to_triangulation(), (_record(base, "extend4", darts, rep),)
        for rep, _ in automorphism_orbits(g, "funnel", induced=False, auts=auts):
            t, u, b1, b2 = rep
            first = b1 if g.succ(u, b1) == b2 else b2
            darts = (base.find(u, t), base.find(u, first))
            h = _apply_main(base, "extend5", darts)
            if h is not None:
                yield h.to_triangulation(), (_record(base, "extend5", darts, _describe(base, "extend5", darts)),)
        return
    firsts: list[tuple[str, tuple[int, ...]]] = []
    for rep, _ in automorphism_orbits(g, "edge", auts=auts):
        firsts.append(("extend2", rep))
    for rep, _ in automorphism_orbits(g, "triangle", auts=auts):
        firsts.append(("extend3", rep))
    for kind1, obj1 in _pre_steps(base, firsts):
        h1, rec1 = _apply_pre(base, kind1, obj1)
        if delta == 3:
            stages = [(h1, (rec1,))]
        else:
            stages = []
            for kind2, obj2 in _pre_steps(h1, None):
                h2, rec2 = _apply_pre(h1, kind2, obj2)
                stages.append((h2, (rec1, rec2)))
        for h, recs in stages:
            low = _low(h)
            if strict and low != sorted(set(h.rot) - set(base.rot)):
                continue
            for kind, darts in _main_objects(h, low):
                res = _apply_main(h, kind, darts)
                if res is not None:
                    yield res.to_triangulation(), recs + (_record(h, kind, darts, _describe(h, kind, darts)),)


def replay_chain(g: PlaneTriangulation, chain: Sequence[WheelOpRecord]) -> PlaneTriangulation:
    """Rebuild a graph from its parent and an operation chain.

    Chain ids refer to the parent in canonical form (catalog graphs already
    are), so ``g`` is normalised first.
    """
    dm = DartMap.from_triangulation(canonical_form(g))

    def dart(u: int, x: int, copy: int) -> int:
        return [e for e in dm.rot[u] if dm.head(e) == x][copy]

    for rec in chain:
        c = rec.copies
        if rec.kind == "extend2":
            a, b = rec.obj
            dm_extend2(dm, dart(a, b, c[0]))
        elif rec.kind == "extend3":
            a, b, _ = rec.obj
            dm_extend3(dm, dm.face(dart(a, b, c[0])))
        elif rec.kind == "extend4":
            x, u, y = rec.obj
            dm_extend4(dm, dart(u, x, c[0]), dart(u, y, c[1]))
        elif rec.kind == "extend5":
            t, u, b1, _ = rec.obj
            dm_extend5(dm, dart(u, t, c[0]), dart(u, b1, c[1]))
        else:
            raise DomainError(f"cannot replay {rec.kind}")
    return dm.to_triangulation()


# ----------------------------------------------------------------------
# catalogs
# ----------------------------------------------------------------------


def seed_catalog(n: int) -> Catalog:
    """The two starting orders: the octahedron (6) and the 5-wheel bipyramid (7)."""
    if n == 6:
        return Catalog(6, [_entry(double_wheel(4))])
    if n == 7:
        return Catalog(7, [_entry(double_wheel(5))])
    raise DomainError("only orders 6 and 7 are seeds")


def _small_roots() -> list[PlaneTriangulation]:
    # below order 6 there is no minimum-degree-4 graph; K4 and the order-5
    # triangulation start the pre-step chains instead
    return [k4(), double_wheel(3)]


def _dm_code(dm: DartMap) -> bytes:
    """Canonical code of an embedded multigraph held in a dart map.

    Breadth-first numbering from every admissible start dart in both
    orientations; each vertex's rotation is read from the dart it was
    reached by, so parallel edges are handled.  The smallest code wins.
    """
    deg = {v: len(r) for v, r in dm.rot.items()}
    best_key = max((deg[dm.tail[d]], deg[dm.head(d)]) for d in dm.darts())
    starts = [d for d in dm.darts() if (deg[dm.tail[d]], deg[dm.head(d)]) == best_key]
    pos = {}
    for v, r in dm.rot.items():
        for i, d in enumerate(r):
            pos[d] = i
    best: list[int] | None = None
    for d0 in starts:
        for step in (1, -1):
            label = {dm.tail[d0]: 0}
            entry = {dm.tail[d0]: d0}
            order = [dm.tail[d0]]
            code: list[int] = []
            worse = False
            for v in order:
                r = dm.rot[v]
                k = len(r)
                i0 = pos[entry[v]]
                code.append(k)
                for t in range(k):
                    e = r[(i0 + step * t) % k]
                    w = dm.head(e)
                    if w not in label:
                        label[w] = len(order)
                        entry[w] = e ^ 1
                        order.append(w)
                    code.append(label[w])
                if best is not None and code > best[: len(code)]:
                    worse = True
                    break
            if not worse and (best is None or code < best):
                best = code
    assert best is not None
    return bytes([len(dm.rot)]) + bytes(best)


def _deficit(dm: DartMap) -> tuple[int, int]:
    lows = [len(r) for r in dm.rot.values() if len(r) < 4]
    return sum(4 - d for d in lows), len(lows)


def _fits(dm: DartMap, remaining: int) -> bool:
    # a pre-step lowers the degree deficit by at most 2 and the number of
    # low vertices by at most 2; the final 4-/5-wheel step repairs a
    # deficit of at most 4 spread over at most 3 vertices
    d, low = _deficit(dm)
    return d <= 4 + 2 * remaining and low <= 3 + 2 * remaining


@dataclass
class _State:
    dm: DartMap
    root: bytes
    chain: tuple[WheelOpRecord, ...]


def _pre_step_states(catalogs: dict[int, Catalog], n: int) -> list[_State]:
    """Intermediate graphs of order ``n - 2`` awaiting the final step.

    Level ``k`` holds the minimum-degree-4 graphs of order ``k`` plus
    everything one 2-/3-wheel pre-step away from level ``k - 1``, pruned to
    what the remaining steps can still repair and deduplicated by code.
    """
    target = n - 2
    level: dict[bytes, _State] = {}
    for k in range(4, target + 1):
        remaining = target - k
        nxt: dict[bytes, _State] = {}
        roots = _small_roots() if k < 6 else catalogs[k].graphs()
        for g in roots:
            if g.n != k:
                continue
            dm = DartMap.from_triangulation(canonical_form(g) if k < 6 else g)
            if _fits(dm, remaining):
                code = _dm_code(dm)
                nxt.setdefault(code, _State(dm, canonical_code(g), ()))
        for code in sorted(level):
            st = level[code]
            for kind, obj in _pre_steps(st.dm, None):
                h, rec = _apply_pre(st.dm, kind, obj)
                if not _fits(h, remaining):
                    continue
                hc = _dm_code(h)
                if hc not in nxt:
                    nxt[hc] = _State(h, st.root, st.chain + (rec,))
        level = nxt
    return [level[c] for c in sorted(level)]


def _final_worker(st: _State) -> list[tuple[bytes, str, int, str]]:
    out = []
    low = _low(st.dm)
    for k, (kind, darts) in enumerate(_main_objects(st.dm, low)):
        h = _apply_main(st.dm, kind, darts)
        if h is None:
            continue
        c = canonical_form(h.to_triangulation())
        chain = st.chain + (_record(st.dm, kind, darts, _describe(st.dm, kind, darts)),)
        out.append((canonical_code(c), to_graph6(c), k, "\n".join(r.to_json() for r in chain)))
    return out


def generate_delta4(
    n: int,
    catalogs: dict[int, Catalog] | None = None,
    *,
    jobs: int = 1,
) -> Catalog:
    """All triangulations of order ``n`` with minimum degree at least 4.

    ``catalogs`` supplies (and receives) the smaller orders; missing ones
    are built on the way.  Any number of 2-/3-wheel pre-steps is allowed
    before the final 4-/5-wheel step.
    """
    if n < 6:
        return Catalog(n, [])
    if n > MAX_ORDER + 4:
        raise DomainError(f"order {n} is beyond the configured maximum")
    if catalogs is None:
        catalogs = {}
    if n in catalogs:
        return catalogs[n]
    if n in (6, 7):
        catalogs[n] = seed_catalog(n)
        return catalogs[n]
    for m in range(6, n - 1):
        if m not in catalogs:
            generate_delta4(m, catalogs, jobs=jobs)
    states = _pre_step_states(catalogs, n)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_final_worker, states, chunksize=8))
    else:
        results = [_final_worker(st) for st in states]
    best: dict[bytes, tuple[tuple[int, int], str, str]] = {}
    for sidx, res in enumerate(results):
        for code, g6, k, chain in res:
            key = (sidx, k)
            if code not in best or key < best[code][0]:
                best[code] = (key, g6, chain)
    entries = []
    for code in sorted(best):
        (sidx, _), g6, chain = best[code]
        c = canonical_form(from_graph6(g6))
        recs = tuple(WheelOpRecord.from_json(line) for line in chain.split("\n"))
        entries.append(CatalogEntry(code, c, c.degree_sequence(), states[sidx].root, recs))
    cat = Catalog(n, entries)
    catalogs[n] = cat
    return cat


def generate_all(max_n: int = MAX_ORDER, *, jobs: int = 1) -> dict[int, Catalog]:
    cats: dict[int, Catalog] = {}
    for n in range(6, max_n + 1):
        generate_delta4(n, cats, jobs=jobs)
    return cats


def parents(g: PlaneTriangulation) -> list[CatalogEntry]:
    """Distinct minimum-degree-4 results of compound contractions of ``g``."""
    found: dict[bytes, CatalogEntry] = {}
    for v in range(g.n):
        if g.degree(v) not in (4, 5):
            continue
        for res in compound_contract_all(g, v):
            if res.status == "ok" and res.result is not None and res.result.min_degree() >= 4:
                e = _entry(res.result)
                found.setdefault(e.code, e)
    return [found[c] for c in sorted(found)]


def children(g: PlaneTriangulation, *, strict: bool = True) -> dict[int, list[CatalogEntry]]:
    """Children of ``g`` of orders ``n+2``, ``n+3`` and ``n+4``, keyed by order.

    ``strict`` is passed to :func:`extensions`.
    """
    out: dict[int, list[CatalogEntry]] = {}
    for delta in (2, 3, 4):
        found: dict[bytes, CatalogEntry] = {}
        for h, chain in extensions(g, delta, strict=strict):
            e = _entry(h, canonical_code(g), chain)
            found.setdefault(e.code, e)
        out[g.n + delta] = [found[c] for c in sorted(found)]
    return out


def verify_closure(catalogs: dict[int, Catalog], n: int) -> list[str]:
    """Problems with the order-``n`` catalog; empty when it is closed.

    Every entry must have a parent in some smaller catalog (or, failing
    that, have been grown from K4 or the order-5 triangulation), and every
    ``+2`` child of every order ``n-2`` entry must be in the catalog.
    """
    problems = []
    codes = set(catalogs[n].codes())
    smaller = set()
    for m, cat in catalogs.items():
        if m < n:
            smaller |= set(cat.codes())
    roots = {canonical_code(r) for r in _small_roots()}
    if n >= 8:
        for e in catalogs[n]:
            ps = {p.code for p in parents(e.graph)}
            if not ps & smaller and e.parent not in roots:
                problems.append(f"{e.code.hex()} has no parent in a smaller catalog")
    if n - 2 in catalogs:
        for e in catalogs[n - 2]:
            for h, _ in extensions(e.graph, 2):
                if canonical_code(h) not in codes:
                    problems.append(f"child of {e.code.hex()} missing")
    return problems


# ----------------------------------------------------------------------
# persistence
# ----------------------------------------------------------------------


def catalog_text(cat: Catalog) -> str:
    return "".join(to_graph6(e.graph) + "\n" for e in cat.entries)


def save_catalogs(catalogs: dict[int, Catalog], out_dir: str | os.PathLike[str], params: dict | None = None) -> Path:
    """Write ``n=<k>.g6`` files plus ``manifest.json``; returns the manifest path."""
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    manifest_path = root / "manifest.json"
    manifest = {"catalogs": {}, "parameters": {}}
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
    for n in sorted(catalogs):
        text = catalog_text(catalogs[n])
        (root / f"n={n}.g6").write_text(text, encoding="ascii")
        manifest["catalogs"][str(n)] = {
            "count": len(catalogs[n]),
            "sha256": hashlib.sha256(text.encode("ascii")).hexdigest(),
        }
    manifest["catalogs"] = {k: manifest["catalogs"][k] for k in sorted(manifest["catalogs"], key=int)}
    if params:
        manifest["parameters"].update(params)
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="ascii")
    return manifest_path


def load_catalog(root: str | os.PathLike[str], n: int) -> Catalog:
    path = Path(root) / f"n={n}.g6"
    if not path.exists():
        raise FileNotFoundError(path)
    entries = []
    for line in path.read_text(encoding="ascii").splitlines():
        if line.strip():
            entries.append(_entry(from_graph6(line)))
    entries.sort(key=lambda e: e.code)
    return Catalog(n, entries)


# ----------------------------------------------------------------------
# recursive (FWF) graphs
# ----------------------------------------------------------------------


def generate_recursive(n: int, cache: dict[int, Catalog] | None = None) -> Catalog:
    """All recursive triangulations of order ``n`` (K4 plus repeated face fills)."""
    from triangulata.wheelops import extend3

    if n < 4:
        raise DomainError("recursive triangulations start at K4")
    cache = {} if cache is None else cache
    if n in cache:
        return cache[n]
    if n == 4:
        cache[4] = Catalog(4, [_entry(k4())])
        return cache[4]
    prev = generate_recursive(n - 1, cache)
    found: dict[bytes, CatalogEntry] = {}
    for e in prev:
        for rep, _ in automorphism_orbits(e.graph, "triangle"):
            h = extend3(e.graph, _face_orientation(e.graph, rep))
            ent = _entry(h, e.code, (WheelOpRecord("extend3", rep),))
            found.setdefault(ent.code, ent)
    cache[n] = Catalog(n, [found[c] for c in sorted(found)])
    return cache[n]


def _face_orientation(g: PlaneTriangulation, tri: Sequence[int]) -> tuple[int, int, int]:
    a, b, c = tri
    return (a, b, c) if g.succ(b, a) == c else (a, c, b)


def is_recursive(g: PlaneTriangulation, _memo: dict[bytes, bool] | None = None) -> bool:
    """Can ``g`` be reduced to K4 by deleting degree-3 vertices one at a time?

    Every choice of degree-3 vertex is tried (with memoisation) rather than
    assuming the order does not matter.
    """
    from triangulata.wheelops import contract3

    if g.n == 4:
        return True
    if g.n < 4:
        return False
    memo = {} if _memo is None else _memo
    code = canonical_code(g)
    if code in memo:
        return memo[code]
    ans = False
    for v in range(g.n):
        if g.degree(v) == 3 and is_recursive(contract3(g, v), memo):
            ans = True
            break
    memo[code] = ans
    return ans


# ----------------------------------------------------------------------
# (2,2)-FWF graphs and colour sequences
# ----------------------------------------------------------------------

COLORS = "ygbr"


def valid_color_sequences(n: int) -> list[str]:
    """Every colour sequence of length ``n`` that decodes under the region rule."""
    if n < 4:
        return []
    if n == 4:
        return ["ygbr"]
    if n == 5:
        return ["ygbry"]
    out = []
    for tail in product("ygb", repeat=n - 6):
        s = "ygbryb" + "".join(tail)
        if all(s[i] != s[i - 1] for i in range(6, n)):
            out.append(s)
    return out


def color_sequence_decode(s: str) -> PlaneTriangulation:
    """Build the (2,2)-FWF graph of a colour sequence.

    Vertices ``1..n`` of the sequence become ids ``0..n-1``.  Starting from
    K4 on ``ygbr``, vertex ``k`` goes into the face that contains the
    centre (vertex 4) and vertex ``k-1`` and whose three colours miss
    ``c_k``.  For ``k = 5`` that is the face opposite vertex 1.
    """
    from triangulata.wheelops import extend3

    s = s.strip()
    if len(s) < 4 or s[:4] != "ygbr" or any(ch not in COLORS for ch in s):
        raise DomainError(f"invalid colour sequence {s!r}")
    g = PlaneTriangulation.from_rotation([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)])
    color = [0, 1, 2, 3]
    centre = 3
    for k in range(4, len(s)):
        want = COLORS.index(s[k])
        prev = k - 1
        choices = []
        for f in g._faces:
            if centre in f and prev in f and 0 not in f:
                missing = ({0, 1, 2, 3} - {color[x] for x in f}).pop()
                if missing == want:
                    choices.append(f)
        if len(choices) != 1:
            raise DomainError(f"no consistent face for symbol {k + 1} of {s!r}")
        g = extend3(g, choices[0])
        color.append(want)
    return g


def color_sequence_encode(g: PlaneTriangulation) -> str:
    """Smallest valid colour sequence whose graph is isomorphic to ``g``."""
    code = canonical_code(g)
    for s in sorted(valid_color_sequences(g.n)):
        if canonical_code(color_sequence_decode(s)) == code:
            return s
    raise DomainError("not a (2,2)-FWF graph built by the region rule")


def generate_22fwf(n: int) -> Catalog:
    """(2,2)-FWF graphs of order ``n`` reachable by the region rule, deduplicated."""
    if n < 5:
        return Catalog(n, [])
    found: dict[bytes, CatalogEntry] = {}
    for s in valid_color_sequences(n):
        e = _entry(color_sequence_decode(s))
        found.setdefault(e.code, e)
    return Catalog(n, [found[c] for c in sorted(found)])


def degree3_pair(g: PlaneTriangulation) -> tuple[int, int] | None:
    """The two degree-3 vertices when there are exactly two at distance 2."""
    low = [v for v in range(g.n) if g.degree(v) == 3]
    if len(low) != 2:
        return None
    x, y = low
    if g.adjacent(x, y) or not (g.adjacency()[x] & g.adjacency()[y]):
        return None
    return x, y


def is_22fwf(g: PlaneTriangulation) -> bool:
    return degree3_pair(g) is not None and is_recursive(g)


def classify_22fwf(g: PlaneTriangulation) -> str:
    """``adjacent`` if some face at one degree-3 vertex shares an edge with a
    face at the other, else ``nonadjacent``."""
    pair = degree3_pair(g)
    if pair is None:
        raise DomainError("not a (2,2)-FWF graph")
    x, y = pair

    def edges_at(v: int) -> set[frozenset[int]]:
        out = set()
        for f in g._faces:
            if v in f:
                a, b, c = f
                out |= {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
        return out

    return "adjacent" if edges_at(x) & edges_at(y) else "nonadjacent"


def central_vertex(g: PlaneTriangulation) -> int:
    """A common neighbour of the two degree-3 vertices of largest degree (smallest id on ties)."""
    pair = degree3_pair(g)
    if pair is None:
        raise DomainError("not a (2,2)-FWF graph")
    common = g.adjacency()[pair[0]] & g.adjacency()[pair[1]]
    return min(common, key=lambda v: (-g.degree(v), v))


def star_extend(
    g: PlaneTriangulation, path: Sequence[int], coloring: Sequence[int] | None = None
) -> tuple[PlaneTriangulation, tuple[int, ...]]:
    """4-wheel extension on ``x-u-y`` with its natural colouring.

    ``coloring`` defaults to the first partition of ``g``.  The new vertex
    ``u'`` copies the colour of ``u``; the centre takes the smallest colour
    not used on ``x``, ``u`` and ``y``.
    """
    from triangulata.coloring import enumerate_partitions
    from triangulata.wheelops import extend4

    if coloring is None:
        coloring = enumerate_partitions(g).partitions[0].labels
    x, u, y = path
    h = extend4(g, path)
    col = list(coloring) + [coloring[u]]
    used = {coloring[x], coloring[u], coloring[y]}
    col.append(min(c for c in range(4) if c not in used))
    return h, tuple(col)
