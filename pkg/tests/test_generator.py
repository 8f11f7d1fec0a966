import json

import pytest

from conftest import catalog
from triangulata._darts import DartMap
from triangulata.coloring import enumerate_partitions
from triangulata.embedding import DomainError, PlaneTriangulation, canonical_code, icosahedron, is_divisible, k4
from triangulata.generator import (
    _small_roots,
    catalog_text,
    children,
    central_vertex,
    classify_22fwf,
    color_sequence_decode,
    color_sequence_encode,
    degree3_pair,
    generate_22fwf,
    generate_delta4,
    generate_recursive,
    is_22fwf,
    is_recursive,
    load_catalog,
    parents,
    replay_chain,
    save_catalogs,
    seed_catalog,
    star_extend,
    valid_color_sequences,
    verify_closure,
)
from triangulata.wheelops import dm_delete_and_merge, dm_is_simple

COUNTS = {6: 1, 7: 1, 8: 2, 9: 5, 10: 12, 11: 34}


@pytest.mark.parametrize("n", sorted(COUNTS))
def test_catalog_sizes(n):
    cat = catalog(n)
    assert len(cat) == COUNTS[n]
    assert all(e.graph.min_degree() >= 4 and e.graph.n == n for e in cat)
    assert cat.codes() == sorted(cat.codes())


def test_small_orders_are_empty():
    assert len(generate_delta4(5)) == 0
    with pytest.raises(DomainError):
        seed_catalog(8)


# ----------------------------------------------------------------------
# independent oracle: every triangulation by vertex splitting from K4
# ----------------------------------------------------------------------


def _splits(g):
    dm0 = DartMap.from_triangulation(g)
    for u in range(g.n):
        r = dm0.rot[u]
        for i in range(len(r)):
            for j in range(len(r)):
                if i == j:
                    continue
                dm = dm0.copy()
                _, d = dm.split_vertex(r[i], r[j])
                f = dm.face(d)
                dm.add_edge(f[3] ^ 1, f[1] ^ 1)
                yield dm.to_triangulation()


@pytest.fixture(scope="module")
def all_triangulations():
    levels = {4: {canonical_code(k4()): k4()}}
    for n in range(5, 12):
        nxt = {}
        for g in levels[n - 1].values():
            for h in _splits(g):
                nxt.setdefault(canonical_code(h), h)
        levels[n] = nxt
    return levels


def test_oracle_counts_all_triangulations(all_triangulations):
    assert [len(all_triangulations[n]) for n in range(4, 12)] == [1, 1, 2, 5, 14, 50, 233, 1249]


@pytest.mark.parametrize("n", range(6, 12))
def test_generator_matches_oracle(all_triangulations, n):
    want = {c for c, g in all_triangulations[n].items() if g.min_degree() >= 4}
    assert set(catalog(n).codes()) == want


def _one_step(dm):
    for v in sorted(dm.rot):
        k = len(dm.rot[v])
        ring = [dm.head(d) for d in dm.rot[v]]
        if k in (2, 3):
            opts = [()]
        elif k in (4, 5):
            opts = [((ring[i], ring[(i + 2) % k]),) for i in range(k)]
        else:
            continue
        for pr in opts:
            h = dm.copy()
            try:
                dm_delete_and_merge(h, v, pr)
            except (DomainError, ValueError, KeyError):
                continue
            yield h


def _short_parent(g):
    n = g.n

    def ok(h):
        return dm_is_simple(h) and len(h.rot) >= 6 and min(len(r) for r in h.rot.values()) >= 4 and len(h.rot) in (n - 2, n - 3)

    for h in _one_step(DartMap.from_triangulation(g)):
        if ok(h) or any(ok(h2) for h2 in _one_step(h)):
            return True
    return False


def test_short_parent_gaps():
    # at most two contractions down to order n-2 or n-3 does not always suffice;
    # orders 7 and 8 sit above the empty orders 4 and 5
    gaps = {n: sorted(e.degree_sequence for e in catalog(n) if not _short_parent(e.graph)) for n in range(7, 12)}
    assert gaps == {
        7: ["4444455"],
        8: ["44445555"],
        9: [],
        10: ["4444445577"],
        11: ["44444455668", "44444455668", "44444455677", "44444455677"],
    }
    for n in (10, 11):
        for e in catalog(n):
            if not _short_parent(e.graph):
                assert is_divisible(e.graph)
                assert min(p.graph.n for p in parents(e.graph)) <= n - 4


@pytest.mark.parametrize("n", range(8, 12))
def test_closure(n):
    for m in range(6, n + 1):
        catalog(m)
    from conftest import _CATALOGS

    assert verify_closure(_CATALOGS, n) == []


def test_provenance_replays():
    graphs = {}
    for n in range(6, 11):
        graphs.update({e.code: e.graph for e in catalog(n)})
    graphs.update({canonical_code(r): r for r in _small_roots()})
    seen = 0
    for n in range(8, 12):
        for e in catalog(n):
            assert e.provenance
            assert canonical_code(replay_chain(graphs[e.parent], e.provenance)) == e.code
            seen += 1
    assert seen == 53


def test_parallel_generation_identical():
    a = generate_delta4(10, {}, jobs=1)
    b = generate_delta4(10, {}, jobs=2)
    assert catalog_text(a) == catalog_text(b)


def test_save_load_round_trip(tmp_path):
    cats = {n: catalog(n) for n in range(6, 10)}
    path = save_catalogs(cats, tmp_path, {"x": 1})
    manifest = json.loads(path.read_text())
    assert manifest["catalogs"]["9"]["count"] == 5
    assert manifest["parameters"] == {"x": 1}
    for n in cats:
        assert load_catalog(tmp_path, n).codes() == cats[n].codes()
    first = (tmp_path / "n=9.g6").read_bytes()
    save_catalogs(cats, tmp_path, {"x": 1})
    assert (tmp_path / "n=9.g6").read_bytes() == first
    with pytest.raises(FileNotFoundError):
        load_catalog(tmp_path, 20)


def test_icosahedron_parents_and_children():
    g = icosahedron()
    ps = parents(g)
    assert len(ps) == 1 and ps[0].degree_sequence == "444455556"
    ch = children(g)
    assert {k: len(v) for k, v in ch.items()} == {14: 2, 15: 6, 16: 13}
    wide = children(g, strict=False)
    assert sum(len(v) for v in wide.values()) == 23
    code = canonical_code(g)
    for lst in ch.values():
        for e in lst[:3]:
            assert code in {p.code for p in parents(e.graph)}


def test_order7_children_at_plus_two():
    g = catalog(7).entries[0].graph
    got = children(g)[9]
    assert 0 < len(got) <= 3


# ----------------------------------------------------------------------
# recursive graphs
# ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def recursive():
    cache = {}
    return {n: generate_recursive(n, cache) for n in range(4, 11)}


def test_recursive_counts(recursive):
    assert [len(recursive[n]) for n in range(4, 11)] == [1, 1, 1, 3, 7, 24, 93]


def test_recursive_graphs_uniquely_colourable(recursive):
    for n in range(4, 11):
        for e in recursive[n]:
            assert is_recursive(e.graph)
            ps = enumerate_partitions(e.graph)
            assert len(ps) + (ps.three_coloring is not None) == 1


def test_min_degree_four_graphs_not_recursive():
    assert not any(is_recursive(e.graph) for e in catalog(9))
    with pytest.raises(DomainError):
        generate_recursive(3)


@pytest.mark.parametrize("n, count", [(5, 1), (6, 1), (7, 2), (8, 3), (9, 6)])
def test_22fwf_counts_match_filter(recursive, n, count):
    cat = generate_22fwf(n)
    assert len(cat) == count
    filtered = {e.code for e in recursive[n] if is_22fwf(e.graph)}
    assert set(cat.codes()) == filtered


def test_22fwf_shape():
    for n in range(6, 10):
        for e in generate_22fwf(n):
            g = e.graph
            x, y = degree3_pair(g)
            assert g.degree(x) == g.degree(y) == 3
            assert classify_22fwf(g) in ("adjacent", "nonadjacent")
            if classify_22fwf(g) == "nonadjacent":
                assert sum(1 for v in range(g.n) if g.degree(v) == n - 1) == 1


def test_colour_sequences_decode_and_encode():
    for n in range(4, 10):
        for s in valid_color_sequences(n):
            g = color_sequence_decode(s)
            assert is_22fwf(g) or g.n < 5
            t = color_sequence_encode(g)
            assert canonical_code(color_sequence_decode(t)) == canonical_code(g)
            assert t <= s


def test_bad_colour_sequence():
    with pytest.raises(DomainError):
        color_sequence_decode("yyq")


def test_star_extension_is_proper_and_breaks_uniqueness():
    for n in range(5, 10):
        for e in generate_22fwf(n):
            g = e.graph
            x, y = degree3_pair(g)
            u = central_vertex(g)
            h, f = star_extend(g, (x, u, y))
            assert all(f[a] != f[b] for a, b in h.edges())
            assert len(enumerate_partitions(h)) >= 2


def test_rotation_round_trip_through_graph6():
    g = catalog(10).entries[3].graph
    h = PlaneTriangulation.from_rotation(g.rotation)
    assert h == g
