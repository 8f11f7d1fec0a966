import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import catalog, triangulations
from triangulata._darts import DartMap
from triangulata.coloring import ColorPartition, enumerate_partitions
from triangulata.embedding import (
    DomainError,
    canonical_code,
    double_wheel,
    faces,
    icosahedron,
    k4,
    octahedron,
)
from triangulata.wheelops import (
    WheelOpRecord,
    compound_contract,
    compound_contract_all,
    compound_extend,
    contract3,
    contract4,
    contract5,
    contract_k_under_coloring,
    contraction_pairs,
    enumerate_extension_objects,
    extend2,
    extend3,
    extend4,
    extend5,
    extend_under_coloring,
    replay,
)


@given(st.data())
def test_extend3_contract3_inverse(data):
    g = data.draw(triangulations(max_extra=6))
    f = data.draw(st.sampled_from(faces(g)))
    h = extend3(g, f)
    assert h.n == g.n + 1 and h.degree(g.n) == 3
    back = contract3(h, g.n)
    assert back.rotation == g.rotation


@given(st.data())
def test_extend4_contract4_inverse(data):
    g = data.draw(triangulations(max_extra=6))
    u = data.draw(st.integers(0, g.n - 1))
    nb = sorted(g.neighbors(u))
    x = data.draw(st.sampled_from(nb))
    y = data.draw(st.sampled_from([w for w in nb if w != x and not g.adjacent(w, x)] or [None]))
    if y is None:
        return
    h = extend4(g, (x, u, y))
    c = h.n - 1
    assert h.degree(c) == 4
    assert h.degree(x) == g.degree(x) + 2 and h.degree(y) == g.degree(y) + 2
    assert h.degree(u) + h.degree(g.n) == g.degree(u) + 4
    assert (min(u, g.n), max(u, g.n)) in contraction_pairs(h, c)
    assert canonical_code(contract4(h, c, (u, g.n))) == canonical_code(g)


def test_extend5_contract5_inverse_on_catalog():
    for e in list(catalog(8)) + list(catalog(9)):
        g = e.graph
        for t, u, b1, b2 in sorted({(t, u, b1, b2) for t, u, b1, b2 in _funnels(g)})[:10]:
            h = extend5(g, (t, u, b1, b2))
            c = h.n - 1
            assert h.degree(c) == 5
            pair = (min(u, g.n), max(u, g.n))
            assert pair in contraction_pairs(h, c)
            assert canonical_code(contract5(h, c, pair)) == canonical_code(g)


def _funnels(g):
    for u in range(g.n):
        r = g.rotation[u]
        for i in range(len(r)):
            b1, b2 = r[i], r[(i + 1) % len(r)]
            for t in r:
                if t not in (b1, b2) and not g.adjacent(t, b1) and not g.adjacent(t, b2):
                    yield (t, u, min(b1, b2), max(b1, b2))


def test_extend2_alone_is_refused():
    with pytest.raises(DomainError):
        extend2(k4(), (0, 1))
    with pytest.raises(DomainError):
        extend2(octahedron(), (0, 3))


def test_contract_errors():
    g = octahedron()
    with pytest.raises(DomainError):
        contract3(g, 0)
    with pytest.raises(DomainError):
        contract3(k4(), 0)
    r = g.rotation[0]
    with pytest.raises(DomainError):
        contract4(g, 0, (r[0], r[1]))
    # opposite neighbours of an octahedron vertex share the antipode
    with pytest.raises(DomainError):
        contract4(g, 0, (r[0], r[2]))


def test_compound_contraction_of_double_wheel():
    g = double_wheel(6)
    res = compound_contract(g, 0)
    assert res.status == "ok"
    assert res.result.min_degree() >= 4
    assert res.sub.X[0] == 0
    assert replay(g, res.record).rotation == res.result.rotation


def test_compound_contractions_replay_on_catalog():
    for e in catalog(10):
        g = e.graph
        for v in range(g.n):
            if g.degree(v) not in (4, 5):
                continue
            for res in compound_contract_all(g, v):
                assert res.sub.configuration in "abcdefghijklmn"
                if res.status == "ok":
                    assert canonical_code(replay(g, res.record)) == canonical_code(res.result)
                    assert res.record.result_code == canonical_code(res.result).hex()


def test_compound_extend_with_pre_steps():
    g = icosahedron()
    f1, f2 = [f for f in faces(g) if 0 in f][:2]
    n = g.n
    h = compound_extend(g, [("extend3", tuple(f1)), ("extend3", tuple(f2))], ("extend4", (n, 0, n + 1)))
    assert h.n == g.n + 4
    assert h.min_degree() >= 4


def test_record_json_round_trip():
    rec = WheelOpRecord("contract5", (3,), ((1, 4),), "ab", True, (0, 1))
    assert WheelOpRecord.from_json(rec.to_json()) == rec


def test_icosahedron_extension_objects():
    objs = enumerate_extension_objects(icosahedron())
    assert len(objs["path2"]) == 1 and len(objs["funnel"]) == 1
    assert objs["path2"][0].orbit_size == 60
    assert all(o.admissible for o in objs["path2"] + objs["funnel"])


def test_order7_admissible_path_types():
    g = catalog(7).entries[0].graph
    objs = enumerate_extension_objects(g)
    assert len(objs["path2"]) == 3
    assert sum(o.orbit_size for o in objs["path2"]) == 20


# ----------------------------------------------------------------------
# colouring-aware contraction and its inverse
# ----------------------------------------------------------------------


def _check_exact_replay(g, p, v):
    k = g.degree(v)
    c = contract_k_under_coloring(g, p, v)
    h = c.graph
    assert c.partition.is_proper(h)
    assert h.n == g.n - 1 - len(c.identified_pairs)
    h2, p2 = extend_under_coloring(h, c.coloring, c.walk, k, center_color=c.center_color)
    copies, seen, nid = [], set(), h.n
    for w in c.walk:
        if w in seen:
            copies.append(nid)
            nid += 1
        else:
            copies.append(w)
            seen.add(w)
    perm = [None] * g.n
    for u, w in c.mapping.items():
        perm[u] = w
    dm = DartMap.from_triangulation(g)
    hole = [dm.tail[d] for d in dm.remove_vertex(v)]
    for j, u in enumerate(hole):
        perm[u] = copies[j]
    perm[v] = nid
    g2 = g.relabel(perm)
    assert g2.rotation in (h2.rotation, h2.mirror().rotation)
    lab = [None] * g.n
    for u in range(g.n):
        lab[perm[u]] = p.labels[u]
    assert ColorPartition.from_coloring(lab) == p2


@pytest.mark.parametrize(
    "g, some",
    [(octahedron(), False), (icosahedron(), True), (double_wheel(5), True), (double_wheel(6), True)],
    ids=["oct", "ico", "dw5", "dw6"],
)
def test_colored_contraction_exact_replay(g, some):
    done = 0
    for p in enumerate_partitions(g):
        for v in range(g.n):
            try:
                _check_exact_replay(g, p, v)
                done += 1
            except DomainError:
                pass
    # every octahedron contraction meets two neighbours sharing the antipode
    assert (done > 0) == some


def test_colored_contraction_replay_catalog():
    done = 0
    for e in catalog(9):
        for p in enumerate_partitions(e.graph):
            for v in range(e.graph.n):
                try:
                    _check_exact_replay(e.graph, p, v)
                    done += 1
                except DomainError:
                    pass
    assert done > 100


def test_colored_contraction_octahedron_degree4_fails():
    g = octahedron()
    p = enumerate_partitions(g).partitions[0]
    with pytest.raises(DomainError):
        contract_k_under_coloring(g, p, 0)


def test_colored_contraction_rejects_bad_input():
    g = icosahedron()
    with pytest.raises(DomainError):
        contract_k_under_coloring(g, [0] * g.n, 0)
    p = enumerate_partitions(g).partitions[0]
    with pytest.raises(DomainError):
        contract_k_under_coloring(g, p, 0, k=4)


@given(st.data())
def test_extend_under_coloring_stays_proper(data):
    g = data.draw(triangulations(max_extra=4))
    ps = enumerate_partitions(g)
    if not len(ps):
        return
    p = data.draw(st.sampled_from(ps.partitions))
    f = data.draw(st.sampled_from(faces(g)))
    h, q = extend_under_coloring(g, p, tuple(f), 3)
    assert q.is_proper(h) and h.n == g.n + 1
    u = data.draw(st.integers(0, g.n - 1))
    nb = sorted(g.neighbors(u))
    x, y = nb[0], nb[len(nb) // 2]
    if x != y and not g.adjacent(x, y):
        h, q = extend_under_coloring(g, p, (x, u, y), 4)
        assert q.is_proper(h) and h.n == g.n + 2
