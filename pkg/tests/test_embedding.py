import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import catalog, relabelled, triangulations
from triangulata.embedding import (
    DomainError,
    PlaneTriangulation,
    StructureError,
    automorphism_orbits,
    automorphisms,
    canonical_code,
    canonical_form,
    double_wheel,
    faces,
    from_graph6,
    icosahedron,
    is_divisible,
    k3,
    k4,
    neighbor_cycle,
    octahedron,
    reroot_outer_face,
    separating_triangles,
    subgraph_occurrences,
    to_graph6,
    validate_maximal_planar,
)
from triangulata.wheelops import extend3


def test_k3_and_k4_are_valid():
    assert k3().n == 3 and k3().m == 3
    g = k4()
    assert validate_maximal_planar(g).ok
    assert g.degree_sequence() == "3333"
    assert len(faces(g)) == 4


@pytest.mark.parametrize(
    "rotation, reason",
    [
        ([(1, 2, 3), (0, 2), (0, 1, 3), (0, 2)], "edge count"),
        ([(1, 2, 2), (0, 2), (0, 1)], "repeated"),
        ([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 1, 2)], "face"),
        ([(1, 2), (0, 2), (0, 3)], "symmetric"),
    ],
)
def test_validation_reports_first_problem(rotation, reason):
    d = validate_maximal_planar(rotation)
    assert not d.ok
    assert reason in d.reason
    with pytest.raises(StructureError):
        PlaneTriangulation.from_rotation(rotation)


def test_non_planar_edge_list_rejected():
    # K_{3,3} plus three edges: the right edge count but not planar
    edges = [(a, b) for a in range(3) for b in range(3, 6)] + [(0, 1), (1, 2), (3, 4)]
    with pytest.raises(StructureError):
        PlaneTriangulation.from_edges(6, edges)


@given(triangulations())
def test_euler_counts(g):
    assert g.m == 3 * g.n - 6
    assert len(faces(g)) == 2 * g.n - 4
    assert validate_maximal_planar(g).ok
    assert all(len(f) == 3 for f in faces(g))


@given(triangulations())
def test_every_edge_on_two_faces(g):
    seen = {}
    for f in faces(g):
        for i in range(3):
            e = tuple(sorted((f[i], f[(i + 1) % 3])))
            seen[e] = seen.get(e, 0) + 1
    assert set(seen) == set(g.edges())
    assert set(seen.values()) == {2}


@given(st.data())
def test_canonical_code_invariant_under_relabelling(data):
    g = data.draw(triangulations())
    h = data.draw(relabelled(g))
    assert canonical_code(g) == canonical_code(h)
    assert canonical_code(g) == canonical_code(g.mirror())
    a, b = canonical_form(g), canonical_form(h)
    assert set(a.edges()) == set(b.edges())
    assert a.rotation in (b.rotation, b.mirror().rotation)


@given(triangulations())
def test_graph6_round_trip(g):
    h = from_graph6(to_graph6(g))
    assert set(h.edges()) == set(g.edges())
    assert canonical_code(h) == canonical_code(g)


def test_graph6_rejects_garbage():
    with pytest.raises(StructureError):
        from_graph6("\x7f\x7f")


def test_canonical_code_separates_catalog():
    for n in range(6, 11):
        codes = [canonical_code(e.graph) for e in catalog(n)]
        assert len(set(codes)) == len(codes)


def test_automorphism_group_orders():
    assert len(automorphisms(k4())) == 24
    assert len(automorphisms(octahedron())) == 48
    assert len(automorphisms(icosahedron())) == 120
    assert len(automorphisms(double_wheel(5))) == 20


@given(triangulations(max_extra=5))
def test_automorphisms_preserve_edges(g):
    es = set(g.edges())
    for s in automorphisms(g):
        assert {tuple(sorted((s[u], s[v]))) for u, v in es} == es


@given(triangulations(max_extra=5))
def test_orbit_sizes_sum_to_occurrences(g):
    for kind in ("edge", "path2", "triangle", "funnel"):
        orbits = automorphism_orbits(g, kind)
        assert sum(size for _, size in orbits) == len(subgraph_occurrences(g, kind, induced=True))


def test_icosahedron_single_orbit_per_kind():
    g = icosahedron()
    for kind in ("edge", "path2", "triangle", "funnel"):
        assert len(automorphism_orbits(g, kind)) == 1


def _degree_type(g, path):
    s = "".join(str(g.degree(v)) for v in path)
    return min(s, s[::-1])


def test_order7_path_orbits():
    g = catalog(7).entries[0].graph
    induced = automorphism_orbits(g, "path2")
    assert sorted(_degree_type(g, p) for p, _ in induced) == ["444", "454", "545"]
    every = automorphism_orbits(g, "path2", induced=False)
    assert {_degree_type(g, p) for p, _ in every} == {"444", "445", "454", "545"}


def test_separating_triangles():
    g = k4()
    assert separating_triangles(g) == []
    h = extend3(extend3(g, (0, 1, 2)), (0, 1, 4))
    assert (0, 1, 2) in separating_triangles(h)
    assert is_divisible(h)
    assert not is_divisible(icosahedron())


def test_neighbor_cycle_kinds():
    assert neighbor_cycle(icosahedron(), 0).kind == "basic"
    assert neighbor_cycle(k4(), 0).kind == "triangle"
    g = double_wheel(4)
    assert neighbor_cycle(g, 4).kind == "basic"


def test_reroot_outer_face():
    g = octahedron()
    f = faces(g)[-1]
    h = reroot_outer_face(g, f)
    assert h.rotation == g.rotation
    assert sorted(h.outer_face) == sorted(f)
    with pytest.raises(DomainError):
        reroot_outer_face(g, (0, 1, 3))


def test_mirror_is_involution():
    g = icosahedron()
    assert g.mirror().mirror().rotation == g.rotation
