import re
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

import published_census
from conftest import catalog, graphs_upto, partitions, triangulations
from triangulata.coloring import (
    ColorPartition,
    bicolored_subgraph,
    census_record,
    classify_coloring,
    classify_graph,
    common_on_cycle_properties,
    count_labeled_colorings,
    enumerate_partitions,
    fence_analyze,
    to_dot,
    tricolored_checks,
    union_two_bicolored,
)
from triangulata.embedding import double_wheel, icosahedron, k4, octahedron


def test_k4_has_one_partition():
    ps = enumerate_partitions(k4())
    assert len(ps) == 1 and ps.three_coloring is None
    assert ps.partitions[0].k == 4


def test_octahedron_is_three_chromatic():
    ps = enumerate_partitions(octahedron())
    assert ps.three_chromatic
    assert ps.three_coloring.k == 3
    assert len(ps) == 3
    assert classify_graph(octahedron()).kind == "3-chromatic"


@given(triangulations(max_extra=6))
def test_partitions_are_proper_and_distinct(g):
    ps = enumerate_partitions(g)
    assert len(set(ps.partitions)) == len(ps)
    for p in ps:
        assert p.is_proper(g) and p.k == 4
        assert ColorPartition.from_coloring(p.labels) == p


@given(triangulations(max_extra=6))
def test_labelled_count_is_24_per_partition(g):
    ps = enumerate_partitions(g)
    assert count_labeled_colorings(g) == 24 * len(ps)
    assert count_labeled_colorings(g, 3) == (6 if ps.three_chromatic else 0)


def test_double_wheel_partition_count_by_hand():
    # the odd rim cannot take two colours, so the poles share one and the rim
    # gets a proper 3-colouring of C7: (2^7 - 2) / 3! = 21 partitions
    g = double_wheel(7)
    assert len(enumerate_partitions(g)) == 21


@given(triangulations(max_extra=6))
def test_tree_iff_bicoloured_components_sum_to_six(g):
    for p in enumerate_partitions(g):
        comps = sum(
            nx.number_connected_components(bicolored_subgraph(g, p, i, j)) for i, j in combinations(range(4), 2)
        )
        assert (classify_coloring(g, p).kind == "tree") == (comps == 6)


def test_bicoloured_cycles_reported():
    g = icosahedron()
    for p in enumerate_partitions(g):
        assert classify_coloring(g, p).kind == "tree"
        assert classify_coloring(g, p).bicolored_cycles == ()


def test_census_record_shape():
    r = census_record(catalog(7).entries[0].graph)
    assert r["n"] == 7 and r["partitions"] == 5 and r["cycle_count"] == 5 and r["tree_count"] == 0
    assert r["class"] == "pure-cycle"
    assert set(r) == {"code", "n", "degree_sequence", "partitions", "tree_count", "cycle_count", "class"}


@pytest.fixture(scope="module")
def census():
    return [census_record(e.graph) for e in graphs_upto(11, 7)]


def test_table_rows_agree_except_known(census):
    bad = published_census.compare(census)
    assert bad == {
        "444444477": ([(17, 0)], [(21, 0)]),
        "44444456667": ([(21, 0)], [(29, 0)]),
        "44445555567": ([(2, 2), (11, 0), (13, 0)], [(2, 2), (11, 0), (12, 1)]),
    }


def test_table_starred_count(census):
    assert sum(r["class"] in ("divisible", "3-chromatic") for r in census) == published_census.STARRED


def test_pure_tree_graphs_up_to_12():
    found = []
    for e in graphs_upto(12):
        c = classify_graph(e.graph, partitions(e))
        if c.kind == "pure-tree":
            found.append((e.degree_sequence, c.partitions))
    assert found == [("444555555", 2), ("555555555555", 10)]


def test_fence_of_tree_union():
    g = icosahedron()
    p = enumerate_partitions(g).partitions[0]
    rep = union_two_bicolored(g, p, 0, (1, 2))
    assert rep.odd_cycle_free
    assert rep.tree_coloring
    assert rep.fence.fence


def test_fence_analyze_on_plain_cycle():
    g = icosahedron()
    h = nx.Graph()
    ring = g.rotation[0]
    nx.add_cycle(h, ring)
    rep = fence_analyze(g, h)
    assert not rep.fence  # a 5-cycle has odd faces
    assert rep.walk_lengths == (5, 5)


@pytest.mark.parametrize("n", range(6, 10))
def test_two_bicoloured_unions_have_no_odd_cycle(n):
    for e in catalog(n):
        g = e.graph
        for p in partitions(e):
            for common in range(4):
                others = tuple(c for c in range(4) if c != common)
                for a, b in combinations(others, 2):
                    rep = union_two_bicolored(g, p, common, (a, b))
                    assert rep.odd_cycle_free
                    if rep.fence.fence:
                        assert all(x % 2 == 0 for x in rep.fence.walk_lengths)


@pytest.mark.parametrize("n", range(6, 10))
def test_tricoloured_checks(n):
    for e in catalog(n):
        g = e.graph
        for p in partitions(e):
            for removed in range(4):
                rep = tricolored_checks(g, p, removed)
                assert rep.equivalence_holds
                assert rep.faces_without_removed == rep.predicted_triangles
                assert rep.odd_vertex_paths_hold
                for chk in rep.path_checks:
                    assert chk["parity_ok"]


def test_tricoloured_needs_four_classes():
    with pytest.raises(ValueError):
        tricolored_checks(octahedron(), enumerate_partitions(octahedron()).three_coloring)


def test_common_on_cycle_properties_counts():
    seen = 0
    for e in catalog(8):
        for p in partitions(e):
            for common in range(4):
                others = tuple(c for c in range(4) if c != common)[:2]
                d = common_on_cycle_properties(e.graph, p, common, others)
                if d is None:
                    continue
                seen += 1
                assert d["a"] >= 1 and d["b"] >= 1 and d["c"] >= 1
                assert all(length % 2 == 0 for length in d["cycles_by_length"])
    assert seen > 0


@given(triangulations(max_extra=6))
def test_no_two_adjacent_degree3_vertices(g):
    if g.n >= 5:
        assert not any(g.degree(u) == 3 and g.degree(v) == 3 for u, v in g.edges())


def test_to_dot():
    text = to_dot(k4())
    assert text.startswith("graph G {") and text.count("--") == 6
    g = icosahedron()
    coloured = to_dot(g, enumerate_partitions(g).partitions[0])
    assert coloured.count("shape=") == 12
    assert set(re.findall(r"shape=(\w+)", coloured)) == {"circle", "box", "triangle", "diamond"}


@given(st.lists(st.integers(0, 3), min_size=1, max_size=12))
def test_partition_normal_form(labels):
    p = ColorPartition.from_coloring(labels)
    assert p.labels[0] == 0
    seen = []
    for c in p.labels:
        if c not in seen:
            seen.append(c)
    assert seen == list(range(len(seen)))
    assert sum(len(c) for c in p.classes) == len(labels)
