"""Graph constructions, double covers, and spectral estimates."""

import math
from fractions import Fraction

import pytest

from expander_ec.graphs import (
    BipartiteGraph,
    RegularGraph,
    bipartite_lambda,
    count_edges_between,
    double_cover,
    expansion_lambda,
    graph_to_text,
    make_graph,
    mixing_check,
    parse_graph_text,
    read_graph,
    write_graph,
)
from expander_ec.rng import SplitMix

TOL = 1e-6


def check_ports(g: BipartiteGraph) -> None:
    for v in range(g.n):
        for i in range(g.d):
            u, j = g.ports[v][i]
            assert g.right_ports[u][j] == (v, i)
    covered = {e for u in range(g.n) for e in g.right_edge_ids(u)}
    assert covered == set(range(g.num_edges))


def test_complete_graph():
    g = make_graph("complete", (5,))
    assert (g.n, g.d) == (5, 4)
    assert g.adj[2] == (0, 1, 3, 4)
    assert g.lam == Fraction(1) and g.lam_certified
    assert expansion_lambda(g) == pytest.approx(1.0, abs=TOL)


def test_complete_with_loops():
    g = make_graph("complete_with_loops", (4,))
    assert (g.n, g.d) == (4, 4)
    assert g.loops
    assert g.lam == Fraction(0) and g.lam_certified
    assert expansion_lambda(g) == pytest.approx(0.0, abs=TOL)


def test_cycles():
    tri = make_graph("cycle", (3,))
    assert tri.lam == Fraction(1) and tri.lam_certified
    assert expansion_lambda(tri) == pytest.approx(1.0, abs=TOL)

    hexagon = make_graph("cycle", (6,))
    assert hexagon.lam == Fraction(2) and hexagon.lam_certified

    pent = make_graph("cycle", (5,))
    assert not pent.lam_certified
    assert pent.lam == pytest.approx(2 * math.cos(math.pi / 5))
    assert expansion_lambda(pent) == pytest.approx(pent.lam, abs=TOL)


def test_complete_bipartite():
    g = make_graph("complete_bipartite", (4,))
    assert isinstance(g, BipartiteGraph)
    assert g.ports[1][2] == (2, 1)
    assert g.lam == Fraction(0) and g.lam_certified
    assert bipartite_lambda(g) == pytest.approx(0.0, abs=TOL)
    check_ports(g)


def test_double_cover_single_edge():
    cover = double_cover(make_graph("complete", (2,)))
    assert cover.ports == (((1, 0),), ((0, 0),))


def test_double_cover_of_triangle_is_hexagon():
    cover = double_cover(make_graph("cycle", (3,)))
    assert cover.lam == Fraction(1) and cover.lam_certified
    assert bipartite_lambda(cover) == pytest.approx(1.0, abs=TOL)
    check_ports(cover)


def test_double_cover_of_looped_complete_is_complete_bipartite():
    cover = double_cover(make_graph("complete_with_loops", (3,)))
    direct = make_graph("complete_bipartite", (3,))
    assert cover.ports == direct.ports


def test_double_cover_of_k8():
    cover = double_cover(make_graph("complete", (8,)))
    assert (cover.n, cover.d) == (8, 7)
    assert bipartite_lambda(cover) == pytest.approx(1.0, abs=TOL)
    check_ports(cover)


def test_disconnected_lambda_equals_degree():
    two_triangles = RegularGraph(
        6, 2, ((1, 2), (0, 2), (0, 1), (4, 5), (3, 5), (3, 4))
    )
    assert expansion_lambda(two_triangles) == pytest.approx(2.0, abs=TOL)


def test_iterative_paths_match_dense():
    g = make_graph("complete", (60,))
    assert expansion_lambda(g, dense_cap=10) == pytest.approx(1.0, abs=1e-4)
    cover = double_cover(g)
    assert bipartite_lambda(cover, dense_cap=10) == pytest.approx(1.0, abs=1e-4)


def test_random_regular():
    g = make_graph("random_regular", (12, 3), seed=7)
    assert (g.n, g.d) == (12, 3)
    again = make_graph("random_regular", (12, 3), seed=7)
    assert again.adj == g.adj
    other = make_graph("random_regular", (12, 3), seed=8)
    assert other.adj != g.adj
    assert expansion_lambda(g) <= 3.0 + TOL

    with pytest.raises(ValueError):
        make_graph("random_regular", (7, 3))
    with pytest.raises(ValueError):
        make_graph("random_regular", (4, 4))


def test_regular_validation():
    with pytest.raises(ValueError, match="symmetric"):
        RegularGraph(3, 1, ((1,), (2,), (0,)))
    with pytest.raises(ValueError, match="repeated"):
        RegularGraph(2, 2, ((1, 1), (0, 0)))
    with pytest.raises(ValueError, match="self-loop"):
        RegularGraph(2, 2, ((0, 1), (0, 1)))


def test_bipartite_validation():
    with pytest.raises(ValueError, match="multi-edge"):
        BipartiteGraph(2, 2, (((0, 0), (0, 1)), ((1, 0), (1, 1))))
    with pytest.raises(ValueError, match="used twice"):
        BipartiteGraph(2, 2, (((0, 0), (1, 0)), ((0, 0), (1, 1))))


def test_mixing_bound_fuzz():
    g = make_graph("random_regular", (24, 5), seed=3)
    cover = double_cover(g)
    lam = bipartite_lambda(cover)
    gen = SplitMix(11)
    for _ in range(10_000):
        left = {v for v in range(24) if gen.next_u64() & 1}
        right = {v for v in range(24) if gen.next_u64() & 1}
        if left and right:
            assert mixing_check(cover, left, right, lam + TOL)


def test_count_edges_between():
    cover = make_graph("complete_bipartite", (3,))
    assert count_edges_between(cover, {0, 1}, {2}) == 2
    assert count_edges_between(cover, set(range(3)), set(range(3))) == 9


def test_text_round_trips(tmp_path):
    g = make_graph("random_regular", (10, 3), seed=2)
    path = tmp_path / "g.txt"
    write_graph(g, str(path))
    back = read_graph(str(path))
    assert isinstance(back, RegularGraph)
    assert back.adj == g.adj

    looped = make_graph("complete_with_loops", (3,))
    assert parse_graph_text(graph_to_text(looped)).adj == looped.adj

    cover = double_cover(g)
    text = graph_to_text(cover)
    parsed = parse_graph_text(text)
    assert isinstance(parsed, BipartiteGraph)
    assert parsed.ports == cover.ports


def test_parse_rejects_malformed():
    with pytest.raises(ValueError, match="header"):
        parse_graph_text("lattice 3 2\n")
    with pytest.raises(ValueError, match="vertex lines"):
        parse_graph_text("regular 3 2\n1 2\n0 2\n")
    with pytest.raises(ValueError, match="port token"):
        parse_graph_text("bipartite 1 1\n0\n")
