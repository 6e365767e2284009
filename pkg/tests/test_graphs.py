"""Graph container, builders, exact independent-set solvers."""

import itertools

import numpy as np
import pytest

from jumpschelling.graphs import (
    Graph,
    build_circulant,
    build_clique,
    build_complete_bipartite,
    build_from_edge_list,
    build_path,
    build_ring,
    build_star,
    format_edge_list_text,
    independence_number,
    is_independent_set,
    is_max_deg_independent_set,
    max_deg_independent_set,
    maximum_independent_set,
    parse_edge_list_text,
    regular_completion,
    regular_embed,
    regular_minus_edge,
)

from conftest import random_connected_graph


def brute_mis_size(g: Graph) -> int:
    best = 0
    for k in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), k):
            if is_independent_set(g, sub):
                return k
    return best


def brute_max_deg_is(g: Graph) -> int:
    """Largest independent set dominating all outside degrees, brute force."""
    degs = [g.degree(v) for v in range(g.n)]
    best = 0
    for k in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            if not is_independent_set(g, sub):
                continue
            inside = min(degs[v] for v in sub)
            outside = [degs[v] for v in range(g.n) if v not in sub]
            if all(d <= inside for d in outside):
                best = max(best, k)
    return best


class TestGraphContainer:
    def test_from_edges_basic(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert g.n == 4
        assert g.edge_count == 3
        assert list(g.neighbors(1)) == [0, 2]
        assert g.degree(0) == 1 and g.degree(1) == 2
        assert g.has_edge(2, 3) and not g.has_edge(0, 3)

    def test_from_edges_rejects(self):
        with pytest.raises(ValueError):
            Graph.from_edges(0, [])
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(0, 3)])
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_from_csr_roundtrip(self):
        g = build_ring(5)
        h = Graph.from_csr(5, g.offsets.copy(), g.nbrs.copy())
        assert list(h.neighbors(0)) == list(g.neighbors(0))
        assert h.edge_count == 5

    def test_from_csr_rejects_malformed(self):
        g = build_ring(4)
        bad = g.nbrs.copy()
        bad[0], bad[1] = bad[1], bad[0]  # row no longer sorted
        with pytest.raises(ValueError):
            Graph.from_csr(4, g.offsets.copy(), bad)
        asym = build_path(3)
        trunc = asym.offsets.copy()
        with pytest.raises(ValueError):
            Graph.from_csr(3, trunc[:-1], asym.nbrs.copy())

    def test_degrees_and_regularity(self):
        ring = build_ring(6)
        assert ring.is_regular() and ring.is_regular(2)
        assert not ring.is_regular(3)
        assert ring.max_degree() == ring.min_degree() == 2
        star = build_star(4)
        assert not star.is_regular()
        assert star.max_degree() == 4 and star.min_degree() == 1
        assert list(star.degrees()) == [4, 1, 1, 1, 1]

    def test_connectivity(self):
        assert build_path(7).is_connected()
        assert not Graph.from_edges(4, [(0, 1), (2, 3)]).is_connected()
        assert Graph.from_edges(1, []).is_connected()

    def test_bfs_layers(self):
        g = build_path(5)
        assert list(g.bfs_layers([0])) == [0, 1, 2, 3, 4]
        assert list(g.bfs_layers([0, 4])) == [0, 1, 2, 1, 0]

    def test_two_coloring(self):
        parts = build_complete_bipartite(2, 3).two_coloring()
        assert parts is not None
        assert sorted(map(sorted, parts)) == [[0, 1], [2, 3, 4]]
        assert build_ring(6).two_coloring() is not None
        assert build_ring(5).two_coloring() is None

    def test_without_edge(self):
        g = build_ring(4).without_edge(0, 1)
        assert not g.has_edge(0, 1)
        assert g.edge_count == 3
        with pytest.raises(ValueError):
            g.without_edge(0, 1)


class TestBuilders:
    def test_ring(self):
        g = build_ring(5)
        assert sorted(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        with pytest.raises(ValueError):
            build_ring(2)

    def test_path_star_clique(self):
        assert build_path(4).edge_count == 3
        assert build_star(3).edge_count == 3
        g = build_clique(5)
        assert g.edge_count == 10 and g.is_regular(4)

    def test_complete_bipartite(self):
        g = build_complete_bipartite(2, 3)
        assert g.edge_count == 6
        assert not g.has_edge(0, 1) and g.has_edge(0, 2)

    def test_circulant(self):
        g = build_circulant(8, [1, 2])
        assert g.is_regular(4)
        assert g.has_edge(0, 2) and not g.has_edge(0, 3)
        # antipodal offset contributes one edge per node pair
        h = build_circulant(6, [3])
        assert h.degree(0) == 1
        with pytest.raises(ValueError):
            build_circulant(6, [4])

    def test_edge_list_text_roundtrip(self):
        g = build_from_edge_list(4, [(0, 1), (1, 3)])
        text = format_edge_list_text(g)
        h = parse_edge_list_text(text)
        assert sorted(h.edges()) == sorted(g.edges())
        with pytest.raises(ValueError):
            parse_edge_list_text("3\n0 1\n")
        with pytest.raises(ValueError):
            parse_edge_list_text("3 2\n0 1\n")


class TestIndependentSets:
    def test_known_values(self):
        assert independence_number(build_ring(6)) == 3
        assert independence_number(build_ring(7)) == 3
        assert independence_number(build_clique(5)) == 1
        assert independence_number(build_star(6)) == 6
        assert independence_number(build_complete_bipartite(3, 4)) == 4

    def test_solver_matches_brute_force(self, rng):
        for n in (5, 6, 7, 8):
            for _ in range(4):
                g = random_connected_graph(rng, n)
                mis = maximum_independent_set(g)
                assert is_independent_set(g, mis)
                assert len(mis) == brute_mis_size(g)

    def test_cap_guard(self):
        with pytest.raises(ValueError):
            maximum_independent_set(build_ring(10), cap=8)

    def test_is_max_deg_checker(self):
        star = build_star(4)
        assert is_max_deg_independent_set(star, [0])
        assert not is_max_deg_independent_set(star, [1, 2])  # leaves dominated
        assert not is_max_deg_independent_set(star, [])
        ring = build_ring(6)
        # regular graph: every independent set dominates, singletons included
        assert is_max_deg_independent_set(ring, [0, 2, 4])
        assert is_max_deg_independent_set(ring, [0])
        assert not is_max_deg_independent_set(ring, [0, 1])

    def test_max_deg_solver_matches_brute_force(self, rng):
        cases = [build_ring(6), build_star(5), build_path(7),
                 build_complete_bipartite(2, 4)]
        for _ in range(6):
            cases.append(random_connected_graph(rng, 7))
        for g in cases:
            size, nodes = max_deg_independent_set(g)
            assert size == len(nodes)
            assert is_max_deg_independent_set(g, nodes)
            assert size == brute_max_deg_is(g)


class TestRegularHelpers:
    def test_regular_completion(self):
        g = regular_completion(7, 4)
        assert g.is_regular(4) and g.is_connected()
        h = regular_completion(6, 3)  # odd degree needs the antipodal offset
        assert h.is_regular(3) and h.is_connected()
        with pytest.raises(ValueError):
            regular_completion(5, 3)  # d*z odd
        with pytest.raises(ValueError):
            regular_completion(3, 3)

    def test_regular_minus_edge(self):
        g, a, b = regular_minus_edge(8, 3)
        assert not g.has_edge(a, b)
        assert g.degree(a) == 2 and g.degree(b) == 2
        others = [v for v in range(8) if v not in (a, b)]
        assert all(g.degree(v) == 3 for v in others)
        assert g.is_connected()

    def test_regular_embed(self):
        base = build_star(3)
        h = regular_embed(base, 3)
        assert h.is_regular(3) and h.is_connected()
        # original adjacency is untouched
        for u, v in base.edges():
            assert h.has_edge(u, v)
        assert not h.has_edge(1, 2)
        assert h.n > base.n
        with pytest.raises(ValueError):
            regular_embed(build_star(5), 3)
