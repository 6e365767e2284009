"""Stability checks, exhaustive search, and the guaranteed constructors."""

import numpy as np
import pytest

from jumpschelling._core import BudgetExceeded
from jumpschelling.equilibrium import (
    ContractViolation,
    check_ne,
    construct_ne_bipartite,
    construct_ne_independent_set,
    construct_ne_leaves,
    construct_ne_max_deg_is,
    construct_ne_regular_e1,
    enumerate_profiles,
    find_all_ne,
)
from jumpschelling.graphs import (
    Graph,
    build_complete_bipartite,
    build_path,
    build_ring,
    build_star,
    regular_completion,
)
from jumpschelling.model import BLUE, RED, GameSpec, Peak, make_profile

from conftest import (
    all_profiles_ref,
    improving_jumps_ref,
    is_ne_ref,
    landing_score,
    node_score,
    random_connected_graph,
)


class TestCheckNe:
    def test_matches_oracle(self, rng):
        seen_stable = seen_unstable = 0
        for _ in range(40):
            spec = GameSpec(random_connected_graph(rng, 7), 3, 2, Peak(1, 2))
            colors = make_profile(7, [0, 1, 2], [3, 4])
            report = check_ne(spec, colors)
            assert report.is_ne == is_ne_ref(spec, colors)
            assert bool(report) == report.is_ne
            if report.is_ne:
                seen_stable += 1
            else:
                seen_unstable += 1
        assert seen_unstable  # the sample must exercise the witness path

    def test_witness_is_first_improving_jump(self, rng):
        for _ in range(30):
            spec = GameSpec(random_connected_graph(rng, 7), 3, 2, Peak(1, 3))
            colors = make_profile(7, [0, 1, 2], [3, 4])
            report = check_ne(spec, colors)
            ref = improving_jumps_ref(spec, colors)
            if not ref:
                assert report.is_ne
                continue
            w = report.witness
            assert (w.origin, w.target) == ref[0]
            assert w.score_before == node_score(
                spec.peak, spec.graph, colors, w.origin)
            assert w.score_after == landing_score(
                spec.peak, spec.graph, colors, w.origin, w.target)
            assert w.score_after > w.score_before


class TestEnumeration:
    def test_profile_count_and_distinctness(self):
        spec = GameSpec(build_ring(6), 2, 2, Peak(1, 2))
        seen = set()
        for colors in enumerate_profiles(spec):
            assert int((colors == RED).sum()) == 2
            assert int((colors == BLUE).sum()) == 2
            seen.add(colors.tobytes())
        assert len(seen) == 15 * 6  # C(6,2) * C(4,2)

    def test_matches_reference_order(self):
        spec = GameSpec(build_path(5), 2, 1, Peak(1, 2))
        got = [c.tobytes() for c in enumerate_profiles(spec)]
        want = [c.astype(np.uint8).tobytes() for c in all_profiles_ref(spec)]
        assert got == want

    def test_budget_guard(self):
        spec = GameSpec(build_ring(12), 5, 4, Peak(1, 2))
        with pytest.raises(BudgetExceeded):
            list(enumerate_profiles(spec, budget=10))


class TestFindAllNe:
    def test_matches_oracle(self, rng):
        for _ in range(6):
            spec = GameSpec(random_connected_graph(rng, 7), 3, 2, Peak(1, 2))
            found = {c.tobytes() for c in find_all_ne(spec)}
            want = {c.astype(np.uint8).tobytes()
                    for c in all_profiles_ref(spec) if is_ne_ref(spec, c)}
            assert found == want

    def test_ring5_two_one_has_none(self):
        spec = GameSpec(build_ring(5), 2, 1, Peak(1, 2))
        assert find_all_ne(spec) == []

    def test_ring6_count(self):
        spec = GameSpec(build_ring(6), 3, 2, Peak(1, 2))
        found = find_all_ne(spec)
        assert len(found) == 30
        for colors in found:
            assert check_ne(spec, colors).is_ne


class TestIndependentSetConstructor:
    def test_star_instance(self):
        spec = GameSpec(build_star(5), 3, 2, Peak(1, 2))
        colors = construct_ne_independent_set(spec, [1, 2, 3])
        assert check_ne(spec, colors).is_ne
        assert sorted(np.flatnonzero(colors == BLUE)) == [1, 2]
        assert colors[3] == 0

    def test_prefers_high_score_landings_for_blues(self):
        # peak 1/3: an isolated degree-2 seat scores 1/3, a leaf only 1/4,
        # so the single blue must take node 1 and leave the leaves empty
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (2, 4), (0, 5)])
        spec = GameSpec(g, 3, 1, Peak(1, 3))
        colors = construct_ne_independent_set(spec, [1, 3, 4])
        assert check_ne(spec, colors).is_ne
        assert colors[1] == BLUE
        assert colors[3] == 0 and colors[4] == 0

    def test_rejects_bad_sets(self):
        spec = GameSpec(build_star(5), 3, 2, Peak(1, 2))
        with pytest.raises(ValueError):
            construct_ne_independent_set(spec, [0, 1, 2])  # not independent
        with pytest.raises(ValueError):
            construct_ne_independent_set(spec, [1, 2])  # wrong size
        with pytest.raises(ValueError):
            construct_ne_independent_set(spec, [1, 1, 2])


class TestMaxDegConstructor:
    def test_ring_instance(self):
        spec = GameSpec(build_ring(8), 5, 1, Peak(1, 2))
        colors = construct_ne_max_deg_is(spec)
        assert check_ne(spec, colors).is_ne
        assert int((colors == RED).sum()) == 5
        assert int((colors == BLUE).sum()) == 1

    def test_needs_high_peak(self):
        spec = GameSpec(build_ring(8), 5, 1, Peak(1, 3))
        with pytest.raises(ValueError):
            construct_ne_max_deg_is(spec)

    def test_needs_surplus_reds(self):
        spec = GameSpec(build_ring(4), 2, 1, Peak(1, 2))
        with pytest.raises(ValueError):
            construct_ne_max_deg_is(spec)


class TestLeafConstructor:
    def test_star_instance(self):
        spec = GameSpec(build_star(5), 3, 2, Peak(1, 2))
        colors = construct_ne_leaves(spec)
        assert check_ne(spec, colors).is_ne
        # every blue sits on a leaf whose support is red
        for v in np.flatnonzero(colors == BLUE):
            assert spec.graph.degree(int(v)) == 1
            assert colors[int(spec.graph.neighbors(int(v))[0])] == RED

    def test_needs_enough_leaves(self):
        spec = GameSpec(build_path(6), 3, 2, Peak(1, 2))
        # a path has only two degree-1 nodes, so blue = 2 works, blue = 3 not
        colors = construct_ne_leaves(GameSpec(build_path(7), 3, 2, Peak(1, 2)))
        assert check_ne(GameSpec(build_path(7), 3, 2, Peak(1, 2)), colors).is_ne
        with pytest.raises(ValueError):
            construct_ne_leaves(GameSpec(build_path(9), 3, 3, Peak(1, 2)))

    def test_needs_high_peak(self):
        with pytest.raises(ValueError):
            construct_ne_leaves(GameSpec(build_star(5), 3, 2, Peak(2, 5)))


class TestRegularE1Constructor:
    def test_ring_instance(self):
        spec = GameSpec(build_ring(7), 4, 2, Peak(1, 2))
        colors = construct_ne_regular_e1(spec)
        assert check_ne(spec, colors).is_ne

    def test_higher_degree_instance(self):
        g = regular_completion(9, 4)
        spec = GameSpec(g, 6, 2, Peak(1, 2))
        colors = construct_ne_regular_e1(spec)
        assert check_ne(spec, colors).is_ne

    def test_preconditions(self):
        with pytest.raises(ValueError):
            construct_ne_regular_e1(GameSpec(build_star(4), 3, 1, Peak(1, 2)))
        with pytest.raises(ValueError):
            construct_ne_regular_e1(GameSpec(build_ring(8), 4, 2, Peak(1, 2)))
        with pytest.raises(ValueError):
            construct_ne_regular_e1(GameSpec(build_ring(3), 1, 1, Peak(1, 2)))


class TestBipartiteConstructor:
    def test_complete_bipartite_instance(self):
        spec = GameSpec(build_complete_bipartite(3, 4), 3, 2, Peak(1, 2))
        colors = construct_ne_bipartite(spec)
        assert check_ne(spec, colors).is_ne

    def test_even_ring(self):
        spec = GameSpec(build_ring(8), 4, 2, Peak(1, 2))
        colors = construct_ne_bipartite(spec)
        assert check_ne(spec, colors).is_ne

    def test_rejects_odd_cycle(self):
        with pytest.raises(ValueError):
            construct_ne_bipartite(GameSpec(build_ring(7), 4, 2, Peak(1, 2)))

    def test_rejects_small_side(self):
        spec = GameSpec(build_complete_bipartite(3, 3), 2, 1, Peak(1, 2))
        with pytest.raises(ValueError):
            construct_ne_bipartite(spec)


def test_contract_violation_is_runtime_error():
    assert issubclass(ContractViolation, RuntimeError)
