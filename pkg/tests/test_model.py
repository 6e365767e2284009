"""Peak, score, curves, and placement primitives."""

from fractions import Fraction

import numpy as np
import pytest

from jumpschelling.graphs import build_path, build_ring, Graph
from jumpschelling.model import (
    BLUE,
    EMPTY,
    GameSpec,
    LINEAR,
    Peak,
    RED,
    agent_score,
    agent_utility,
    apply_jump,
    fraction_at,
    improving_jump,
    is_segregated,
    landing_fraction,
    linear_curve,
    make_profile,
    profile_nodes,
    score,
    score_fraction,
    square_curve,
    utility,
    validate_profile,
)

from conftest import closed_counts, node_score, random_connected_graph, score_ref


class TestPeak:
    def test_reduces_to_lowest_terms(self):
        p = Peak(2, 4)
        assert (p.num, p.den) == (1, 2)
        assert Peak(6, 9) == Peak(2, 3)

    def test_value_and_str(self):
        p = Peak(2, 5)
        assert p.value == Fraction(2, 5)
        assert str(p) == "2/5"

    @pytest.mark.parametrize("num,den", [(1, 1), (0, 2), (3, 2), (-1, 2), (1, 0), (1, -2)])
    def test_rejects_outside_open_interval(self, num, den):
        with pytest.raises(ValueError):
            Peak(num, den)

    def test_parse(self):
        assert Peak.parse("1/2") == Peak(1, 2)
        assert Peak.parse(" 3/9 ") == Peak(1, 3)
        with pytest.raises(ValueError):
            Peak.parse("0.5")
        with pytest.raises(ValueError):
            Peak.parse("1/1")
        with pytest.raises(ValueError):
            Peak.parse("a/b")


class TestScore:
    def test_left_branch_keeps_fraction(self):
        assert score(Peak(1, 2), 1, 3) == Fraction(1, 3)
        assert score(Peak(2, 5), 1, 4) == Fraction(1, 4)

    def test_right_branch_reflects(self):
        # f = 1/2 above peak 1/3 maps to 1*(2-1)/((3-1)*2) = 1/4
        assert score(Peak(1, 3), 1, 2) == Fraction(1, 4)
        # symmetric curve at peak 1/2: f = 2/3 mirrors to 1/3
        assert score(Peak(1, 2), 2, 3) == Fraction(1, 3)

    def test_peak_value_is_maximum(self):
        p = Peak(2, 5)
        assert score(p, 2, 5) == p.value
        for same in range(1, 8):
            for occ in range(same, 8):
                s = score(p, same, occ)
                assert s <= p.value
                if Fraction(same, occ) != p.value:
                    assert s < p.value

    def test_segregated_scores_zero(self):
        assert score(Peak(1, 2), 4, 4) == 0
        assert score(Peak(7, 9), 1, 1) == 0

    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            score(Peak(1, 2), 0, 3)
        with pytest.raises(ValueError):
            score(Peak(1, 2), 4, 3)

    def test_matches_reference_formula(self):
        for peak in (Peak(1, 2), Peak(1, 3), Peak(2, 5), Peak(7, 9)):
            for same in range(1, 11):
                for occ in range(same, 11):
                    assert score(peak, same, occ) == score_ref(peak, same, occ)

    def test_score_fraction(self):
        assert score_fraction(Peak(1, 3), Fraction(1, 2)) == Fraction(1, 4)
        assert score_fraction(Peak(1, 3), Fraction(2, 3)) == Fraction(1, 6)


class TestUtility:
    def test_linear_peaks_at_one(self):
        assert utility(LINEAR, Peak(1, 2), 1, 2) == 1
        assert utility(LINEAR, Peak(2, 5), 2, 5) == 1

    def test_linear_values(self):
        assert utility(LINEAR, Peak(1, 3), 1, 2) == Fraction(3, 4)
        assert utility(LINEAR, Peak(1, 2), 1, 4) == Fraction(1, 2)

    def test_square_values(self):
        sq = square_curve()
        assert utility(sq, Peak(1, 3), 1, 2) == Fraction(9, 16)
        assert utility(sq, Peak(1, 2), 1, 4) == Fraction(1, 4)

    def test_order_isomorphic_to_score(self, rng):
        curves = (linear_curve(), square_curve())
        peaks = (Peak(1, 2), Peak(2, 7))
        for _ in range(500):
            peak = peaks[rng.randrange(2)]
            occ1 = rng.randrange(1, 12)
            occ2 = rng.randrange(1, 12)
            same1 = rng.randrange(1, occ1 + 1)
            same2 = rng.randrange(1, occ2 + 1)
            s1 = score(peak, same1, occ1)
            s2 = score(peak, same2, occ2)
            for curve in curves:
                u1 = utility(curve, peak, same1, occ1)
                u2 = utility(curve, peak, same2, occ2)
                assert (u1 < u2) == (s1 < s2)
                assert (u1 == u2) == (s1 == s2)


class TestPlacements:
    def test_make_profile(self):
        colors = make_profile(5, [0, 2], [4])
        assert list(colors) == [RED, EMPTY, RED, EMPTY, BLUE]
        assert profile_nodes(colors, RED) == [0, 2]
        assert profile_nodes(colors, BLUE) == [4]

    def test_make_profile_rejects_bad_nodes(self):
        with pytest.raises(ValueError):
            make_profile(3, [0, 3], [])
        with pytest.raises(ValueError):
            make_profile(3, [0, 0], [1])
        with pytest.raises(ValueError):
            make_profile(3, [0], [0])

    def test_validate_profile(self):
        spec = GameSpec(build_ring(5), 2, 1, Peak(1, 2))
        validate_profile(spec, make_profile(5, [0, 1], [3]))
        with pytest.raises(ValueError):
            validate_profile(spec, make_profile(5, [0], [3]))
        with pytest.raises(ValueError):
            validate_profile(spec, make_profile(4, [0, 1], [3]))

    def test_spec_invariants(self):
        g = build_ring(5)
        with pytest.raises(ValueError):
            GameSpec(g, 0, 1, Peak(1, 2))
        with pytest.raises(ValueError):
            GameSpec(g, 1, 2, Peak(1, 2))
        with pytest.raises(ValueError):
            GameSpec(g, 3, 2, Peak(1, 2))  # no empty node left
        disconnected = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError):
            GameSpec(disconnected, 2, 1, Peak(1, 2))

    def test_spec_properties(self):
        spec = GameSpec(build_ring(6), 3, 2, Peak(1, 2))
        assert (spec.n, spec.agents, spec.empty) == (6, 5, 1)
        assert not spec.balanced
        assert GameSpec(build_ring(6), 2, 2, Peak(1, 2)).balanced


class TestNeighborhoods:
    def test_fraction_at_matches_recount(self, rng):
        for _ in range(20):
            g = random_connected_graph(rng, 8)
            colors = make_profile(8, [0, 1, 2], [5, 6])
            for v in (0, 1, 2, 5, 6):
                assert fraction_at(g, colors, v) == closed_counts(g, colors, v)

    def test_fraction_at_rejects_empty(self):
        g = build_path(3)
        colors = make_profile(3, [0], [1])
        with pytest.raises(ValueError):
            fraction_at(g, colors, 2)

    def test_landing_excludes_vacated_origin(self):
        g = build_path(3)
        colors = make_profile(3, [0, 1], [])
        # agent on 1 jumps to 2: its old node no longer counts
        assert landing_fraction(g, colors, 1, 2) == (1, 1)
        # agent on 0 jumps to 2: node 1 stays occupied
        assert landing_fraction(g, colors, 0, 2) == (2, 2)

    def test_landing_rejects_bad_endpoints(self):
        g = build_path(3)
        colors = make_profile(3, [0, 1], [])
        with pytest.raises(ValueError):
            landing_fraction(g, colors, 2, 0)
        with pytest.raises(ValueError):
            landing_fraction(g, colors, 0, 1)

    def test_is_segregated(self):
        g = build_path(4)
        colors = make_profile(4, [0, 1], [3])
        assert is_segregated(g, colors, 0)
        assert is_segregated(g, colors, 3)
        assert not is_segregated(g, make_profile(4, [0, 2], [1]), 1)

    def test_agent_score_and_utility(self):
        g = build_path(4)
        colors = make_profile(4, [0, 2], [1])
        peak = Peak(1, 2)
        assert agent_score(peak, g, colors, 1) == score(peak, 1, 3)
        assert agent_utility(LINEAR, peak, g, colors, 1) == Fraction(2, 3)


class TestJumps:
    def test_apply_jump(self):
        colors = make_profile(4, [0], [1])
        out = apply_jump(colors, 0, 3)
        assert list(out) == [EMPTY, BLUE, EMPTY, RED]
        assert list(colors) == [RED, BLUE, EMPTY, EMPTY]  # input untouched

    def test_apply_jump_rejects(self):
        colors = make_profile(4, [0], [1])
        with pytest.raises(ValueError):
            apply_jump(colors, 2, 3)
        with pytest.raises(ValueError):
            apply_jump(colors, 0, 1)

    def test_improving_jump_matches_oracle(self, rng):
        peak = Peak(1, 2)
        for _ in range(30):
            g = random_connected_graph(rng, 7)
            colors = make_profile(7, [0, 1, 2], [3, 4])
            before = node_score(peak, g, colors, 1)
            for w in (5, 6):
                got = improving_jump(peak, g, colors, 1, w)
                same, occ = landing_fraction(g, colors, 1, w)
                assert got == (score(peak, same, occ) > before)
