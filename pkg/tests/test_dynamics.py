"""Improving-response dynamics: policies, outcomes, traces."""

from fractions import Fraction

import numpy as np
import pytest

from jumpschelling.constructions import ring_irc
from jumpschelling.dynamics import (
    BestImprove,
    BudgetExhausted,
    Converged,
    CycleDetected,
    FirstImprove,
    Random,
    ScriptError,
    Scripted,
    assert_doi_monotone,
    default_max_steps,
    improving_jumps,
    run,
    verify_irc,
    write_trace_csv,
)
from jumpschelling.equilibrium import check_ne
from jumpschelling.graphs import build_path, build_ring
from jumpschelling.model import EMPTY, GameSpec, Peak, make_profile
from jumpschelling.welfare import doi

from conftest import improving_jumps_ref, landing_score, random_connected_graph


def small_spec(rng, n=8, red=3, blue=2, peak=Peak(1, 2)):
    return GameSpec(random_connected_graph(rng, n), red, blue, peak)


class TestImprovingJumps:
    def test_complete_and_ordered(self, rng):
        for _ in range(25):
            spec = small_spec(rng)
            colors = make_profile(8, [0, 1, 2], [3, 4])
            got = [(j.origin, j.target) for j in improving_jumps(spec, colors)]
            assert got == improving_jumps_ref(spec, colors)

    def test_scores_attached(self, rng):
        spec = small_spec(rng)
        colors = make_profile(8, [0, 1, 2], [3, 4])
        for j in improving_jumps(spec, colors):
            assert j.score_after > j.score_before
            assert j.score_after == landing_score(
                spec.peak, spec.graph, colors, j.origin, j.target)


class TestPolicies:
    def test_first_improve_is_lexicographic(self, rng):
        for _ in range(20):
            spec = small_spec(rng)
            colors = make_profile(8, [0, 1, 2], [3, 4])
            ref = improving_jumps_ref(spec, colors)
            jump = FirstImprove().choose(spec, colors, 0)
            if ref:
                assert (jump.origin, jump.target) == ref[0]
            else:
                assert jump is None

    def test_best_improve_takes_max_then_lex(self, rng):
        for _ in range(20):
            spec = small_spec(rng)
            colors = make_profile(8, [0, 1, 2], [3, 4])
            options = improving_jumps(spec, colors)
            jump = BestImprove().choose(spec, colors, 0)
            if not options:
                assert jump is None
                continue
            top = max(o.score_after for o in options)
            expect = [o for o in options if o.score_after == top][0]
            assert (jump.origin, jump.target) == (expect.origin, expect.target)

    def test_random_policy_reproducible(self, rng):
        spec = small_spec(rng)
        colors = make_profile(8, [0, 1, 2], [3, 4])
        a = run(spec, colors, Random(11))
        b = run(spec, colors, Random(11))
        assert type(a) is type(b)
        assert [(s, j.origin, j.target) for s, j, _ in a.trace.rows] == \
               [(s, j.origin, j.target) for s, j, _ in b.trace.rows]

    def test_random_choice_is_always_improving(self, rng):
        spec = small_spec(rng)
        colors = make_profile(8, [0, 1, 2], [3, 4])
        jump = Random(5).choose(spec, colors, 0)
        if jump is not None:
            assert jump.score_after > jump.score_before

    def test_scripted_errors(self):
        spec = GameSpec(build_path(4), 2, 1, Peak(1, 2))
        colors = make_profile(4, [0, 2], [1])
        with pytest.raises(ScriptError, match="step 0"):
            Scripted([(3, 0)]).choose(spec, colors, 0)  # empty origin
        with pytest.raises(ScriptError, match="occupied"):
            Scripted([(0, 2)]).choose(spec, colors, 0)
        # a non-improving but legal relocation is a script error too
        ok_shape = Scripted([(0, 3)])
        with pytest.raises(ScriptError, match="not improving"):
            ok_shape.choose(spec, colors, 0)

    def test_scripted_exhaustion_is_budget(self):
        c = ring_irc()
        out = run(c.spec, c.profiles["start"], Scripted(c.script[:2]))
        assert isinstance(out, BudgetExhausted)
        assert len(out.trace.rows) == 2


class TestRun:
    def test_ne_start_converges_immediately(self):
        spec = GameSpec(build_ring(6), 3, 2, Peak(1, 2))
        colors = make_profile(6, [0, 2, 4], [1, 3])
        assert check_ne(spec, colors).is_ne
        out = run(spec, colors, FirstImprove())
        assert isinstance(out, Converged)
        assert out.steps == 0
        assert list(out.final) == list(colors)

    def test_cycle_detection_on_scripted_loop(self):
        c = ring_irc()
        out = run(c.spec, c.profiles["start"], Scripted(c.script * 3))
        assert isinstance(out, CycleDetected)
        assert out.cycle_length == 4
        assert out.first_repeat_index <= 4

    def test_budget_exhaustion(self):
        c = ring_irc()
        out = run(c.spec, c.profiles["start"], FirstImprove(), max_steps=1)
        assert isinstance(out, BudgetExhausted)
        assert len(out.trace.rows) == 1

    def test_default_step_cap(self):
        spec = GameSpec(build_ring(6), 3, 2, Peak(1, 2))
        assert default_max_steps(spec) == 10 * 5 * 6

    def test_converged_final_is_ne(self, rng):
        for policy in (FirstImprove(), BestImprove(), Random(3)):
            spec = small_spec(rng)
            colors = make_profile(8, [0, 1, 2], [3, 4])
            out = run(spec, colors, policy)
            if isinstance(out, Converged):
                assert check_ne(spec, out.final).is_ne
                assert out.steps == len(out.trace.rows)

    def test_trace_doi_column(self, rng):
        spec = small_spec(rng)
        colors = make_profile(8, [0, 1, 2], [3, 4])
        out = run(spec, colors, FirstImprove())
        assert out.trace.initial_doi == doi(spec, colors)
        cur = colors
        for step, jump, doi_after in out.trace.rows:
            cur = cur.copy()
            cur[jump.target] = cur[jump.origin]
            cur[jump.origin] = EMPTY
            assert doi_after == doi(spec, cur)


class TestIrcHelpers:
    def test_verify_irc_accepts_the_ring_cycle(self):
        c = ring_irc()
        assert verify_irc(c.spec, c.profiles["start"], c.script)

    def test_verify_irc_rejects_non_cycle(self):
        c = ring_irc()
        assert not verify_irc(c.spec, c.profiles["start"], c.script[:3])

    def test_doi_monotone_checker(self):
        spec = GameSpec(build_ring(7), 4, 2, Peak(1, 2))
        colors = make_profile(7, [0, 1, 2, 3], [4, 5])
        out = run(spec, colors, FirstImprove())
        assert isinstance(out, Converged)
        assert assert_doi_monotone(spec, out.trace)


class TestTraceCsv:
    def test_golden_row(self, tmp_path):
        spec = GameSpec(build_path(4), 2, 1, Peak(1, 2))
        colors = make_profile(4, [0, 3], [1])
        out = run(spec, colors, FirstImprove())
        assert isinstance(out, Converged)
        path = tmp_path / "trace.csv"
        write_trace_csv(out.trace, str(path))
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "step,from,to,color,score_before,score_after,doi"
        for ln in lines[1:]:
            cells = ln.split(",")
            assert len(cells) == 7
            assert "/" in cells[4] or cells[4] == "0"
            assert "." not in cells[4] and "." not in cells[5]
