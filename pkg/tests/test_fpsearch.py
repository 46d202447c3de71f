import math
import random

import numpy as np
import pytest

from ballsat import parse_dimacs
from ballsat.fliptree import marked_fraction
from ballsat.fpsearch import (
    apply_g,
    apply_schedule,
    chebyshev_t,
    make_schedule,
    marked_probability,
    prepare,
    run_search,
    sample_sequence,
    search_state,
    success_probability_exact,
)

from helpers import random_assignment, random_ksat

SINGLE = parse_dimacs("p cnf 3 1\n1 2 3 0\n")

# three unit clauses pin a block; three width-3 clauses couple it to the rest:
# from the all-zeros center exactly one flip word of length three succeeds
NARROW = parse_dimacs(
    "p cnf 6 6\n-4 0\n-5 0\n-6 0\n1 4 5 0\n2 5 6 0\n3 6 4 0\n"
)


class TestChebyshev:
    def test_integer_orders(self):
        for x in (-0.9, -0.3, 0.2, 0.8):
            assert chebyshev_t(3, x) == pytest.approx(4 * x**3 - 3 * x)
            assert chebyshev_t(0, x) == pytest.approx(1.0)
            assert chebyshev_t(1, x) == pytest.approx(x)

    def test_above_one_uses_cosh_branch(self):
        assert chebyshev_t(2, 1.5) == pytest.approx(2 * 1.5**2 - 1)

    def test_fractional_inverts_integer(self):
        for y in (1.5, 3.0, 10.0):
            for L in (3, 5, 11):
                assert chebyshev_t(L, chebyshev_t(1 / L, y)) == pytest.approx(y)


class TestSchedule:
    @pytest.mark.parametrize(
        "epsilon,lambda_min,expect",
        [(0.2, 1 / 9, 11), (0.5, 1.0, 3), (0.3, 1 / 81, 25)],
    )
    def test_length(self, epsilon, lambda_min, expect):
        s = make_schedule(epsilon, lambda_min)
        assert s.L == expect
        assert s.L % 2 == 1
        assert s.queries == s.L - 1
        assert s.l == (s.L - 1) // 2
        assert len(s.angles) == s.l

    def test_length_is_minimal_odd(self):
        s = make_schedule(0.2, 1 / 9)
        assert s.L >= math.log2(2 / 0.2) / math.sqrt(1 / 9)
        assert s.L - 2 < math.log2(2 / 0.2) / math.sqrt(1 / 9)

    def test_gamma_inverse(self):
        s = make_schedule(0.2, 1 / 9)
        assert s.gamma_inv == pytest.approx(
            math.cosh(math.acosh(1 / 0.2) / s.L)
        )

    def test_angle_ranges(self):
        s = make_schedule(0.1, 1 / 27)
        for alpha, beta in s.angles:
            assert 0.0 < alpha < 2 * math.pi
            assert -2 * math.pi < beta < 0.0

    def test_angle_reflection(self):
        for eps, lam in ((0.1, 1 / 27), (0.3, 1 / 81), (0.5, 1 / 9)):
            s = make_schedule(eps, lam)
            alphas = [a for a, _ in s.angles]
            betas = [b for _, b in s.angles]
            for j in range(s.l):
                assert alphas[j] == pytest.approx(-betas[s.l - 1 - j])

    def test_grover_limit(self):
        s = make_schedule(1 - 1e-14, 1 / 4)
        assert abs(s.angles[0][0] - math.pi) < 1e-6

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            make_schedule(0.0, 0.5)
        with pytest.raises(ValueError):
            make_schedule(0.1, 0.0)


class TestState:
    def test_prepare_uniform(self):
        state = prepare(SINGLE, (0, 0, 0), 1, 3)
        assert state.size == 3
        np.testing.assert_allclose(np.abs(state.amplitudes), 1 / math.sqrt(3))
        assert state.marked.all()  # every single flip satisfies the clause

    def test_prepare_marks_match_walk(self):
        rng = random.Random(2)
        f = random_ksat(5, 8, 3, rng)
        center = random_assignment(5, rng)
        state = prepare(f, center, 2, 3)
        frac, marked = marked_fraction(f, center, 2, 3)
        assert int(state.marked.sum()) == marked

    def test_apply_g_preserves_norm(self):
        state = prepare(NARROW, (0,) * 6, 3, 3)
        for alpha, beta in ((0.3, -1.2), (2.0, -0.1), (5.9, -5.9)):
            state = apply_g(state, alpha, beta)
            assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-12

    def test_schedule_boosts_unique_marked(self):
        state, _ = search_state(NARROW, (0,) * 6, 3, 3, epsilon=0.1)
        assert int(state.marked.sum()) == 1
        assert marked_probability(state) >= 1 - 0.1**2

    def test_trace_records_steps(self):
        trace = []
        schedule = make_schedule(0.3, 1 / 27)
        state = prepare(NARROW, (0,) * 6, 3, 3)
        apply_schedule(state, schedule, trace)
        assert [step for step, _ in trace] == list(range(1, schedule.l + 1))
        assert all(0.0 <= p <= 1.0 + 1e-12 for _, p in trace)


class TestSampling:
    def test_unique_marked_word_sampled(self):
        state, _ = search_state(NARROW, (0,) * 6, 3, 3, epsilon=0.1)
        rng = np.random.default_rng(0)
        hits = sum(
            sample_sequence(state, rng) == (1, 1, 1) for _ in range(300)
        )
        # per-draw hit probability >= 0.99
        assert hits >= 280

    def test_run_search_contract(self):
        candidate, success, queries = run_search(
            NARROW, (0,) * 6, 3, 3, epsilon=0.1, rng=7
        )
        schedule = make_schedule(0.1, 1 / 27)
        assert queries == schedule.L - 1
        assert success == 1
        assert candidate == (1, 1, 1, 0, 0, 0)


class TestExactProbability:
    def test_zero_fraction(self):
        assert success_probability_exact(0.0, 0.1) == 0.0

    def test_full_fraction(self):
        assert success_probability_exact(1.0, 0.1) == pytest.approx(1.0)

    def test_floor_on_small_grid(self):
        for eps in (0.05, 0.1, 0.3):
            lam_min = 1 / 27
            for i in range(1, 28):
                p = success_probability_exact(i * lam_min, eps, lam_min)
                assert p >= 1 - eps**2 - 1e-12

    def test_matches_closed_form(self):
        # 1 - eps^2 * T_L(gamma_inv * sqrt(1 - lam))^2 on the plateau
        eps, lam_min = 0.2, 1 / 9
        s = make_schedule(eps, lam_min)
        for lam in (1 / 9, 0.3, 0.7):
            expect = 1 - eps**2 * chebyshev_t(
                s.L, s.gamma_inv * math.sqrt(1 - lam)
            ) ** 2
            assert success_probability_exact(lam, eps, lam_min) == pytest.approx(
                expect, abs=1e-12
            )

    def test_agrees_with_full_simulation(self):
        rng = random.Random(13)
        for _ in range(10):
            f = random_ksat(6, 10, 3, rng)
            center = random_assignment(6, rng)
            radius = rng.randrange(1, 4)
            eps = rng.choice((0.1, 0.3))
            state, _ = search_state(f, center, radius, 3, epsilon=eps)
            lam, _ = marked_fraction(f, center, radius, 3)
            expect = success_probability_exact(lam, eps, 1 / 3**radius)
            assert marked_probability(state) == pytest.approx(expect, abs=1e-9)
