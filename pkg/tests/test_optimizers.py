"""Tests for the three baseline minimizers and their accounting."""

import numpy as np
import pytest

from gnbg.core import BudgetedEvaluator, Component, ProblemInstance
from gnbg.generators import gen_linearity
from gnbg.optimizers import OptimizerConfig, de, pattern_search, pso, run_optimizer


def _quadratic_1d(center=3.0):
    comp = Component(np.array([center]), 0.0, np.array([1.0]))
    return ProblemInstance(1, np.array([-100.0]), np.array([100.0]), (comp,))


class TestOptimizerConfig:
    def test_defaults(self):
        cfg = OptimizerConfig()
        assert cfg.c1 == cfg.c2 == 2.05
        assert cfg.chi == 0.729843788
        assert cfg.population == 100

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            OptimizerConfig(kind="annealing")


class TestPatternSearch:
    def test_1d_quadratic_recovers_center(self):
        ev = BudgetedEvaluator(_quadratic_1d(), 10_000)
        result = pattern_search(ev, OptimizerConfig(kind="ps", seed=0), threshold=0.0)
        assert abs(result.best_position[0] - 3.0) <= 1e-6

    def test_budget_one_returns_single_sample(self):
        ev = BudgetedEvaluator(_quadratic_1d(), 1)
        result = pattern_search(ev, OptimizerConfig(kind="ps", seed=0))
        assert ev.fe_used == 1
        assert result.best_value == result.best_error  # optimum value is 0
        assert not result.success

    def test_history_is_monotone(self):
        ev = BudgetedEvaluator(gen_linearity(1.0), 5_000)
        pattern_search(ev, OptimizerConfig(kind="ps", seed=1))
        errors = [e for _, e in ev.history]
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_stays_inside_box(self):
        ev = BudgetedEvaluator(_quadratic_1d(center=99.0), 2_000)
        result = pattern_search(ev, OptimizerConfig(kind="ps", seed=2))
        assert -100.0 <= result.best_position[0] <= 100.0

    def test_determinism(self):
        results = []
        for _ in range(2):
            ev = BudgetedEvaluator(gen_linearity(1.0), 3_000)
            results.append(pattern_search(ev, OptimizerConfig(kind="ps", seed=5)))
        assert results[0].best_value == results[1].best_value
        assert np.array_equal(results[0].best_position, results[1].best_position)
        assert results[0].fe_used == results[1].fe_used


class TestPso:
    def test_1d_quadratic_small_swarm(self):
        ev = BudgetedEvaluator(_quadratic_1d(), 1_000)
        result = pso(ev, OptimizerConfig(kind="pso", seed=0, population=3))
        assert result.best_error <= 1e-8

    def test_population_exceeding_budget_rejected(self):
        ev = BudgetedEvaluator(_quadratic_1d(), 50)
        with pytest.raises(ValueError):
            pso(ev, OptimizerConfig(kind="pso", seed=0, population=100))

    def test_init_consumes_population_evaluations(self):
        ev = BudgetedEvaluator(gen_linearity(1.0), 100)
        result = pso(ev, OptimizerConfig(kind="pso", seed=0, population=100))
        assert result.fe_used == 100

    def test_milestones_recorded(self):
        ev = BudgetedEvaluator(gen_linearity(1.0), 2_000)
        result = pso(
            ev, OptimizerConfig(kind="pso", seed=1), milestones=(500, 1_000, 2_000)
        )
        assert set(result.milestone_errors) == {500, 1_000, 2_000}
        ms = [result.milestone_errors[m] for m in (500, 1_000, 2_000)]
        assert ms[0] >= ms[1] >= ms[2]


class TestDe:
    def test_small_population_rejected(self):
        ev = BudgetedEvaluator(_quadratic_1d(), 100)
        with pytest.raises(ValueError):
            de(ev, OptimizerConfig(kind="de", seed=0, population=3))

    def test_1d_quadratic_converges(self):
        ev = BudgetedEvaluator(_quadratic_1d(), 5_000)
        result = de(ev, OptimizerConfig(kind="de", seed=0, population=20))
        assert result.best_error <= 1e-8
        assert result.success
        assert result.fe_to_success == ev.history[-1][0]

    def test_determinism(self):
        results = []
        for _ in range(2):
            ev = BudgetedEvaluator(gen_linearity(1.0), 2_000)
            results.append(de(ev, OptimizerConfig(kind="de", seed=3)))
        assert results[0].best_value == results[1].best_value
        assert np.array_equal(results[0].best_position, results[1].best_position)


class TestThresholdStop:
    def test_run_stops_at_threshold(self):
        ev = BudgetedEvaluator(gen_linearity(1.0), 100_000)
        result = pattern_search(
            ev, OptimizerConfig(kind="ps", seed=0), threshold=1e5
        )
        assert result.success
        assert result.fe_to_success == ev.fe_used
        assert ev.fe_used < 1_000

    def test_success_fields_consistent(self):
        ev = BudgetedEvaluator(gen_linearity(1.0), 500)
        result = pattern_search(ev, OptimizerConfig(kind="ps", seed=0))
        assert result.success == (result.fe_to_success is not None)


def test_dispatch_by_kind():
    ev = BudgetedEvaluator(_quadratic_1d(), 200)
    result = run_optimizer(ev, OptimizerConfig(kind="ps", seed=0))
    assert result.fe_used <= 200
    assert result.best_error <= 1e-8
