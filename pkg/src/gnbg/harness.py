"""Experiment protocol: repeated seeded runs, milestone snapshots, success
accounting, and aggregation into table-shaped reports.

Runs are embarrassingly parallel; each owns its evaluator and RNG, and the
aggregation order is fixed by run index so reports are deterministic no
matter how many workers execute them.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .core import BudgetedEvaluator, ProblemInstance
from .optimizers import OptimizerConfig, RunResult, run_optimizer

DEFAULT_RUNS = 31
DEFAULT_BUDGET = 500_000
DEFAULT_MILESTONES = (100_000, 250_000, 500_000)
DEFAULT_THRESHOLD = 1e-8


@dataclass(frozen=True)
class ExperimentSpec:
    """One aggregated experiment: an instance, an optimizer, and a protocol."""

    instance: ProblemInstance
    optimizer: OptimizerConfig
    runs: int = DEFAULT_RUNS
    budget: int = DEFAULT_BUDGET
    milestones: tuple[int, ...] = DEFAULT_MILESTONES
    threshold: float = DEFAULT_THRESHOLD
    base_seed: int = 0
    knob: float | str | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        ms = tuple(int(m) for m in self.milestones)
        if any(m > self.budget for m in ms):
            raise ValueError("milestones must not exceed the budget")
        if any(b <= a for a, b in zip(ms, ms[1:])):
            raise ValueError("milestones must be strictly increasing")
        object.__setattr__(self, "milestones", ms)


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregate over all runs of one ExperimentSpec."""

    knob: float | str | None
    runs: int
    milestones: tuple[int, ...]
    mean_errors: dict[int, float]
    std_errors: dict[int, float]
    mean_fe_success: float | None
    success_rate: float
    run_results: tuple[RunResult, ...] = field(repr=False)


def _one_run(spec: ExperimentSpec, run_index: int) -> RunResult:
    evaluator = BudgetedEvaluator(spec.instance, spec.budget)
    cfg = replace(spec.optimizer, seed=spec.base_seed + run_index)
    return run_optimizer(evaluator, cfg, spec.threshold, spec.milestones)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentReport:
    """Execute all runs (seeds base_seed + i) and aggregate.

    Error is best value found minus the known optimum value.  Milestone
    statistics use the sample (n-1) standard deviation; mean FE-to-success
    averages successful runs only and is None when none succeed.
    """
    if workers > 1 and spec.runs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one_run, [spec] * spec.runs, range(spec.runs)))
    else:
        results = [_one_run(spec, i) for i in range(spec.runs)]
    return aggregate(spec, tuple(results))


def aggregate(spec: ExperimentSpec, results: tuple[RunResult, ...]) -> ExperimentReport:
    mean_errors, std_errors = {}, {}
    for m in spec.milestones:
        errs = np.array([r.milestone_errors[m] for r in results])
        mean_errors[m] = float(np.mean(errs))
        std_errors[m] = float(np.std(errs, ddof=1)) if len(errs) > 1 else 0.0
    fes = [r.fe_to_success for r in results if r.success]
    return ExperimentReport(
        knob=spec.knob,
        runs=spec.runs,
        milestones=spec.milestones,
        mean_errors=mean_errors,
        std_errors=std_errors,
        mean_fe_success=float(np.mean(fes)) if fes else None,
        success_rate=100.0 * len(fes) / len(results),
        run_results=results,
    )


def sweep(
    template: ExperimentSpec,
    knob_values,
    make_instance,
    workers: int = 1,
) -> list[ExperimentReport]:
    """One report per knob value; ``make_instance(value)`` builds the
    instance for each, everything else taken from the template."""
    reports = []
    for value in knob_values:
        spec = replace(template, instance=make_instance(value), knob=value)
        reports.append(run_experiment(spec, workers=workers))
    return reports
