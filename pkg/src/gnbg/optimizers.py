"""Baseline derivative-free minimizers: pattern search, constriction-factor
PSO, and DE/rand/1/bin.

Every optimizer consumes exactly one tracked evaluation per candidate, keeps
all candidates inside the box by clamping, stops as soon as the best error
reaches the success threshold, and is bit-reproducible for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BudgetedEvaluator, BudgetExhaustedError

DEFAULT_THRESHOLD = 1e-8


@dataclass(frozen=True)
class OptimizerConfig:
    """Per-algorithm knobs; each optimizer reads only its own group."""

    kind: str = "ps"
    seed: int = 0
    population: int = 100
    # pattern search: initial mesh as a fraction of the box width, with the
    # expansion capped at that initial size
    initial_mesh_fraction: float = 0.1
    expand: float = 2.0
    contract: float = 0.5
    # PSO constriction model
    c1: float = 2.05
    c2: float = 2.05
    chi: float = 0.729843788
    # DE/rand/1/bin
    f_weight: float = 0.5
    cr: float = 0.9

    def __post_init__(self):
        if self.kind not in ("ps", "pso", "de"):
            raise ValueError(f"unknown optimizer kind {self.kind!r}")
        if self.population < 1:
            raise ValueError(f"population must be >= 1, got {self.population}")
        if not 0 < self.initial_mesh_fraction <= 1:
            raise ValueError("initial_mesh_fraction must be in (0, 1]")
        if not 0 < self.contract < 1 or self.expand < 1:
            raise ValueError("require 0 < contract < 1 and expand >= 1")


@dataclass(frozen=True)
class RunResult:
    """Outcome of one optimizer run on one budgeted evaluator."""

    best_value: float
    best_position: np.ndarray = field(repr=False)
    best_error: float
    fe_used: int
    milestone_errors: dict[int, float]
    fe_to_success: int | None
    success: bool


class _StopSearch(Exception):
    """Internal signal: budget exhausted or threshold reached."""


def _make_tracked(evaluator: BudgetedEvaluator, threshold: float):
    def tracked(x: np.ndarray) -> float:
        try:
            value = evaluator(x)
        except BudgetExhaustedError:
            raise _StopSearch from None
        if evaluator.best_error <= threshold:
            raise _StopSearch
        return value

    return tracked


def _finish(evaluator, threshold, milestones) -> RunResult:
    fe_to_success = None
    for fe, err in evaluator.history:
        if err <= threshold:
            fe_to_success = fe
            break
    return RunResult(
        best_value=evaluator.best_value,
        best_position=evaluator.best_position,
        best_error=evaluator.best_error,
        fe_used=evaluator.fe_used,
        milestone_errors={int(m): evaluator.error_at(m) for m in milestones},
        fe_to_success=fe_to_success,
        success=fe_to_success is not None,
    )


def _clamp(x, lower, upper):
    return np.clip(x, lower, upper)


def pattern_search(
    evaluator: BudgetedEvaluator,
    cfg: OptimizerConfig,
    threshold: float = DEFAULT_THRESHOLD,
    milestones: tuple[int, ...] = (),
) -> RunResult:
    """Coordinate-direction pattern search with an adaptive mesh.

    Polls the 2d directions +-e_i in a freshly randomized order each
    iteration, moves on the first improvement, contracts the mesh after a
    fully failed poll and re-expands it (capped at the initial size) after
    a success.
    """
    rng = np.random.default_rng(cfg.seed)
    lower, upper = evaluator.instance.bounds
    d = evaluator.instance.dim
    tracked = _make_tracked(evaluator, threshold)

    initial_mesh = cfg.initial_mesh_fraction * (upper - lower)
    mesh = initial_mesh.copy()
    try:
        x = rng.uniform(lower, upper)
        fx = tracked(x)
        while True:
            improved = False
            for k in rng.permutation(2 * d):
                i, sign = divmod(int(k), 2)
                step = mesh[i] if sign == 0 else -mesh[i]
                cand = x.copy()
                cand[i] += step
                cand = _clamp(cand, lower, upper)
                fc = tracked(cand)
                if fc < fx:
                    x, fx = cand, fc
                    improved = True
                    break
            if improved:
                mesh = np.minimum(mesh * cfg.expand, initial_mesh)
            else:
                mesh = mesh * cfg.contract
    except _StopSearch:
        pass
    return _finish(evaluator, threshold, milestones)


def pso(
    evaluator: BudgetedEvaluator,
    cfg: OptimizerConfig,
    threshold: float = DEFAULT_THRESHOLD,
    milestones: tuple[int, ...] = (),
) -> RunResult:
    """Constriction-factor PSO with a global-star neighborhood.

    v <- chi * (v + c1 r1 (pbest - x) + c2 r2 (gbest - x)), element-wise
    uniform r1, r2.  Uniform init in the box, zero initial velocity, no
    velocity clamp; positions are clamped to the box.
    """
    if cfg.population > evaluator.max_fe:
        raise ValueError(
            f"population {cfg.population} exceeds budget {evaluator.max_fe}"
        )
    rng = np.random.default_rng(cfg.seed)
    lower, upper = evaluator.instance.bounds
    d = evaluator.instance.dim
    n = cfg.population
    tracked = _make_tracked(evaluator, threshold)

    pos = rng.uniform(lower, upper, size=(n, d))
    vel = np.zeros((n, d))
    pbest = pos.copy()
    pbest_val = np.empty(n)
    try:
        for i in range(n):
            pbest_val[i] = tracked(pos[i])
        g = int(np.argmin(pbest_val))
        while True:
            for i in range(n):
                r1 = rng.uniform(size=d)
                r2 = rng.uniform(size=d)
                vel[i] = cfg.chi * (
                    vel[i]
                    + cfg.c1 * r1 * (pbest[i] - pos[i])
                    + cfg.c2 * r2 * (pbest[g] - pos[i])
                )
                pos[i] = _clamp(pos[i] + vel[i], lower, upper)
                value = tracked(pos[i])
                if value < pbest_val[i]:
                    pbest_val[i] = value
                    pbest[i] = pos[i].copy()
                    if value < pbest_val[g]:
                        g = i
    except _StopSearch:
        pass
    return _finish(evaluator, threshold, milestones)


def de(
    evaluator: BudgetedEvaluator,
    cfg: OptimizerConfig,
    threshold: float = DEFAULT_THRESHOLD,
    milestones: tuple[int, ...] = (),
) -> RunResult:
    """DE/rand/1/bin with synchronous generation update.

    Mutant = x_r1 + F (x_r2 - x_r3) with distinct donors excluding the
    target; binomial crossover at rate Cr with one forced coordinate;
    greedy one-to-one selection.
    """
    if cfg.population < 4:
        raise ValueError(f"population must be >= 4 for DE, got {cfg.population}")
    rng = np.random.default_rng(cfg.seed)
    lower, upper = evaluator.instance.bounds
    d = evaluator.instance.dim
    n = cfg.population
    tracked = _make_tracked(evaluator, threshold)

    pop = rng.uniform(lower, upper, size=(n, d))
    values = np.empty(n)
    try:
        for i in range(n):
            values[i] = tracked(pop[i])
        while True:
            trials = np.empty((n, d))
            for i in range(n):
                others = np.delete(np.arange(n), i)
                r1, r2, r3 = rng.choice(others, size=3, replace=False)
                mutant = pop[r1] + cfg.f_weight * (pop[r2] - pop[r3])
                cross = rng.uniform(size=d) < cfg.cr
                cross[int(rng.integers(d))] = True
                trials[i] = _clamp(np.where(cross, mutant, pop[i]), lower, upper)
            for i in range(n):
                value = tracked(trials[i])
                if value <= values[i]:
                    values[i] = value
                    pop[i] = trials[i]
    except _StopSearch:
        pass
    return _finish(evaluator, threshold, milestones)


OPTIMIZERS = {"ps": pattern_search, "pso": pso, "de": de}


def run_optimizer(
    evaluator: BudgetedEvaluator,
    cfg: OptimizerConfig,
    threshold: float = DEFAULT_THRESHOLD,
    milestones: tuple[int, ...] = (),
) -> RunResult:
    """Dispatch on cfg.kind."""
    return OPTIMIZERS[cfg.kind](evaluator, cfg, threshold, milestones)
