"""Component / problem-instance data model and the evaluation pipeline.

A problem is the pointwise minimum over one or more components; each
component is a (possibly rotated, scaled, modulated) basin

    sigma + ( T(R(x - m))^T H T(R(x - m)) )^lambda

with diagonal H > 0 and orthogonal R.  Evaluation is defined everywhere;
box bounds are a search-region contract enforced by optimizers, not here.
Evaluation cost is O(o * d^2): one matrix-vector product per component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rotation import ThetaSpec, orthogonality_error, rotation_from_theta
from .transform import TransformParams, apply_transform


class BudgetExhaustedError(RuntimeError):
    """Raised when a tracked evaluation is requested past the FE budget."""


@dataclass(frozen=True, eq=False)
class Component:
    """One basin: center, floor value, scaling, rotation, linearity, transform.

    ``theta`` holds the interaction angles when the rotation was built from
    plane angles (kept for serialization and separability classification);
    ``rotation`` may also be supplied directly as an orthogonal matrix.
    """

    center: np.ndarray
    sigma: float
    h_diag: np.ndarray
    lam: float = 1.0
    transform: TransformParams = field(default_factory=TransformParams)
    theta: ThetaSpec | None = None
    rotation: np.ndarray | None = None

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        h_diag = np.asarray(self.h_diag, dtype=float)
        d = center.shape[0]
        if center.ndim != 1 or d < 1:
            raise ValueError("center must be a nonempty 1-D vector")
        if h_diag.shape != (d,):
            raise ValueError(f"h_diag must have shape ({d},), got {h_diag.shape}")
        if np.any(h_diag <= 0) or not np.all(np.isfinite(h_diag)):
            raise ValueError("h_diag elements must be finite and strictly positive")
        if not self.lam > 0:
            raise ValueError(f"lambda must be > 0, got {self.lam}")
        rotation = self.rotation
        if rotation is None:
            if self.theta is not None and not self.theta.is_identity():
                if self.theta.dim != d:
                    raise ValueError("theta dimension does not match center")
                rotation = rotation_from_theta(self.theta)
        else:
            rotation = np.asarray(rotation, dtype=float)
            if rotation.shape != (d, d):
                raise ValueError(f"rotation must have shape ({d}, {d})")
            err = orthogonality_error(rotation)
            if err > 1e-10:
                raise ValueError(f"rotation is not orthogonal (error {err:.3e})")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "h_diag", h_diag)
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "rotation", rotation)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    @property
    def condition_number(self) -> float:
        return float(np.max(self.h_diag) / np.min(self.h_diag))

    @property
    def basin_linearity(self) -> str:
        if self.lam < 0.5:
            return "sub-linear"
        if self.lam == 0.5:
            return "linear"
        return "super-linear"

    @property
    def is_rotated(self) -> bool:
        return self.rotation is not None


def eval_component(comp: Component, x: np.ndarray) -> float:
    """Value of one component at ``x``; always >= the component's floor."""
    x = np.asarray(x, dtype=float)
    if x.shape != (comp.dim,):
        raise ValueError(f"x must have shape ({comp.dim},), got {x.shape}")
    z = x - comp.center
    if comp.rotation is not None:
        z = comp.rotation @ z
    t = apply_transform(z, comp.transform)
    q = float(np.dot(t * comp.h_diag, t))
    return comp.sigma + q ** comp.lam


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """A box-bounded minimization problem built from one or more components.

    The global optimum is known by construction: the center of the component
    with the smallest floor value (ties broken by lowest index).
    """

    dim: int
    lower: np.ndarray
    upper: np.ndarray
    components: tuple[Component, ...]
    provenance: dict | None = None

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.shape != (self.dim,) or upper.shape != (self.dim,):
            raise ValueError(f"bounds must have shape ({self.dim},)")
        if np.any(lower >= upper):
            raise ValueError("require lower < upper in every dimension")
        components = tuple(self.components)
        if not components:
            raise ValueError("at least one component required")
        for k, comp in enumerate(components):
            if comp.dim != self.dim:
                raise ValueError(f"component {k} has dim {comp.dim}, expected {self.dim}")
            if np.any(comp.center < lower) or np.any(comp.center > upper):
                raise ValueError(f"component {k} center lies outside the bounds")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "components", components)

    @property
    def optimum_index(self) -> int:
        sigmas = [c.sigma for c in self.components]
        return int(np.argmin(sigmas))  # argmin takes the lowest index on ties

    @property
    def optimum_value(self) -> float:
        return self.components[self.optimum_index].sigma

    @property
    def optimum_position(self) -> np.ndarray:
        return self.components[self.optimum_index].center

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.lower, self.upper


def evaluate(instance: ProblemInstance, x: np.ndarray) -> float:
    """Objective value: minimum over all components."""
    return min(eval_component(c, x) for c in instance.components)


def dominated_components(instance: ProblemInstance, tol: float | None = None) -> list[int]:
    """Indices of components whose center is covered by another basin.

    Component k is dominated when the full landscape dips below its floor at
    its own center: f(m_k) < sigma_k - tol.  Dominated components add cost
    but no landscape structure.
    """
    out = []
    for k, comp in enumerate(instance.components):
        t = tol if tol is not None else 1e-12 * max(1.0, abs(comp.sigma))
        if t < 0:
            raise ValueError("tol must be >= 0")
        if evaluate(instance, comp.center) < comp.sigma - t:
            out.append(k)
    return out


def _separability(instance: ProblemInstance) -> str:
    if len(instance.components) > 1:
        return "non-separable"
    comp = instance.components[0]
    if comp.lam != 1.0:
        # dimension-wise optimizable when unrotated, but not additively separable
        return "fully-separable" if not comp.is_rotated else "non-separable"
    if not comp.is_rotated:
        return "fully-separable"
    if comp.theta is None:
        return "non-separable"
    # connected components of the interaction graph decide partial separability
    parent = list(range(comp.dim))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p, q, _ in comp.theta.to_triples():
        parent[find(p - 1)] = find(q - 1)
    groups = len({find(i) for i in range(comp.dim)})
    return "non-separable" if groups == 1 else "partially-separable"


def classify(instance: ProblemInstance) -> dict:
    """Characteristics record derived from the instance description alone."""
    comps = instance.components
    per_component = [
        {
            "condition_number": c.condition_number,
            "basin_linearity": c.basin_linearity,
            "basin_local_optima": c.transform.active,
            "symmetric": c.transform.mu[0] == c.transform.mu[1]
            and len(set(c.transform.omega)) == 1,
            "rotated": c.is_rotated,
        }
        for c in comps
    ]
    single = len(comps) == 1
    local_optima = any(pc["basin_local_optima"] for pc in per_component)
    linearities = {pc["basin_linearity"] for pc in per_component}
    return {
        "dim": instance.dim,
        "num_components": len(comps),
        "modality": "unimodal" if single and not local_optima else "multimodal",
        "basin_local_optima": local_optima,
        "separability": _separability(instance),
        "symmetric": single and per_component[0]["symmetric"],
        "condition_number": max(pc["condition_number"] for pc in per_component),
        "basin_linearity": linearities.pop() if len(linearities) == 1 else "mixed",
        "optimum_value": instance.optimum_value,
        "components": per_component,
    }


class BudgetedEvaluator:
    """Budget-tracked evaluation with best-so-far accounting.

    Single-writer: one evaluator per optimizer run.  ``history`` records
    (fe, error) at every improvement, where error = best value found minus
    the instance's optimum value.
    """

    def __init__(self, instance: ProblemInstance, max_fe: int):
        if max_fe < 1:
            raise ValueError(f"max_fe must be >= 1, got {max_fe}")
        self.instance = instance
        self.max_fe = int(max_fe)
        self.fe_used = 0
        self.best_value = np.inf
        self.best_position: np.ndarray | None = None
        self.history: list[tuple[int, float]] = []

    @property
    def best_error(self) -> float:
        return self.best_value - self.instance.optimum_value

    def __call__(self, x: np.ndarray) -> float:
        if self.fe_used >= self.max_fe:
            raise BudgetExhaustedError(
                f"evaluation budget of {self.max_fe} exhausted"
            )
        self.fe_used += 1
        value = evaluate(self.instance, x)
        if value < self.best_value:
            self.best_value = value
            self.best_position = np.array(x, dtype=float)
            self.history.append((self.fe_used, self.best_error))
        return value

    def error_at(self, fe: int) -> float:
        """Best-so-far error after ``fe`` evaluations (staircase lookup)."""
        err = np.inf
        for used, e in self.history:
            if used > fe:
                break
            err = e
        return err


def tracked_evaluate(evaluator: BudgetedEvaluator, x: np.ndarray) -> float:
    return evaluator(x)
