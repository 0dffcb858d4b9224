"""Scenario builders for isolated-challenge studies and the 24-instance suite.

All randomness flows through named sub-streams derived from (seed, labels),
so adding a knob to one parameter group never perturbs the draws of another,
and a fixed seed reproduces an instance bit for bit.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .core import Component, ProblemInstance
from .rotation import ThetaSpec, full_theta, random_theta
from .transform import TransformParams

DEFAULT_DIM = 30
DEFAULT_BOUNDS = (-100.0, 100.0)
SUITE_SIZE = 24
ANGLE_RANGE = (-np.pi, np.pi)


@dataclass(frozen=True)
class ScenarioConfig:
    dim: int = DEFAULT_DIM
    bounds: tuple[float, float] = DEFAULT_BOUNDS
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        lo, hi = self.bounds
        if not lo < hi:
            raise ValueError(f"bounds must satisfy lo < hi, got {self.bounds}")


def _stream(seed: int, *labels) -> np.random.Generator:
    """Independent generator keyed by seed plus a label path."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    entropy += [zlib.crc32(str(label).encode()) for label in labels]
    return np.random.default_rng(entropy)


def _box(cfg: ScenarioConfig) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = cfg.bounds
    return np.full(cfg.dim, lo), np.full(cfg.dim, hi)


def _instance(cfg, components, generator, **knobs) -> ProblemInstance:
    lower, upper = _box(cfg)
    provenance = {"generator": generator, "knobs": knobs, "seed": int(cfg.seed)}
    return ProblemInstance(cfg.dim, lower, upper, tuple(components), provenance)


def gen_linearity(lam: float, cfg: ScenarioConfig = ScenarioConfig()) -> ProblemInstance:
    """Single centered basin with the given linearity exponent; everything
    else neutral (no scaling, rotation, or local optima)."""
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    comp = Component(
        center=np.zeros(cfg.dim), sigma=0.0, h_diag=np.ones(cfg.dim), lam=lam
    )
    return _instance(cfg, [comp], "linearity", lam=lam)


def gen_conditioning(
    cond: float,
    alpha_beta: tuple[float, float] = (0.4, 0.4),
    cfg: ScenarioConfig = ScenarioConfig(),
) -> ProblemInstance:
    """Single quadratic basin whose diagonal scaling realizes the requested
    condition number exactly.

    Two randomly chosen diagonal positions get the extreme values 1 and
    ``cond``; the rest are Beta(alpha, beta) draws stretched over [1, cond]
    (small alpha = beta pushes mass toward the endpoints).
    """
    if cond < 1:
        raise ValueError(f"condition number must be >= 1, got {cond}")
    alpha, beta = alpha_beta
    rng = _stream(cfg.seed, "conditioning", "h")
    a, b = 1.0, float(cond)
    h = a + (b - a) * rng.beta(alpha, beta, size=cfg.dim)
    extremes = rng.permutation(cfg.dim)[:2]
    h[extremes[0]] = a
    h[extremes[1] if cond > 1 else extremes[0]] = b
    comp = Component(center=np.zeros(cfg.dim), sigma=0.0, h_diag=h, lam=1.0)
    return _instance(cfg, [comp], "conditioning", cond=cond, alpha=alpha, beta=beta)


def gen_interaction(
    p_prob: float | None = None,
    fixed_angle: float | None = None,
    cfg: ScenarioConfig = ScenarioConfig(),
) -> ProblemInstance:
    """Single moderately conditioned basin with a configurable interaction
    structure: random pairs with probability ``p_prob``, or every pair set
    to ``fixed_angle``."""
    if (p_prob is None) == (fixed_angle is None):
        raise ValueError("exactly one of p_prob / fixed_angle must be given")
    h = _stream(cfg.seed, "interaction", "h").uniform(1.0, 100.0, size=cfg.dim)
    if fixed_angle is not None:
        theta = full_theta(cfg.dim, fixed_angle)
        knobs = {"fixed_angle": fixed_angle}
    else:
        theta = random_theta(
            cfg.dim, p_prob, ANGLE_RANGE, _stream(cfg.seed, "interaction", "theta")
        )
        knobs = {"p_prob": p_prob}
    comp = Component(
        center=np.zeros(cfg.dim), sigma=0.0, h_diag=h, lam=1.0, theta=theta
    )
    return _instance(cfg, [comp], "interaction", **knobs)


def gen_multimodal(
    mu: float, omega: float, cfg: ScenarioConfig = ScenarioConfig()
) -> ProblemInstance:
    """Single symmetric multimodal basin: equal amplitudes and one shared
    frequency, no scaling or rotation."""
    if mu < 0 or omega < 0:
        raise ValueError("mu and omega must be >= 0")
    comp = Component(
        center=np.zeros(cfg.dim),
        sigma=0.0,
        h_diag=np.ones(cfg.dim),
        lam=1.0,
        transform=TransformParams((mu, mu), (omega, omega, omega, omega)),
    )
    return _instance(cfg, [comp], "multimodal", mu=mu, omega=omega)


def gen_multicomponent(
    o: int,
    cfg: ScenarioConfig = ScenarioConfig(),
    sigma_range: tuple[float, float] = (0.0, 10.0),
    h_range: tuple[float, float] = (0.001, 0.1),
    center_range: tuple[float, float] | None = None,
) -> ProblemInstance:
    """``o`` well-conditioned homogeneous quadratic bumps of varying widths.

    Each component gets a single uniform value on its whole diagonal, a
    random center, and a random floor value drawn from ``sigma_range``.
    """
    if o < 1:
        raise ValueError(f"number of components must be >= 1, got {o}")
    lo, hi = center_range if center_range is not None else cfg.bounds
    centers = _stream(cfg.seed, "multicomponent", "centers").uniform(
        lo, hi, size=(o, cfg.dim)
    )
    sigmas = _stream(cfg.seed, "multicomponent", "sigmas").uniform(*sigma_range, size=o)
    widths = _stream(cfg.seed, "multicomponent", "h").uniform(*h_range, size=o)
    components = [
        Component(
            center=centers[k],
            sigma=sigmas[k],
            h_diag=np.full(cfg.dim, widths[k]),
            lam=1.0,
        )
        for k in range(o)
    ]
    return _instance(
        cfg, components, "multicomponent", o=o, sigma_range=sigma_range, h_range=h_range
    )


# --- 24-instance suite -------------------------------------------------------

def _permuted_linspace(rng, lo, hi, dim):
    return rng.permutation(np.linspace(lo, hi, dim))


def _chain_theta(dim, rng) -> ThetaSpec:
    triples = [(i, i + 1, rng.uniform(*ANGLE_RANGE)) for i in range(1, dim)]
    return ThetaSpec.from_triples(dim, triples)


def _grouped_theta(dim, group_angles, rng) -> ThetaSpec:
    """Partition variables into equal random groups, fully connect each
    group internally with its own fixed angle."""
    n_groups = len(group_angles)
    if dim % n_groups:
        raise ValueError(f"dim {dim} not divisible into {n_groups} equal groups")
    perm = rng.permutation(dim) + 1
    size = dim // n_groups
    triples = []
    for g, angle in enumerate(group_angles):
        members = sorted(perm[g * size : (g + 1) * size])
        triples += [
            (int(members[i]), int(members[j]), angle)
            for i in range(size)
            for j in range(i + 1, size)
        ]
    return ThetaSpec.from_triples(dim, triples)


def _single_suite_component(fid, seed, dim, lam, transform, h_diag, theta):
    """Common wiring for the single-component suite entries: random interior
    center and negative floor value, drawn from streams keyed by entry id."""
    center = _stream(seed, "suite", fid, "center").uniform(-80.0, 80.0, size=dim)
    sigma = _stream(seed, "suite", fid, "sigma").uniform(-1200.0, 0.0)
    return Component(
        center=center, sigma=sigma, h_diag=h_diag, lam=lam,
        transform=transform, theta=theta,
    )


def suite_instance(index: int, seed: int = 0) -> ProblemInstance:
    """Build suite entry ``index`` (1..24) for the given seed.

    Entries 1-6 are unimodal, 7-15 multimodal with a single component,
    16-24 multimodal with multiple competing components.  All are 30-D on
    [-100, 100] with the optimum strictly inside the box.
    """
    if not 1 <= index <= SUITE_SIZE:
        raise ValueError(f"suite index must be in [1, {SUITE_SIZE}], got {index}")
    d = DEFAULT_DIM
    cfg = ScenarioConfig(dim=d, seed=seed)
    ident = TransformParams()
    ones = np.ones(d)

    def srng(*labels):
        return _stream(seed, "suite", index, *labels)

    def build(components):
        return _instance(cfg, components, f"suite-f{index}", index=index)

    if index <= 15:
        lam, transform, h_diag, theta = _suite_single_params(index, d, srng)
        comp = _single_suite_component(index, seed, d, lam, transform, h_diag, theta)
        return build([comp])

    if index == 16:
        sigmas = np.concatenate(
            [[-5000.0], srng("sigmas").uniform(-4500.0, -4000.0, size=4)]
        )
        centers = srng("centers").uniform(-80.0, 80.0, size=(5, d))
        return build(
            [Component(centers[k], sigmas[k], ones, lam=1.0) for k in range(5)]
        )

    if index == 17:
        sigmas = np.concatenate(
            [[-5000.0], srng("sigmas").uniform(-4500.0, -4000.0, size=4)]
        )
        centers = srng("centers").uniform(-80.0, 80.0, size=(5, d))
        comps = []
        for k in range(5):
            h = srng("h", k).uniform(0.01, 100.0, size=d)
            theta = random_theta(d, 0.5, ANGLE_RANGE, srng("theta", k))
            comps.append(Component(centers[k], sigmas[k], h, lam=1.0, theta=theta))
        return build(comps)

    if index in (18, 19, 20):
        lam = 0.25 if index == 20 else 1.0
        if index == 20:
            centers = srng("centers").uniform(-75.0, -25.0, size=(5, d))
            sigmas = np.concatenate(
                [[-100.0], srng("sigmas").uniform(-99.0, -98.0, size=4)]
            )
        else:
            centers = srng("centers").uniform(-80.0, 80.0, size=(5, d))
            sigmas = np.concatenate(
                [[-5000.0], srng("sigmas").uniform(-4500.0, -4000.0, size=4)]
            )
        comps = []
        for k in range(5):
            if index == 19:
                mu = (0.5, 0.5)
                omega = tuple(srng("omega", k).uniform(50.0, 100.0, size=4))
            else:
                mu = tuple(srng("mu", k).uniform(0.2, 0.5, size=2))
                omega = tuple(srng("omega", k).uniform(5.0, 50.0, size=4))
            theta = random_theta(d, 0.5, ANGLE_RANGE, srng("theta", k))
            comps.append(
                Component(
                    centers[k], sigmas[k], ones, lam=lam,
                    transform=TransformParams(mu, omega), theta=theta,
                )
            )
        return build(comps)

    if index == 21:
        sigmas = [-50.0, -45.0, -40.0, -40.0, -40.0]
        comps = []
        for k in range(5):
            if k == 1:
                center = np.zeros(d)
                h = ones
            else:
                center = _off_center_draw(srng("centers", k), d)
                h = np.full(d, 5.0)
            mu = tuple(srng("mu", k).uniform(0.1, 0.2, size=2))
            omega = tuple(srng("omega", k).uniform(5.0, 10.0, size=4))
            theta = random_theta(d, 0.5, ANGLE_RANGE, srng("theta", k))
            comps.append(
                Component(
                    center, sigmas[k], h, lam=0.5,
                    transform=TransformParams(mu, omega), theta=theta,
                )
            )
        return build(comps)

    if index == 22:
        comps = []
        for k, (c_lo, c_hi, sig, lam) in enumerate(
            [(80.0, 90.0, -1000.0, 1.0), (-90.0, -80.0, -950.0, 0.9)]
        ):
            center = srng("centers", k).uniform(c_lo, c_hi, size=d)
            h = srng("h", k).uniform(1.0, 10.0, size=d)
            omega = tuple(srng("omega", k).uniform(20.0, 50.0, size=4))
            theta = random_theta(d, 0.7, ANGLE_RANGE, srng("theta", k))
            comps.append(
                Component(
                    center, sig, h, lam=lam,
                    transform=TransformParams((0.5, 0.5), omega), theta=theta,
                )
            )
        return build(comps)

    if index == 23:
        center = srng("center").uniform(-80.0, 80.0, size=d)
        comps = []
        for k in range(5):
            omega = tuple(srng("omega", k).uniform(20.0, 50.0, size=4))
            theta = random_theta(d, 0.75, ANGLE_RANGE, srng("theta", k))
            comps.append(
                Component(
                    center, -100.0, ones, lam=0.4,
                    transform=TransformParams((0.5, 0.5), omega), theta=theta,
                )
            )
        return build(comps)

    # index == 24
    sigmas = np.concatenate([[-100.0], srng("sigmas").uniform(-99.0, -98.0, size=4)])
    centers = srng("centers").uniform(-80.0, 80.0, size=(5, d))
    comps = []
    for k in range(5):
        mu = tuple(srng("mu", k).uniform(0.2, 0.5, size=2))
        omega = tuple(srng("omega", k).uniform(5.0, 50.0, size=4))
        h = srng("h", k).uniform(1.0, 1e5, size=d)
        theta = random_theta(d, 0.75, ANGLE_RANGE, srng("theta", k))
        comps.append(
            Component(
                centers[k], sigmas[k], h, lam=0.25,
                transform=TransformParams(mu, omega), theta=theta,
            )
        )
    return build(comps)


def _off_center_draw(rng, dim):
    """Point inside [-90, 90]^d but outside the central [-30, 30]^d cube."""
    while True:
        x = rng.uniform(-90.0, 90.0, size=dim)
        if np.any(np.abs(x) > 30.0):
            return x


def _suite_single_params(index, d, srng):
    """(lam, transform, h_diag, theta) for single-component entries 1-15."""
    ident = TransformParams()
    ones = np.ones(d)
    if index == 1:
        return 1.0, ident, ones, None
    if index == 2:
        return 0.05, ident, ones, None
    if index == 3:
        return 1.0, ident, _permuted_linspace(srng("h"), 0.1, 1e6, d), None
    if index == 4:
        h = srng("h").uniform(1.0, 10.0, size=d)
        return 1.0, ident, h, random_theta(d, 1.0, ANGLE_RANGE, srng("theta"))
    if index == 5:
        h = _permuted_linspace(srng("h"), 0.1, 1e6, d)
        return 0.05, ident, h, _chain_theta(d, srng("theta"))
    if index == 6:
        h = _permuted_linspace(srng("h"), 0.1, 1e6, d)
        return 0.05, ident, h, random_theta(d, 1.0, ANGLE_RANGE, srng("theta"))
    if index == 7:
        return 1.0, TransformParams((0.2, 0.2), (20,) * 4), ones, None
    if index == 8:
        return 1.0, TransformParams((0.2, 0.2), (50,) * 4), ones, None
    if index == 9:
        return 1.0, TransformParams((1.0, 1.0), (20,) * 4), ones, None
    if index == 10:
        return 1.0, TransformParams((0.2, 0.5), (20, 50, 10, 25)), ones, None
    if index == 11:
        theta = random_theta(d, 1.0, ANGLE_RANGE, srng("theta"))
        return 1.0, TransformParams((0.2, 0.5), (20, 50, 10, 25)), ones, theta
    if index == 12:
        theta = _grouped_theta(
            d, (np.pi / 4, 3 * np.pi / 4, np.pi / 8), srng("theta")
        )
        return 1.0, TransformParams((0.2, 0.5), (20, 50, 10, 25)), ones, theta
    if index == 13:
        theta = random_theta(d, 1.0, ANGLE_RANGE, srng("theta"))
        return 1.0, TransformParams((1.0, 1.0), (50,) * 4), ones, theta
    if index == 14:
        h = srng("h").uniform(1.0, 1e3, size=d)
        extremes = srng("h-extremes").permutation(d)[:2]
        h[extremes[0]], h[extremes[1]] = 0.01, 1e3
        theta = random_theta(d, 1.0, ANGLE_RANGE, srng("theta"))
        return 0.6, TransformParams((0.7, 0.2), (25, 10, 20, 50)), h, theta
    # index == 15
    h = 1.0 + (1e5 - 1.0) * srng("h").beta(0.2, 0.2, size=d)
    extremes = srng("h-extremes").permutation(d)[:2]
    h[extremes[0]], h[extremes[1]] = 1.0, 1e5
    theta = random_theta(d, 1.0, ANGLE_RANGE, srng("theta"))
    return 0.1, TransformParams((1.0, 1.0), (10,) * 4), h, theta
