"""Plane-rotation machinery: Givens factors, composed rotation matrices,
and random interaction structures.

Variable interactions are encoded as an upper-triangular matrix of plane
angles (one angle per variable pair).  Composing the corresponding Givens
factors yields an orthogonal matrix that couples exactly the pairs with a
nonzero angle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ORTHOGONALITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ThetaSpec:
    """Upper-triangular matrix of plane-rotation angles (radians).

    Only entries strictly above the principal diagonal may be nonzero;
    ``angles[p-1, q-1]`` (1-indexed pair p < q) is the rotation angle for
    the x_p - x_q plane.
    """

    dim: int
    angles: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        angles = np.asarray(self.angles, dtype=float)
        if angles.shape != (self.dim, self.dim):
            raise ValueError(
                f"angles must have shape ({self.dim}, {self.dim}), got {angles.shape}"
            )
        if np.any(np.tril(angles) != 0.0):
            raise ValueError("angles on or below the principal diagonal must be zero")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def zeros(cls, dim: int) -> "ThetaSpec":
        return cls(dim, np.zeros((dim, dim)))

    @classmethod
    def from_triples(cls, dim: int, triples) -> "ThetaSpec":
        """Build from an iterable of 1-indexed (p, q, angle) triples."""
        angles = np.zeros((dim, dim))
        for p, q, angle in triples:
            if not (1 <= p < q <= dim):
                raise ValueError(f"invalid pair (p={p}, q={q}) for dim {dim}")
            angles[p - 1, q - 1] = angle
        return cls(dim, angles)

    def to_triples(self) -> list[tuple[int, int, float]]:
        """1-indexed (p, q, angle) triples for every nonzero angle."""
        ps, qs = np.nonzero(self.angles)
        return [(int(p) + 1, int(q) + 1, float(self.angles[p, q])) for p, q in zip(ps, qs)]

    def num_nonzero(self) -> int:
        return int(np.count_nonzero(self.angles))

    def is_identity(self) -> bool:
        return self.num_nonzero() == 0


def givens(dim: int, p: int, q: int, theta: float) -> np.ndarray:
    """Givens rotation of angle ``theta`` in the x_p - x_q plane (1-indexed).

    Identity everywhere except entries (p,p) = (q,q) = cos(theta),
    (p,q) = -sin(theta), (q,p) = sin(theta).
    """
    if not (1 <= p < q <= dim):
        raise ValueError(f"require 1 <= p < q <= dim, got p={p}, q={q}, dim={dim}")
    g = np.eye(dim)
    c, s = np.cos(theta), np.sin(theta)
    i, j = p - 1, q - 1
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -s
    g[j, i] = s
    return g


def rotation_from_theta(theta_spec: ThetaSpec) -> np.ndarray:
    """Compose the rotation matrix from a ThetaSpec.

    Iterates pairs p = 1..d-1 (outer), q = p+1..d (inner), right-multiplying
    a Givens factor for every nonzero angle.  Zero angles are skipped, so the
    all-zero spec yields the identity.
    """
    d = theta_spec.dim
    r = np.eye(d)
    angles = theta_spec.angles
    for p in range(1, d):
        for q in range(p + 1, d + 1):
            theta = angles[p - 1, q - 1]
            if theta != 0.0:
                # R <- R x G, applied as the equivalent two-column update
                c, s = np.cos(theta), np.sin(theta)
                i, j = p - 1, q - 1
                col_i = r[:, i].copy()
                r[:, i] = c * col_i + s * r[:, j]
                r[:, j] = -s * col_i + c * r[:, j]
    err = orthogonality_error(r)
    if err > ORTHOGONALITY_TOL:
        raise ArithmeticError(f"composed rotation lost orthogonality (error {err:.3e})")
    return r


def orthogonality_error(r: np.ndarray) -> float:
    """Max-norm of R^T R - I."""
    d = r.shape[0]
    return float(np.max(np.abs(r.T @ r - np.eye(d))))


def random_theta(
    dim: int,
    p_prob: float,
    angle_source=( -np.pi, np.pi),
    rng: np.random.Generator | None = None,
) -> ThetaSpec:
    """Random interaction structure: each above-diagonal entry independently
    receives a nonzero angle with probability ``p_prob``, else stays zero.

    ``angle_source`` is either a (lo, hi) tuple for uniform sampling or a
    list of discrete angle values to pick from.  p_prob = 0 gives a fully
    separable structure, p_prob = 1 a fully connected one.
    """
    if not 0.0 <= p_prob <= 1.0:
        raise ValueError(f"p_prob must be in [0, 1], got {p_prob}")
    if rng is None:
        rng = np.random.default_rng()
    uniform = isinstance(angle_source, tuple)
    if uniform:
        lo, hi = angle_source
        if not lo < hi:
            raise ValueError(f"uniform angle range requires lo < hi, got ({lo}, {hi})")

    angles = np.zeros((dim, dim))
    for p in range(dim - 1):
        for q in range(p + 1, dim):
            if p_prob == 1.0 or rng.uniform() < p_prob:
                angles[p, q] = _draw_angle(rng, angle_source, uniform)
    return ThetaSpec(dim, angles)


def _draw_angle(rng, angle_source, uniform):
    if uniform:
        lo, hi = angle_source
        angle = rng.uniform(lo, hi)
        while angle == 0.0:  # measure zero, but nonzero is contractual
            angle = rng.uniform(lo, hi)
        return angle
    return angle_source[int(rng.integers(len(angle_source)))]


def full_theta(dim: int, angle: float) -> ThetaSpec:
    """Every above-diagonal entry set to the same fixed angle."""
    angles = np.triu(np.full((dim, dim), float(angle)), k=1)
    return ThetaSpec(dim, angles)
