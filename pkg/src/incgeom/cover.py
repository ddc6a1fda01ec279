"""Covering the intersection of two plane slabs by thin boxes.

For planes pi1, pi2 at affine distance w > delta, the set
pi1(delta) & pi2(delta) & B(0,1) fits inside a union of congruent boxes
with one side of length ~ delta/w along the in-plane direction normal to
the fold line and the remaining sides of length ~ delta, about
delta^-(d-2) boxes in all.  The construction rotates pi1 to horizontal,
intersects the horizontal slab with the strip the second slab cuts in it,
and tiles that strip; a sampling verifier with independent membership
predicates checks the result and its count bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import check_plane_coeffs, point_plane_distance, unit_normal_norms

COUNT_CONSTANT = 64

# Half-lengths are inflated by this relative amount so points on slab
# boundaries cannot fall out of their tile through rounding; it dwarfs the
# 1e-15-level error of the rotation but stays far below delta.
_INFLATE = 1e-9


@dataclass(frozen=True)
class Box:
    """Axis frame box: |axes[j] . (x - center)| <= half_lengths[j].

    `axes` rows are orthonormal; `thin_axis` marks the row carrying the
    delta/w side."""

    center: np.ndarray
    axes: np.ndarray
    half_lengths: np.ndarray
    thin_axis: int

    def __post_init__(self):
        d = self.center.size
        gram = self.axes @ self.axes.T
        if not np.allclose(gram, np.eye(d), atol=1e-9):
            raise ValueError("box axes are not orthonormal within 1e-9")
        if not np.all(self.half_lengths > 0):
            raise ValueError("box half-lengths must be positive")
        if not 0 <= self.thin_axis < d:
            raise ValueError(f"thin_axis {self.thin_axis} out of range for d={d}")

    def contains(self, points, tol=1e-12):
        y = np.abs((np.atleast_2d(points) - self.center) @ self.axes.T)
        return np.all(y <= self.half_lengths + tol, axis=-1)

    def to_dict(self):
        return {
            "center": self.center.tolist(),
            "axes": self.axes.tolist(),
            "half_lengths": self.half_lengths.tolist(),
            "thin_axis": self.thin_axis,
        }


@dataclass(frozen=True)
class BoxCover:
    boxes: tuple
    w: float
    delta: float
    dim: int
    count_bound: float

    def __post_init__(self):
        if len(self.boxes) > self.count_bound:
            raise ValueError(
                f"cover has {len(self.boxes)} boxes, exceeding its bound "
                f"{self.count_bound}"
            )

    def scaled(self, factor):
        """Same centers and frames with every half-length multiplied by
        `factor`.  Meant for negative controls: a shrunken cover of a
        nonempty intersection must produce misses."""
        boxes = tuple(
            Box(b.center, b.axes, b.half_lengths * factor, b.thin_axis)
            for b in self.boxes
        )
        return BoxCover(boxes, self.w, self.delta, self.dim, self.count_bound)

    def to_dict(self):
        return {
            "w": self.w,
            "delta": self.delta,
            "dim": self.dim,
            "count_bound": self.count_bound,
            "boxes": [b.to_dict() for b in self.boxes],
        }


def _normalize(pi, delta, label):
    pi = np.asarray(pi, dtype=np.float64)
    if pi.ndim != 1 or pi.size < 2:
        raise ValueError(f"{label} must be a coefficient vector (a1..ad)")
    check_plane_coeffs(pi[None, :])
    norm = float(unit_normal_norms(pi[None, :])[0])
    normal = np.append(pi[:-1], -1.0) / norm
    offset = float(pi[-1]) / norm  # plane is normal . x + offset = 0
    if abs(offset) > 1.0 + 1e-9:
        raise ValueError(f"{label} does not meet the unit ball")
    return pi, normal, offset


def _frame(pi1, pi2, delta):
    """Rotate pi1 horizontal; return the data describing where the second
    slab cuts the first."""
    _, n1, c1 = _normalize(pi1, delta, "first plane")
    _, n2, c2 = _normalize(pi2, delta, "second plane")
    d = n1.size
    # Householder sending n1 to +e_d; stable since n1's last entry is < 0
    v = n1 - np.eye(d)[d - 1]
    house = np.eye(d) - 2.0 * np.outer(v, v) / (v @ v)
    nu = house @ n2
    m = nu[: d - 1]
    nu_d = float(nu[d - 1])
    # in rotated coordinates slab1 is |xi_d + c1| <= delta; substituting
    # xi_d = -c1 + O(delta) into slab2 leaves the strip |m.xi' + gamma| <= 2 delta
    gamma = c2 - nu_d * c1
    w = float(np.linalg.norm(n1 - n2) + abs(c1 - c2))
    return {
        "rotation": house,
        "vertical_center": -c1,
        "m": m,
        "m_norm": float(np.linalg.norm(m)),
        "gamma": gamma,
        "w": w,
        "dim": d,
        "ball_radius": 1.0 + 2.0 * delta,
    }


def affine_gap(pi1, pi2, delta=2.0**-4):
    """d_A distance of two coefficient vectors (validation included)."""
    return _frame(pi1, pi2, delta)["w"]


def _empty_cover(frame, delta):
    return BoxCover(
        boxes=(),
        w=frame["w"],
        delta=float(delta),
        dim=frame["dim"],
        count_bound=COUNT_CONSTANT * float(delta) ** -(frame["dim"] - 2),
    )


def slab_intersection_cover(pi1, pi2, delta) -> BoxCover:
    """Boxes of half-lengths (delta/w, delta, ..., delta) covering
    pi1(delta) & pi2(delta) & B(0,1), for euclidean slabs at C = 1.

    Raises when w <= delta (the lemma's hypothesis) and in the
    near-parallel regime where the strip degenerates into a full-width
    pancake (only reachable for w < 4 delta); parallel planes whose slabs
    miss each other give an empty cover.
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    fr = _frame(pi1, pi2, delta)
    w, d = fr["w"], fr["dim"]
    if w <= delta:
        raise ValueError(
            f"scales merge below separation: w = {w:.3e} <= delta = {delta:.3e}"
        )
    m_norm, gamma, radius = fr["m_norm"], fr["gamma"], fr["ball_radius"]
    if m_norm < delta / 4.0:
        if abs(gamma) > 2.0 * delta + m_norm * radius:
            return _empty_cover(fr, delta)
        raise ValueError(
            "near-parallel pancake: the second slab cuts the first in a "
            f"full-width sheet (|m| = {m_norm:.3e} < delta/4, w = {w:.3e}); "
            "no thin-box cover meets the count bound in this regime"
        )
    tau_lo = (-gamma - 2.0 * delta) / m_norm
    tau_hi = (-gamma + 2.0 * delta) / m_norm
    lo, hi = max(tau_lo, -radius), min(tau_hi, radius)
    if lo > hi:
        return _empty_cover(fr, delta)

    house = fr["rotation"]
    e_beta = fr["m"] / m_norm
    # complete e_beta to an orthonormal basis of the in-plane coordinates
    basis_src = np.column_stack([e_beta, np.eye(d - 1)])
    q = np.linalg.qr(basis_src)[0]
    if q[:, 0] @ e_beta < 0:
        q = -q
    h_thin = delta / w
    n_thin = max(int(math.ceil((hi - lo) / (2.0 * h_thin))), 1)
    n_perp = int(math.ceil(radius / delta))
    half = np.full(d, delta * (1.0 + _INFLATE))
    half[0] = h_thin * (1.0 + _INFLATE)
    axes = np.vstack([(house @ np.append(q[:, j], 0.0)) for j in range(d - 1)]
                     + [house @ np.eye(d)[d - 1]])
    boxes = []
    perp_centers = [
        [-radius + delta * (2 * j + 1) for j in range(n_perp)]
    ] * (d - 2)
    for i in range(n_thin):
        beta_c = lo + h_thin * (2 * i + 1)
        for combo in itertools.product(*perp_centers):
            xi = np.empty(d)
            xi[0] = beta_c
            xi[1 : d - 1] = combo
            xi[d - 1] = fr["vertical_center"]
            center = house @ np.append(q @ xi[: d - 1], xi[d - 1])
            boxes.append(Box(center, axes, half.copy(), thin_axis=0))
    return BoxCover(
        boxes=tuple(boxes),
        w=w,
        delta=float(delta),
        dim=d,
        count_bound=COUNT_CONSTANT * float(delta) ** -(d - 2),
    )


@dataclass(frozen=True)
class CoverageReport:
    fraction: float
    requested: int
    obtained: int
    miss_count: int
    miss_examples: tuple
    vacuous: bool
    note: str = ""

    def to_dict(self):
        return {
            "fraction": self.fraction,
            "requested": self.requested,
            "obtained": self.obtained,
            "miss_count": self.miss_count,
            "miss_examples": [list(p) for p in self.miss_examples],
            "vacuous": self.vacuous,
            "note": self.note,
        }


def verify_cover(pi1, pi2, delta, cover: BoxCover, n_samples=10_000, seed=0):
    """Sample the true slab intersection uniformly and report the covered
    fraction.

    Proposals are drawn from a rotated-frame cylinder that provably
    contains the intersection, then filtered by the original euclidean
    slab predicates and the unit ball, so the accepted sample is uniform
    on the true region and independent of how the cover was built.  An
    empty region is a vacuous pass with the flag set."""
    pi1 = np.asarray(pi1, dtype=np.float64)
    pi2 = np.asarray(pi2, dtype=np.float64)
    fr = _frame(pi1, pi2, delta)
    d = fr["dim"]
    m_norm, gamma, radius = fr["m_norm"], fr["gamma"], fr["ball_radius"]
    if m_norm == 0.0 and abs(gamma) > 2.0 * delta:
        return CoverageReport(1.0, n_samples, 0, 0, (), True, "empty intersection")
    if m_norm > 0.0:
        lo = max((-gamma - 2.0 * delta) / m_norm, -radius)
        hi = min((-gamma + 2.0 * delta) / m_norm, radius)
        if lo > hi:
            return CoverageReport(1.0, n_samples, 0, 0, (), True, "empty intersection")
    else:
        lo, hi = -radius, radius
    e_beta = (fr["m"] / m_norm) if m_norm > 0 else np.eye(d - 1)[0]
    basis_src = np.column_stack([e_beta, np.eye(d - 1)])
    q = np.linalg.qr(basis_src)[0]
    house = fr["rotation"]

    rng = np.random.default_rng(seed)
    budget = 2000 * n_samples
    drawn = 0
    batch = 8192
    samples = []
    got = 0
    while got < n_samples and drawn < budget:
        k = min(batch, budget - drawn)
        drawn += k
        xi = np.empty((k, d))
        xi[:, 0] = rng.uniform(lo, hi, size=k)
        if d > 2:
            xi[:, 1 : d - 1] = rng.uniform(-radius, radius, size=(k, d - 2))
        xi[:, d - 1] = fr["vertical_center"] + rng.uniform(-delta, delta, size=k)
        x = np.column_stack([xi[:, : d - 1] @ q.T, xi[:, d - 1]]) @ house.T
        keep = (
            (np.einsum("ij,ij->i", x, x) <= 1.0)
            & (point_plane_distance(x, pi1) <= delta)
            & (point_plane_distance(x, pi2) <= delta)
        )
        if keep.any():
            samples.append(x[keep])
            got += int(keep.sum())
    if not samples:
        return CoverageReport(
            1.0, n_samples, 0, 0, (), True,
            f"no intersection point found in {drawn} proposals",
        )
    pts = np.vstack(samples)[:n_samples]
    covered = np.zeros(len(pts), dtype=bool)
    for box in cover.boxes:
        rem = ~covered
        if not rem.any():
            break
        covered[rem] = box.contains(pts[rem])
    misses = np.flatnonzero(~covered)
    note = "" if len(pts) == n_samples else (
        f"sampler obtained {len(pts)} of {n_samples} requested points"
    )
    return CoverageReport(
        fraction=float(covered.mean()),
        requested=n_samples,
        obtained=len(pts),
        miss_count=int(misses.size),
        miss_examples=tuple(map(tuple, pts[misses[:20]])),
        vacuous=False,
        note=note,
    )
