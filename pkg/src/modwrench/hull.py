"""Reachable wrench sets as vertex-represented convex hulls.

The wrench set of a thrust box under the configuration matrix is a zonotope:
the Minkowski sum of the scaled matrix columns.  Its hull is built bottom-up
by splitting the columns in half, recursing, and merging the two partial
hulls through pairwise vertex sums.  Hulls are kept as irredundant vertex
sets only; membership queries and redundancy pruning both reduce to small
feasibility LPs, which also handles rank-deficient (flat) wrench sets that
facet-based hull codes reject.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp

# A point within this L1 equality residual of the hull of the remaining
# points is treated as redundant; published so oracle comparisons are
# deterministic.
REDUNDANCY_TOL = 1e-8

# Brute-force binary enumeration guard.
MAX_ENUM_COLUMNS = 20


class CapacityError(RuntimeError):
    """Raised when an enumeration would exceed the supported problem size."""


@dataclass(frozen=True)
class WrenchHull:
    """Irredundant vertex set of a reachable wrench set; vertices are lex-sorted."""

    vertices: np.ndarray  # (k, 6)
    dimension: int        # affine dimension of the vertex set

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        object.__setattr__(self, "vertices", v)

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]


def _affine_dimension(points: np.ndarray) -> int:
    if points.shape[0] <= 1:
        return 0
    deltas = points[1:] - points[0]
    return int(np.linalg.matrix_rank(deltas, tol=1e-9))


def _unique_rows(points: np.ndarray) -> np.ndarray:
    return np.unique(points, axis=0)


def enumerate_binary_images(A, f_max: float) -> np.ndarray:
    """Images of every on/off thrust pattern: all 2^cols products A @ u.

    The brute-force oracle for the divide-and-conquer construction; guarded
    because the point count doubles per column.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    cols = A.shape[1]
    if cols > MAX_ENUM_COLUMNS:
        raise CapacityError(
            f"binary enumeration of {cols} columns would produce 2**{cols} points; "
            f"the limit is {MAX_ENUM_COLUMNS} columns"
        )
    scaled = float(f_max) * A.T  # (cols, 6)
    total = 1 << cols
    out = np.empty((total, A.shape[0]))
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((idx[:, None] >> np.arange(cols)[None, :]) & 1).astype(float)
        out[start : start + idx.size] = bits @ scaled
    return out


def _in_hull_residual(points: np.ndarray, x: np.ndarray) -> float:
    """Minimal L1 violation of expressing x as a convex combination of points.

    For large point sets the LP is solved by column generation: a small
    working set of candidate points is grown using the dual certificate
    until either a combination within tolerance is found or no point can
    improve the residual, so the result equals the full solve.
    """
    k = points.shape[0]
    cols = np.vstack([points.T, np.ones((1, k))])
    rhs = np.concatenate([x, [1.0]])

    def solve(idx):
        sub = cols[:, idx]
        return lp.equality_feasibility(
            sub, rhs, np.zeros(len(idx)), np.full(len(idx), np.inf), want_dual=True)

    if k <= 32:
        residual, _, _ = solve(np.arange(k))
        return residual
    near = np.argsort(((points - x) ** 2).sum(axis=1), kind="stable")[:16]
    work = set(near.tolist())
    for dim in range(points.shape[1]):
        work.add(int(np.argmax(points[:, dim])))
        work.add(int(np.argmin(points[:, dim])))
    work = sorted(work)
    for _ in range(k):
        residual, _, y = solve(np.array(work))
        if residual <= REDUNDANCY_TOL:
            return residual  # feasible on a subset is feasible on the full set
        scores = -(y @ cols)
        scores[work] = 0.0
        improving = np.nonzero(scores > 1e-9)[0]
        if improving.size == 0:
            return residual  # dual-certified optimal over all points
        take = improving[np.argsort(scores[improving], kind="stable")[::-1][:8]]
        work = sorted(set(work) | set(take.tolist()))
    residual, _, _ = solve(np.arange(k))  # unreachable in practice
    return residual


# Fixed direction battery used to certify clear vertices without an LP.
_N_CERTIFY_DIRECTIONS = 384
_CERTIFY_SEED = 20230517


def _certified_extremes(points: np.ndarray) -> np.ndarray:
    """Mark points that are unique maximizers of some direction by a clear gap.

    Such a point cannot be a convex combination of the others (the gap along
    the certifying direction dwarfs REDUNDANCY_TOL), so the per-point LP can
    be skipped for it.  Purely an exactness-preserving fast path.
    """
    n, dim = points.shape
    certified = np.zeros(n, dtype=bool)
    if n < 3:
        return certified
    rng = np.random.default_rng(_CERTIFY_SEED)
    dirs = rng.normal(size=(_N_CERTIFY_DIRECTIONS, dim))
    # Outward rays from the centroid reach most true vertices directly.
    rays = points - points.mean(axis=0)
    norms = np.linalg.norm(rays, axis=1)
    rays = rays[norms > 1e-12] / norms[norms > 1e-12, None]
    dirs = np.vstack([dirs / np.linalg.norm(dirs, axis=1, keepdims=True),
                      rays, np.eye(dim), -np.eye(dim)])
    gap = 1e-5 * max(1.0, float(np.max(np.abs(points))))
    proj = points @ dirs.T
    top = np.argmax(proj, axis=0)
    col = np.arange(proj.shape[1])
    best = proj[top, col]
    proj[top, col] = -np.inf
    second = np.max(proj, axis=0)
    clear = best - second > gap
    certified[top[clear]] = True
    return certified


def prune_redundant(points) -> WrenchHull:
    """Keep only points that are not convex combinations of the other kept points.

    The hull of the output equals the hull of the input; each candidate is
    tested with a feasibility LP at REDUNDANCY_TOL (clear extreme points are
    certified without one).  Output rows stay in lexicographic order, which
    makes the result deterministic.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[0] == 0:
        raise ValueError("cannot prune an empty point set")
    points = _unique_rows(points)
    keep = np.ones(points.shape[0], dtype=bool)
    certified = _certified_extremes(points)
    for i in range(points.shape[0]):
        if points.shape[0] == 1 or certified[i]:
            continue
        others = points[keep & (np.arange(points.shape[0]) != i)]
        if others.shape[0] == 0:
            continue
        if _in_hull_residual(others, points[i]) <= REDUNDANCY_TOL:
            keep[i] = False
    vertices = points[keep]
    return WrenchHull(vertices, _affine_dimension(vertices))


def minkowski_merge(h1: WrenchHull, h2: WrenchHull) -> WrenchHull:
    """Hull of the Minkowski sum of two hulls via pairwise vertex sums."""
    v1 = h1.vertices
    v2 = h2.vertices
    sums = (v1[:, None, :] + v2[None, :, :]).reshape(-1, v1.shape[1])
    return prune_redundant(sums)


def construct_hull(A, f_max: float) -> WrenchHull:
    """Divide-and-conquer hull of the reachable wrench set of A.

    Single column: the segment {0, f_max * column}.  Otherwise the column
    block is split at ceil(cols/2), both halves are recursed, and the two
    hulls are merged.  The vertex set equals the pruned binary-image set.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    cols = A.shape[1]
    if cols == 0:
        raise ValueError("configuration matrix needs at least one column")
    if cols == 1:
        pts = np.vstack([np.zeros(A.shape[0]), float(f_max) * A[:, 0]])
        return prune_redundant(pts)
    split = (cols + 1) // 2
    h1 = construct_hull(A[:, :split], f_max)
    h2 = construct_hull(A[:, split:], f_max)
    return minkowski_merge(h1, h2)


def hull_contains(hull: WrenchHull, w, tol: float = REDUNDANCY_TOL) -> bool:
    """True iff w is a convex combination of the hull vertices (within tol)."""
    w = np.asarray(w, dtype=float)
    v = hull.vertices
    # Cheap reject: the hull lies inside its bounding box.
    if np.any(w > v.max(axis=0) + tol) or np.any(w < v.min(axis=0) - tol):
        return False
    return _in_hull_residual(v, w) <= tol


def satisfies_task_hull(A, task, f_max: float) -> bool:
    """Build the wrench hull once, then test every task wrench against it."""
    task = np.atleast_2d(np.asarray(task, dtype=float))
    hull = construct_hull(A, f_max)
    return all(hull_contains(hull, w) for w in task)
