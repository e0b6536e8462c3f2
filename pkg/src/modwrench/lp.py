"""Linear programming over box-bounded variables with a few equality rows.

The solver is a dense two-phase revised simplex specialised for the problem
class used throughout this package: at most a handful of equality rows,
finite lower bounds, optional finite upper bounds.  Entering variables are
priced by steepest reduced cost, with an automatic switch to Bland's
smallest-index rule after a run of degenerate pivots, so every solve is
deterministic and termination is guaranteed.

On top of the solver sit the wrench-satisfiability queries: the maximum
achievable magnitude along a wrench direction under the thrust box, the
per-wrench and per-task verdicts, and the zero-torque force variant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Magnitude comparisons against the achievable maximum.
BOUNDARY_TOL = 1e-9
# Wrenches below this norm are treated as the zero wrench.
ZERO_WRENCH_TOL = 1e-12
# Equality-constraint residual accepted as feasible.
FEASIBILITY_TOL = 1e-8

_RCOST_TOL = 1e-9
_PIVOT_TOL = 1e-10


@dataclass
class LpProblem:
    """maximize objective @ x  s.t.  eq_matrix @ x = eq_rhs,  lower <= x <= upper.

    Lower bounds must be finite; upper bounds may be +inf.
    """

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def validated(self) -> "LpProblem":
        c = np.atleast_1d(np.asarray(self.objective, dtype=float))
        A = np.asarray(self.eq_matrix, dtype=float)
        if A.size == 0:
            A = A.reshape(0, c.size)
        if A.ndim != 2:
            raise ValueError("eq_matrix must be 2-dimensional")
        b = np.atleast_1d(np.asarray(self.eq_rhs, dtype=float))
        lo = np.atleast_1d(np.asarray(self.lower, dtype=float))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=float))
        n = c.size
        if A.shape[1] != n or b.size != A.shape[0] or lo.size != n or hi.size != n:
            raise ValueError("inconsistent problem dimensions")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("objective, eq_matrix and eq_rhs must be finite")
        if not np.all(np.isfinite(lo)):
            raise ValueError("lower bounds must be finite")
        if np.any(hi < lo):
            raise ValueError("upper bounds must not be below lower bounds")
        return LpProblem(c, A, b, lo, hi)


@dataclass
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective: float | None


class _Unbounded(Exception):
    pass


def _simplex(A, b, c, lower, upper, basis, at_upper):
    """Run bounded-variable simplex iterations in place; return basic values.

    `basis` and `at_upper` are updated in place.  Maximizes c @ x.  Entering
    variables are priced by steepest reduced cost; after a run of degenerate
    pivots the rule falls back to Bland's smallest-index rule until progress
    resumes, which rules out cycling.  Both rules are deterministic.  Raises
    _Unbounded when an improving ray has no blocking bound.
    """
    m, n = A.shape
    fixed = (upper - lower) <= 0.0
    is_basic = np.zeros(n, dtype=bool)
    is_basic[basis] = True
    finite_upper = np.where(np.isfinite(upper), upper, 0.0)
    max_iter = 2000 + 200 * (n + m)
    stalled = 0
    for _ in range(max_iter):
        x_nb = np.where(at_upper & ~is_basic, finite_upper, lower)
        x_nb[is_basic] = 0.0
        if m:
            try:
                b_inv = np.linalg.inv(A[:, basis])
            except np.linalg.LinAlgError as exc:  # guarded by the pivot tolerance
                raise RuntimeError("singular simplex basis") from exc
            x_b = b_inv @ (b - A @ x_nb)
            d = c - (c[basis] @ b_inv) @ A
        else:
            x_b = np.zeros(0)
            d = c
        gain = np.where(at_upper, -d, d)
        gain[is_basic | fixed] = 0.0
        candidates = np.nonzero(gain > _RCOST_TOL)[0]
        if candidates.size == 0:
            x = x_nb.copy()
            x[basis] = x_b
            return x
        if stalled > 2 * (m + 2):
            j = int(candidates[0])  # Bland: smallest improving index
        else:
            j = int(candidates[np.argmax(gain[candidates])])
        sigma = -1.0 if at_upper[j] else 1.0
        step = sigma * (b_inv @ A[:, j]) if m else np.zeros(0)
        # Ratio test: smallest step before a basic variable or the entering
        # variable itself hits a bound; ties broken by variable index.
        best = upper[j] - lower[j]
        best_var = j
        best_row = -1
        best_hit_upper = False
        for i in range(m):
            s = step[i]
            var = basis[i]
            if s > _PIVOT_TOL:
                lim = (x_b[i] - lower[var]) / s
                hit_upper = False
            elif s < -_PIVOT_TOL:
                ub = upper[var]
                if not np.isfinite(ub):
                    continue
                lim = (ub - x_b[i]) / (-s)
                hit_upper = True
            else:
                continue
            if lim < 0.0:
                lim = 0.0
            if lim < best - 1e-12 or (lim <= best + 1e-12 and var < best_var):
                best = lim
                best_var = var
                best_row = i
                best_hit_upper = hit_upper
        if not np.isfinite(best):
            raise _Unbounded
        stalled = stalled + 1 if best <= 1e-12 else 0
        if best_row < 0:
            at_upper[j] = not at_upper[j]  # bound flip, basis unchanged
        else:
            leave = basis[best_row]
            at_upper[leave] = best_hit_upper
            is_basic[leave] = False
            basis[best_row] = j
            is_basic[j] = True
            at_upper[j] = False
    raise RuntimeError("simplex iteration limit exceeded")


def _phase1(A, b, lower, upper):
    """Minimal L1 equality violation with all variables started at lower bounds.

    Each row gets a +1 and a -1 artificial slack so violations in either
    direction can be absorbed; the minimum of their sum is the true L1
    residual.  Returns (residual, x_ext, basis, at_upper, extended arrays)
    where the last 2m entries of x_ext are the artificials.
    """
    m, n = A.shape
    resid = b - A @ lower
    A_ext = np.hstack([A, np.eye(m), -np.eye(m)]) if m else A.reshape(0, n)
    lo_ext = np.concatenate([lower, np.zeros(2 * m)])
    hi_ext = np.concatenate([upper, np.full(2 * m, np.inf)])
    c1 = np.zeros(n + 2 * m)
    c1[n:] = -1.0
    basis = np.where(resid >= 0.0, np.arange(n, n + m), np.arange(n + m, n + 2 * m))
    basis = basis.astype(int)
    at_upper = np.zeros(n + 2 * m, dtype=bool)
    x = _simplex(A_ext, b, c1, lo_ext, hi_ext, basis, at_upper)
    residual = max(float(np.sum(x[n:])), 0.0)
    return residual, x, basis, at_upper, A_ext, lo_ext, hi_ext


def solve_lp(problem: LpProblem, feasibility_tol: float = FEASIBILITY_TOL) -> LpSolution:
    """Solve a validated LpProblem; status is optimal, infeasible or unbounded."""
    p = problem.validated()
    m, n = p.eq_matrix.shape
    residual, _, basis, at_upper, A_ext, lo_ext, hi_ext = _phase1(
        p.eq_matrix, p.eq_rhs, p.lower, p.upper)
    if residual > feasibility_tol:
        return LpSolution("infeasible", None, None)
    # Pin artificials at zero and optimize the real objective from the
    # feasible basis phase 1 ends on.
    hi_ext = hi_ext.copy()
    hi_ext[n:] = 0.0
    c2 = np.concatenate([p.objective, np.zeros(2 * m)])
    try:
        x = _simplex(A_ext, p.eq_rhs, c2, lo_ext, hi_ext, basis, at_upper)
    except _Unbounded:
        return LpSolution("unbounded", None, None)
    x = x[:n]
    return LpSolution("optimal", x, float(p.objective @ x))


def equality_feasibility(eq_matrix, eq_rhs, lower, upper, want_dual: bool = False):
    """Minimal L1 violation of eq_matrix @ x = eq_rhs over the box, with witness.

    Returns (residual, x), or (residual, x, y) with the final dual vector
    when `want_dual` is set (used for pricing in column generation).
    residual <= FEASIBILITY_TOL means the system is feasible and x is a
    feasible point (up to that tolerance).
    """
    A = np.asarray(eq_matrix, dtype=float)
    b = np.asarray(eq_rhs, dtype=float)
    lo = np.asarray(lower, dtype=float)
    hi = np.asarray(upper, dtype=float)
    residual, x, basis, _, A_ext, *_ = _phase1(A, b, lo, hi)
    n = A.shape[1]
    if not want_dual:
        return residual, x[:n]
    m = A.shape[0]
    if m == 0:
        return residual, x[:n], np.zeros(0)
    c1 = np.zeros(n + 2 * m)
    c1[n:] = -1.0
    y = c1[basis] @ np.linalg.inv(A_ext[:, basis])
    return residual, x[:n], y


def max_lambda(A, w_hat, f_max: float, tol: float = 1e-9):
    """Largest magnitude lambda with A @ u = lambda * w_hat, 0 <= u <= f_max.

    w_hat must be a unit 6-vector.  Returns (lambda_star, u_star); u = 0 makes
    lambda = 0 feasible, so lambda_star >= 0 always.
    """
    A = np.asarray(A, dtype=float)
    w_hat = np.asarray(w_hat, dtype=float)
    if w_hat.shape != (A.shape[0],):
        raise ValueError("direction size must match the wrench dimension")
    if abs(np.linalg.norm(w_hat) - 1.0) > tol:
        raise ValueError("direction must have unit norm")
    if not (np.isfinite(f_max) and f_max > 0):
        raise ValueError("f_max must be positive")
    n = A.shape[1]
    c = np.zeros(n + 1)
    c[-1] = 1.0
    eq = np.hstack([A, -w_hat[:, None]])
    lo = np.zeros(n + 1)
    hi = np.concatenate([np.full(n, float(f_max)), [np.inf]])
    sol = solve_lp(LpProblem(c, eq, np.zeros(A.shape[0]), lo, hi))
    if sol.status != "optimal":  # u = 0 is always feasible and lambda is bounded
        raise RuntimeError(f"direction maximization ended {sol.status}")
    return float(sol.x[-1]), sol.x[:-1]


def satisfies_wrench(A, w, f_max: float) -> bool:
    """True iff the wrench w is inside the feasible set of A under the thrust box."""
    w = np.asarray(w, dtype=float)
    norm = float(np.linalg.norm(w))
    if norm < ZERO_WRENCH_TOL:
        return True
    lam, _ = max_lambda(A, w / norm, f_max)
    return lam >= norm - BOUNDARY_TOL


def satisfies_task(A, task, f_max: float):
    """Check every wrench of a task; returns (all_ok, first_failing_index).

    Stops at the first failing wrench; the reported index is the smallest
    failing one.
    """
    task = np.atleast_2d(np.asarray(task, dtype=float))
    for i, w in enumerate(task):
        if not satisfies_wrench(A, w, f_max):
            return False, i
    return True, None


def max_force_zero_torque(A, f_hat, f_max: float) -> float:
    """Largest pure-force magnitude along unit 3-vector f_hat with zero torque."""
    f_hat = np.asarray(f_hat, dtype=float)
    if f_hat.shape != (3,):
        raise ValueError("force direction must be a 3-vector")
    direction = np.concatenate([f_hat, np.zeros(3)])
    lam, _ = max_lambda(A, direction, f_max)
    return lam
