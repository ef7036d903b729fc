"""Limited-memory BFGS with a strong-Wolfe line search, plus the
quadratic-penalty driver and a finite-difference gradient checker.

The minimizer is deterministic: identical inputs produce bit-identical
iterate sequences. Objectives are callables ``f(x) -> (value, gradient)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

STATUS_CONVERGED = "converged"
STATUS_MAX_ITERS = "max_iters"
STATUS_LINE_SEARCH_FAILED = "line_search_failed"


@dataclass(frozen=True)
class LbfgsConfig:
    memory: int = 10
    max_iters: int = 200
    grad_tol: float = 1e-6
    c1: float = 1e-4          # sufficient-decrease constant
    c2: float = 0.9           # curvature constant
    initial_step: float = 1.0
    max_bisections: int = 40  # total line-search trial budget

    def __post_init__(self):
        if not (0.0 < self.c1 < self.c2 < 1.0):
            raise ValueError("need 0 < c1 < c2 < 1")
        if self.memory < 1:
            raise ValueError("memory must be >= 1")


@dataclass
class LbfgsResult:
    x: np.ndarray
    f: float
    grad: np.ndarray
    grad_norm: float
    iters: int
    status: str
    n_evals: int


def _wolfe_line_search(f, x, p, f0, g0, cfg):
    """Strong-Wolfe line search (bracket + bisection zoom).

    Returns ``(alpha, f_a, g_a, n_evals)`` with ``alpha=None`` when no Wolfe
    point was found within the trial budget; the best sufficient-decrease
    point seen (if any) is then reported instead of the start point.
    """
    d0 = float(np.dot(g0, p))
    if d0 >= 0:
        return None, f0, g0, 0

    def phi(a):
        fa, ga = f(x + a * p)
        return float(fa), np.asarray(ga, dtype=float)

    budget = cfg.max_bisections
    evals = 0
    best = None  # best point satisfying sufficient decrease

    def note(a, fa, ga):
        nonlocal best
        if np.isfinite(fa) and fa <= f0 + cfg.c1 * a * d0:
            if best is None or fa < best[1]:
                best = (a, fa, ga)

    a_prev, f_prev, d_prev = 0.0, f0, d0
    a = cfg.initial_step
    lo = hi = None
    for i in range(budget):
        fa, ga = phi(a)
        evals += 1
        da = float(np.dot(ga, p))
        note(a, fa, ga)
        if not np.isfinite(fa) or fa > f0 + cfg.c1 * a * d0 or (i > 0 and fa >= f_prev):
            lo, hi = (a_prev, f_prev, d_prev), (a, fa, da)
            break
        if abs(da) <= -cfg.c2 * d0:
            return a, fa, ga, evals
        if da >= 0:
            lo, hi = (a, fa, da), (a_prev, f_prev, d_prev)
            break
        a_prev, f_prev, d_prev = a, fa, da
        a *= 2.0
    if lo is None:
        # never bracketed: ran out of extrapolations
        if best is not None:
            return best[0], best[1], best[2], evals
        return None, f0, g0, evals

    # zoom by bisection on [lo, hi]; lo always satisfies sufficient decrease
    for _ in range(budget - evals):
        a = 0.5 * (lo[0] + hi[0])
        fa, ga = phi(a)
        evals += 1
        da = float(np.dot(ga, p))
        note(a, fa, ga)
        if not np.isfinite(fa) or fa > f0 + cfg.c1 * a * d0 or fa >= lo[1]:
            hi = (a, fa, da)
        else:
            if abs(da) <= -cfg.c2 * d0:
                return a, fa, ga, evals
            if da * (hi[0] - lo[0]) >= 0:
                hi = lo
            lo = (a, fa, da)
        if abs(hi[0] - lo[0]) < 1e-16 * max(1.0, abs(lo[0])):
            break
    if best is not None:
        return best[0], best[1], best[2], evals
    return None, f0, g0, evals


def lbfgs_minimize(f, x0, cfg: LbfgsConfig | None = None) -> LbfgsResult:
    """Minimize ``f`` from ``x0`` by the two-loop-recursion L-BFGS method.

    Stops when the gradient 2-norm drops to ``cfg.grad_tol`` or after
    ``cfg.max_iters`` iterations. Accepted steps satisfy the strong Wolfe
    conditions, so the objective never increases between iterates; curvature
    pairs with ``y.s <= 1e-10 |y||s|`` are discarded to keep the implicit
    Hessian approximation positive definite.
    """
    cfg = cfg or LbfgsConfig()
    x = np.asarray(x0, dtype=float).copy()
    fx, g = f(x)
    fx = float(fx)
    g = np.asarray(g, dtype=float)
    if not np.isfinite(fx):
        raise ValueError("objective must be finite at the start point")
    n_evals = 1
    pairs: deque[tuple[np.ndarray, np.ndarray, float]] = deque(maxlen=cfg.memory)
    gamma = 1.0
    status = STATUS_MAX_ITERS
    iters = 0

    for iters in range(cfg.max_iters + 1):
        gnorm = float(np.linalg.norm(g))
        if gnorm <= cfg.grad_tol:
            status = STATUS_CONVERGED
            break
        if iters == cfg.max_iters:
            status = STATUS_MAX_ITERS
            break

        # two-loop recursion for the search direction
        q = g.copy()
        alphas = []
        for s, y, rho in reversed(pairs):
            a = rho * np.dot(s, q)
            alphas.append(a)
            q -= a * y
        q *= gamma
        for (s, y, rho), a in zip(pairs, reversed(alphas)):
            b = rho * np.dot(y, q)
            q += (a - b) * s
        p = -q

        step, f_new, g_new, evals = _wolfe_line_search(f, x, p, fx, g, cfg)
        n_evals += evals
        if step is None:
            status = STATUS_LINE_SEARCH_FAILED
            break
        x_new = x + step * p
        s = x_new - x
        y = g_new - g
        ys = float(np.dot(y, s))
        if ys > 1e-10 * np.linalg.norm(y) * np.linalg.norm(s):
            pairs.append((s, y, 1.0 / ys))
            gamma = ys / float(np.dot(y, y))
        x, fx, g = x_new, float(f_new), g_new

    return LbfgsResult(x=x, f=fx, grad=g, grad_norm=float(np.linalg.norm(g)),
                       iters=iters, status=status, n_evals=n_evals)


def grad_check(f, x, h: float = 1e-5) -> float:
    """Max relative error between the analytic gradient of ``f`` and a
    central finite difference, per coordinate, with denominator
    ``max(1, |analytic|)``."""
    if not h > 0:
        raise ValueError("h must be positive")
    x = np.asarray(x, dtype=float)
    _, g = f(x)
    g = np.asarray(g, dtype=float)
    worst = 0.0
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        fp, _ = f(x + e)
        fm, _ = f(x - e)
        num = (fp - fm) / (2.0 * h)
        err = abs(num - g[i]) / max(1.0, abs(g[i]))
        worst = max(worst, err)
    return worst


@dataclass(frozen=True)
class PenaltySchedule:
    init: float | np.ndarray = 1.0
    growth: float = 10.0
    max_rounds: int = 8
    feas_tol: float = 1e-4
    cap: float = 1e8

    def __post_init__(self):
        if not self.growth > 1:
            raise ValueError("growth must exceed 1")


@dataclass
class PenaltyResult:
    x: np.ndarray
    penalties: np.ndarray
    residuals: np.ndarray
    rounds: int
    feasible: bool
    inner_results: list = field(default_factory=list)


def penalty_loop(build_objective, constraint_residuals, x0,
                 schedule: PenaltySchedule | None = None,
                 solver=None) -> PenaltyResult:
    """Quadratic-penalty driver: alternate an inner unconstrained solve with
    multiplicative growth of the penalty weights on violated constraints.

    ``build_objective(penalties)`` returns the penalized objective for the
    given weight vector; ``constraint_residuals(x)`` returns the non-negative
    violation of each constraint. Stops as soon as every residual is at most
    ``schedule.feas_tol`` or after ``schedule.max_rounds`` inner solves, in
    which case the best-feasibility iterate seen is returned with
    ``feasible=False``.
    """
    schedule = schedule or PenaltySchedule()
    solver = solver or lbfgs_minimize
    x = np.asarray(x0, dtype=float).copy()
    res = np.asarray(constraint_residuals(x), dtype=float)
    n_constraints = res.size
    penalties = np.broadcast_to(
        np.asarray(schedule.init, dtype=float), (n_constraints,)).copy()

    best_x, best_res = x, res
    inner_results = []
    rounds = 0
    # A feasible start still gets one inner solve (so the objective is
    # actually minimized); its penalties are simply never grown.
    for rounds in range(1, schedule.max_rounds + 1):
        result = solver(build_objective(penalties), x)
        inner_results.append(result)
        x = result.x
        res = np.asarray(constraint_residuals(x), dtype=float)
        if np.max(res, initial=0.0) <= np.max(best_res, initial=0.0):
            best_x, best_res = x, res
        if np.all(res <= schedule.feas_tol):
            return PenaltyResult(x, penalties, res, rounds, True, inner_results)
        violated = res > schedule.feas_tol
        penalties[violated] = np.minimum(penalties[violated] * schedule.growth,
                                         schedule.cap)
    return PenaltyResult(best_x, penalties, best_res, rounds, False,
                         inner_results)
