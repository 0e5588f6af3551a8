"""Newton hard-thresholding pursuit (NHTP) for sparse complementarity.

Minimizes a complementarity merit f over the sparsity set ||x||_0 <= s.
Each iteration selects the working set T_k as the s largest magnitudes of
x - eta * grad f(x), solves the Newton system restricted to T_k (with a
correction for coordinates about to be zeroed), falls back to the
restricted gradient when the system is singular or the direction fails a
descent test, then backtracks along

    x(alpha) = x_T + alpha d_T on T,  0 off T,

so every iterate keeps at most s nonzeros.  Halting combines a
stationarity residual, an objective-stall test, and an iteration cap.

The threshold step eta controls only the working-set selection (and the
residual normalization), not the step length.  A fixed eta can be too
aggressive far from a solution: the selection then discards coordinates
carrying real progress and no backtracking step is acceptable.  When a
line search exhausts its budget the solver halves eta and retries the
iteration from the same point, so descent stays monotone; eta never
grows back.  Only when eta has been driven 2^40 times below its starting
value does the solver give up and report the failed line search.
"""

import logging
import time
from dataclasses import dataclass

import numpy as np

from . import merit as mer
from .core import (IndexSet, SingularError, SolveReport, Termination,
                   dense_solve, top_s_by_magnitude)

logger = logging.getLogger("sparselcp.nhtp")


@dataclass
class IterateState:
    """One solver iterate: the point, its working sets and derivatives.

    support is the current selection T_k; prev_support the set T_{k-1}
    whose coordinates may still be nonzero in x.  eta is the threshold
    step in effect for this iterate; None means the configured default.
    """

    x: np.ndarray
    y: np.ndarray
    support: IndexSet
    prev_support: IndexSet
    value: float
    grad: np.ndarray
    k: int
    eta: float = None


def select_support(x, grad, eta, s):
    """Working set: indices of the s largest |x - eta * grad| entries."""
    return top_s_by_magnitude(x - eta * grad, s)


def _tolerance(x, grad, T, eta, s):
    """Stationarity residual of x relative to the working set T.

    The first part stacks grad on T with x off T; the second part charges
    any off-T gradient entry exceeding the s-th largest |x_i| divided by
    eta.  Both vanish exactly at points satisfying the sparse
    stationarity conditions.
    """
    n = x.shape[0]
    t = T.as_array()
    mask = np.zeros(n, dtype=bool)
    mask[t] = True
    first = np.sqrt(np.sum(grad[t] ** 2) + np.sum(x[~mask] ** 2))
    if s >= n:
        return first
    xs = np.partition(np.abs(x), n - s)[n - s]
    slack = np.abs(grad[~mask]).max() - xs / eta
    return first + max(slack, 0.0)


def residual(state, model, inst, config):
    """Stationarity residual at the state's point and working set."""
    eta = state.eta if state.eta is not None else config.eta_for(inst.n)
    return _tolerance(state.x, state.grad, state.support, eta, config.s)


def newton_direction(state, model, inst, config):
    """Restricted Newton direction, or None when the fallback must run.

    Solves H[T,T] d_T = H[T,J] x_J - grad_T with J the coordinates being
    dropped from the previous working set, and sets d = -x off T.  Returns
    None if the system is singular or d fails the descent margin test
        <grad_T, d_T> <= -gamma ||d||^2 + ||x_offT||^2 / (4 eta).
    """
    x, y, g = state.x, state.y, state.grad
    n = x.shape[0]
    eta = state.eta if state.eta is not None else config.eta_for(n)
    t = state.support.as_array()
    rhs = -g[t]
    j = np.setdiff1d(state.prev_support.as_array(), t)
    if j.size:
        xj = x[j]
        if np.any(xj != 0.0):
            rhs = rhs + mer.merit_hessian(model, inst, x, t, j, y=y) @ xj
    try:
        dt = dense_solve(mer.merit_hessian(model, inst, x, t, t, y=y), rhs)
    except SingularError:
        return None
    d = -x.copy()
    d[t] = dt
    off_sq = float(np.sum(x[state.support.complement(n)] ** 2))
    gamma = config.gamma_inactive if off_sq == 0.0 else config.gamma_active
    if np.dot(g[t], dt) <= -gamma * np.dot(d, d) + off_sq / (4.0 * eta):
        return d
    return None


def fallback_direction(state):
    """Restricted steepest descent: -grad on T, -x off T."""
    d = -state.x.copy()
    t = state.support.as_array()
    d[t] = -state.grad[t]
    return d


def line_search(state, direction, model, inst, config):
    """Armijo backtracking along the support-restricted update.

    Tries alpha = beta^t for t = 0..max_backtracks against
    f(x(alpha)) <= f(x) + sigma * alpha * <grad f(x), d>.  Returns
    (alpha, x_new, y_new, f_new, t) or None when every alpha fails.
    """
    x, g, f = state.x, state.grad, state.value
    t_idx = state.support.as_array()
    slope = float(np.dot(g, direction))
    cols = inst.M[:, t_idx]
    xt = x[t_idx]
    dt = direction[t_idx]
    alpha = 1.0
    for t in range(config.max_backtracks + 1):
        xt_new = xt + alpha * dt
        y_new = cols @ xt_new + inst.q
        x_new = np.zeros_like(x)
        x_new[t_idx] = xt_new
        f_new = mer.value_from_xy(model, x_new, y_new)
        if f_new <= f + config.sigma * alpha * slope:
            return alpha, x_new, y_new, f_new, t
        alpha *= config.beta
    return None


def _initial_supports(x, s, n):
    """Trim x to its s largest magnitudes if needed, and build a starting
    working set covering supp(x), completed with the lowest free indices."""
    supp = np.nonzero(x)[0]
    if supp.size > s:
        keep = top_s_by_magnitude(x, s).as_array()
        trimmed = np.zeros_like(x)
        trimmed[keep] = x[keep]
        x, supp = trimmed, keep
    if supp.size < s:
        free = np.setdiff1d(np.arange(n), supp)[: s - supp.size]
        supp = np.union1d(supp, free)
    return x, IndexSet(tuple(np.sort(supp)), s)


def solve(inst, model, config, x0=None, callback=None):
    """Run the pursuit on an instance; returns a SolveReport.

    x0 defaults to zero; a start with more than s nonzeros is trimmed to
    its s largest magnitudes.  callback(k, x, f), when given, observes
    every iterate including the start; it must not mutate x.

    When a line search exhausts max_backtracks the threshold step eta is
    halved and the iteration retried from the same point (see the module
    docstring); the solve reports LineSearchFailed only once eta has hit
    its floor.
    """
    n = inst.n
    s = config.s
    if not 1 <= s <= n:
        raise ValueError("s out of range for this instance")
    eta = config.eta_for(n)
    if x0 is None:
        x = np.zeros(n)
    else:
        x = np.array(x0, dtype=np.float64)
        if x.shape != (n,):
            raise ValueError("x0 length must match the instance")
    x, prev_T = _initial_supports(x, s, n)
    t_start = time.perf_counter()
    eta_floor = eta * 2.0**-40
    y = inst.M @ x + inst.q
    f = mer.value_from_xy(model, x, y)
    g = mer.gradient_from_xy(model, inst.M, x, y)
    trace = [f]
    if callback is not None:
        callback(0, x, f)
    logger.info("solve start: n=%d s=%d eta=%g merit=%s f0=%.6e",
                n, s, eta, model.kind, f)
    backtracks = 0
    k = 0
    while True:
        T = select_support(x, g, eta, s)
        res = _tolerance(x, g, T, eta, s)
        if res <= config.tol:
            termination = Termination.RESIDUAL_MET
            break
        if k >= config.max_iter:
            termination = Termination.ITERATION_CAP
            break
        state = IterateState(x, y, T, prev_T, f, g, k, eta)
        d = newton_direction(state, model, inst, config)
        used_newton = d is not None
        if d is None:
            d = fallback_direction(state)
        step = line_search(state, d, model, inst, config)
        if step is None:
            backtracks += config.max_backtracks + 1
            if eta <= eta_floor:
                termination = Termination.LINE_SEARCH_FAILED
                break
            eta *= 0.5
            logger.debug("iter %d: line search exhausted, eta -> %g", k, eta)
            continue
        alpha, x_new, y_new, f_new, bt = step
        backtracks += bt
        stalled = abs(f_new - f) < config.obj_tol * (1.0 + abs(f))
        x, y, f = x_new, y_new, f_new
        prev_T = T
        k += 1
        trace.append(f)
        if callback is not None:
            callback(k, x, f)
        g = mer.gradient_from_xy(model, inst.M, x, y)
        logger.debug("iter %d: f=%.9e res=%.3e alpha=%g newton=%s bt=%d",
                     k, f, res, alpha, used_newton, bt)
        if stalled:
            termination = Termination.OBJECTIVE_STALLED
            T = select_support(x, g, eta, s)
            res = _tolerance(x, g, T, eta, s)
            break
    wall = time.perf_counter() - t_start
    logger.info("solve end: %s iters=%d f=%.6e res=%.3e time=%.3fs",
                termination.value, k, f, res, wall)
    return SolveReport(x=x, support=prev_T, objective=f, residual=res,
                       iterations=k, backtracks_total=backtracks,
                       wall_time=wall, termination=termination,
                       f_trace=trace)
