"""Core types and small numerical utilities shared by all solvers.

Conventions: vectors are 1-d float64 numpy arrays, matrices are dense 2-d
float64 arrays.  Index sets are kept 0-based internally; file formats and
logs that surface indices to users print them 1-based.
"""

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg


class SingularError(Exception):
    """A pivot fell below the singularity threshold during factorization."""


@dataclass(frozen=True)
class IndexSet:
    """A sorted set of coordinate indices with a sparsity budget.

    indices : strictly increasing tuple of 0-based coordinates
    capacity : the budget s; len(indices) <= capacity
    """

    indices: tuple
    capacity: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")
        if len(idx) > self.capacity:
            raise ValueError("more indices than capacity")
        if any(i < 0 for i in idx):
            raise ValueError("indices must be nonnegative")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing")

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in set(self.indices)

    def as_array(self):
        return np.array(self.indices, dtype=np.intp)

    def complement(self, n):
        """0-based indices in range(n) not in this set."""
        mask = np.ones(n, dtype=bool)
        mask[list(self.indices)] = False
        return np.nonzero(mask)[0]


def _frozen_array(a, dtype=np.float64):
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class LcpInstance:
    """The data (M, q) of a linear complementarity problem.

    Find x >= 0 with y = M x + q >= 0 and <x, y> = 0; sparse variants
    additionally bound the number of nonzeros of x.

    ground_truth : optional planted solution used for error reporting
    declared_classes : advisory matrix-class tags, e.g. {"Z", "PSD",
        "Nonnegative", "Ps"}; never verified here (see problems module)
    """

    M: np.ndarray
    q: np.ndarray
    ground_truth: np.ndarray = None
    declared_classes: frozenset = frozenset()

    def __post_init__(self):
        M = _frozen_array(self.M)
        q = _frozen_array(self.q)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("M must be square")
        if q.shape != (M.shape[0],):
            raise ValueError("q length must match M")
        gt = self.ground_truth
        if gt is not None:
            gt = _frozen_array(gt)
            if gt.shape != q.shape:
                raise ValueError("ground truth length must match q")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "ground_truth", gt)
        object.__setattr__(self, "declared_classes", frozenset(self.declared_classes))

    @property
    def n(self):
        return self.q.shape[0]


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the sparse Newton pursuit solver.

    s : sparsity budget (1 <= s <= n, checked at solve time)
    eta : thresholding step; None picks 5 when n <= 1000 else 1
    sigma : Armijo slope fraction, in (0, 0.5)
    beta : backtracking shrink factor, in (0, 1)
    gamma_active / gamma_inactive : curvature floor of the descent test,
        the inactive value applies when x vanishes off the working support
    tol : halting threshold on the stationarity residual
    obj_tol : relative objective-stall threshold
    max_iter : outer iteration cap
    max_backtracks : largest backtracking exponent tried per line search
    """

    s: int
    eta: float = None
    sigma: float = 1e-4
    beta: float = 0.5
    gamma_active: float = 1e-4
    gamma_inactive: float = 1e-10
    tol: float = 1e-10
    obj_tol: float = 1e-10
    max_iter: int = 2000
    max_backtracks: int = 50

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if self.eta is not None and not self.eta > 0:
            raise ValueError("eta must be positive")
        if not 0 < self.sigma < 0.5:
            raise ValueError("sigma must lie in (0, 0.5)")
        if not 0 < self.beta < 1:
            raise ValueError("beta must lie in (0, 1)")
        if self.gamma_active <= 0 or self.gamma_inactive <= 0:
            raise ValueError("gamma floors must be positive")
        if self.tol < 0 or self.obj_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.max_iter < 1 or self.max_backtracks < 0:
            raise ValueError("iteration caps out of range")

    def eta_for(self, n):
        if self.eta is not None:
            return float(self.eta)
        return 5.0 if n <= 1000 else 1.0


class Termination(enum.Enum):
    RESIDUAL_MET = "residual_met"
    OBJECTIVE_STALLED = "objective_stalled"
    ITERATION_CAP = "iteration_cap"
    LINE_SEARCH_FAILED = "line_search_failed"


@dataclass
class SolveReport:
    """Outcome of one solver run.

    support holds the working set that produced x, so supp(x) is always
    contained in it.  f_trace records the objective at x^0, x^1, ...
    """

    x: np.ndarray
    support: IndexSet
    objective: float
    residual: float
    iterations: int
    backtracks_total: int
    wall_time: float
    termination: Termination
    f_trace: list = field(default_factory=list)


# singularity threshold factor relative to ||A||_inf
_PIVOT_RTOL = 1e-12


def dense_solve(A, b):
    """Solve the dense system A d = b by partial-pivoting factorization.

    Raises SingularError when any pivot magnitude falls below
    1e-12 * ||A||_inf.  The residual satisfies
    ||A d - b|| <= 1e-10 * max(1, ||b||) for well-conditioned A.
    """
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or b.shape != (A.shape[0],):
        raise ValueError("need square A and matching b")
    norm_a = np.abs(A).sum(axis=1).max() if A.size else 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # pivot check below replaces scipy's warning
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    # diag(U) holds exactly the pivots chosen during elimination
    if norm_a == 0.0 or np.abs(np.diag(lu)).min() < _PIVOT_RTOL * norm_a:
        raise SingularError("pivot below threshold")
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def top_s_by_magnitude(z, s):
    """Indices of the s largest |z_i|, ties won by the lowest index.

    Returns an IndexSet (sorted ascending) with capacity s.
    """
    z = np.asarray(z)
    n = z.shape[0]
    if not 1 <= s <= n:
        raise ValueError("s out of range")
    # stable sort on -|z| resolves ties toward lower indices
    order = np.argsort(-np.abs(z), kind="stable")[:s]
    return IndexSet(tuple(np.sort(order)), s)


def _fmt(v):
    return format(float(v), ".17g")


def save_instance(inst, path):
    """Write an instance as text: n, the n rows of M, then q, then an
    optional ground-truth line prefixed 'x*:'.  Reals carry 17 significant
    digits so a load/save round trip is bit exact.  declared_classes are
    advisory and not serialized."""
    lines = [str(inst.n)]
    for row in inst.M:
        lines.append(" ".join(_fmt(v) for v in row))
    lines.append(" ".join(_fmt(v) for v in inst.q))
    if inst.ground_truth is not None:
        lines.append("x*: " + " ".join(_fmt(v) for v in inst.ground_truth))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_instance(path):
    """Inverse of save_instance."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("empty instance file")
    n = int(lines[0])
    if len(lines) < n + 2:
        raise ValueError("truncated instance file")
    M = np.array([[float(t) for t in lines[1 + i].split()] for i in range(n)])
    if M.shape != (n, n):
        raise ValueError("bad matrix row length")
    q = np.array([float(t) for t in lines[n + 1].split()])
    if q.shape != (n,):
        raise ValueError("bad q length")
    gt = None
    if len(lines) > n + 2:
        tail = lines[n + 2]
        if not tail.startswith("x*:"):
            raise ValueError("unrecognized trailing line")
        gt = np.array([float(t) for t in tail[3:].split()])
        if gt.shape != (n,):
            raise ValueError("bad ground-truth length")
    return LcpInstance(M, q, ground_truth=gt)
