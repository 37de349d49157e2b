"""Scaling a weighted adjacency matrix to a 1-regular one by diagonal congruence.

With M = a∘a (entrywise square), a positive diagonal D making D M D doubly
stochastic gives B = D^{1/2} a D^{1/2} whose rows all have L2 norm 1, and B
has the same inertia as a (Sylvester).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConvergenceError, InputError, PreconditionError, SizeError
from .graph import Graph
from .spectra import SymmetricMatrix, _as_array

EXACT_SCALABILITY_MAX_N = kernels.SWEEP_MAX_N


@dataclass(frozen=True)
class ScalabilityWitness:
    scalable: bool
    best_value: int
    best_S: frozenset[int] | None
    best_T: frozenset[int] | None
    method: str  # "exact" or "min_degree"

    def to_dict(self):
        return {
            "scalable": self.scalable,
            "best_value": self.best_value,
            "best_S": None if self.best_S is None else sorted(self.best_S),
            "best_T": None if self.best_T is None else sorted(self.best_T),
            "method": self.method,
        }


def _bits(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def scalability_check(g: Graph) -> ScalabilityWitness:
    """Is |S| + |T| < n for all S, T with no edges between them?

    S and T may overlap (a vertex is never adjacent to itself).  When the
    minimum degree exceeds n/2, |S|, |T| <= n - delta and the answer follows
    without search; ``best_value`` is then the bound 2(n - delta).
    """
    n = g.n
    delta = min(g.degrees())
    if 2 * delta > n:
        return ScalabilityWitness(True, 2 * (n - delta), None, None, "min_degree")
    if n > EXACT_SCALABILITY_MAX_N:
        raise SizeError(f"exact scalability search is capped at n = {EXACT_SCALABILITY_MAX_N} and min degree {delta} <= n/2")
    full = (1 << n) - 1
    nonadj = np.array([full & ~m for m in g.masks], dtype=np.int64)
    value, s = kernels.best_disconnected_pair(nonadj, n)
    s = int(s)
    t = full
    for v in _bits(s):
        t &= int(nonadj[v])
    value = int(value)
    return ScalabilityWitness(value < n, value, _bits(s), _bits(t), "exact")


@dataclass(frozen=True)
class ScalingResult:
    D: np.ndarray
    B: SymmetricMatrix
    iterations: int
    residual: float
    history: list[float] = field(default_factory=list, repr=False)

    def row_norms(self) -> np.ndarray:
        return np.sqrt((self.B.array ** 2).sum(axis=1))


def _check_support(a: np.ndarray, g: Graph):
    if a.shape[0] != g.n:
        raise InputError(f"matrix dim {a.shape[0]} does not match graph order {g.n}")
    adj = g.adjacency(bool)
    if np.any(a[~adj] != 0):
        i, j = np.argwhere((a != 0) & ~adj)[0]
        raise InputError(f"entry ({i}, {j}) is nonzero but not an edge")
    if np.any(a[adj] == 0):
        i, j = np.argwhere((a == 0) & adj)[0]
        raise InputError(f"edge ({i}, {j}) has zero weight; see perturb_zero_edges")


def perturb_zero_edges(a, g: Graph, seed: int = 0) -> np.ndarray:
    """Give every zero-weight edge a weight of magnitude 1e-6 * ||a||_F."""
    arr = np.array(_as_array(a), dtype=np.float64)
    scale = 1e-6 * max(float(np.linalg.norm(arr)), 1.0)
    rng = np.random.default_rng(seed)
    for u, v in sorted(g.edges):
        if arr[u, v] == 0:
            w = scale * (1 if rng.random() < 0.5 else -1)
            arr[u, v] = arr[v, u] = w
    return arr


def _ds_residual(P: np.ndarray) -> float:
    return float(max(np.abs(P.sum(axis=1) - 1).max(), np.abs(P.sum(axis=0) - 1).max()))


def sinkhorn(a, g: Graph, tol: float = 1e-10, max_iter: int = 100_000) -> ScalingResult:
    """Scale ``a`` (a fully supported weighted adjacency matrix of ``g``) to 1-regular.

    Each sweep normalises the rows then the columns of diag(r) M diag(c).
    After a column step the row sums average to 1 and each new row sum is a
    convex combination of reciprocals of convex combinations of the old ones,
    so the max row deviation (``history``) never increases.  For symmetric
    M the limit has c proportional to r, and D = sqrt(r * c) scales M
    symmetrically.
    """
    arr = _as_array(a)
    _check_support(arr, g)
    M = arr * arr
    zero_rows = np.flatnonzero(M.sum(axis=1) == 0)
    if zero_rows.size:
        raise InputError(f"row {int(zero_rows[0])} of M is zero (isolated vertex)")
    wit = scalability_check(g)
    if not wit.scalable:
        raise PreconditionError(f"graph is not scalable: |S| + |T| = {wit.best_value} >= n = {g.n}")

    n = g.n
    r = np.ones(n)
    c = np.ones(n)
    history = []
    resid = np.inf
    it = 0
    while it < max_iter:
        it += 1
        r = 1.0 / (M @ c)
        c = 1.0 / (M.T @ r)
        row = r * (M @ c)
        sweep = float(np.abs(row - 1).max())
        history.append(sweep)
        if sweep <= tol:
            D = np.sqrt(r * c)
            resid = _ds_residual(D[:, None] * M * D[None, :])
            if resid <= tol:
                break
    else:
        D = np.sqrt(r * c)
        resid = _ds_residual(D[:, None] * M * D[None, :])
        if resid > tol:
            raise ConvergenceError(f"Sinkhorn did not reach tol {tol:g} in {max_iter} sweeps", resid)
    h = np.sqrt(D)
    B = h[:, None] * arr * h[None, :]
    B = np.tril(B) + np.tril(B, -1).T
    return ScalingResult(D, SymmetricMatrix(B), it, resid, history)


def one_regular_rows(a, atol: float = 1e-6) -> tuple[bool, float]:
    """(all rows within atol of unit L2 norm, worst deviation)."""
    arr = _as_array(a)
    dev = np.abs(np.sqrt((arr ** 2).sum(axis=1)) - 1)
    worst = float(dev.max())
    return worst <= atol, worst
