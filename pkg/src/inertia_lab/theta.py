"""Lovász theta: exact values for G(n, k, {l}) and a numeric bracket for any graph."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import combinat
from .constructions import _check_johnson
from .errors import IntegrityError, SizeError
from .graph import Graph

THETA_MAX_N = 500


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def f_term(n: int, k: int, l: int, u: int, j: int) -> int:
    return binom(u, j) * binom(k - u, k - l - j) * binom(n - k - u, k - l - j)


def constraint_sum(n: int, k: int, l: int, u: int) -> int:
    return sum((-1) ** j * f_term(n, k, l, u, j) for j in range(k - l + 1))


class OutsideVerifiedRegime(UserWarning):
    pass


@dataclass(frozen=True)
class LinzResult:
    n: int
    k: int
    l: int
    theta: Fraction
    C: int
    prop32_value: Fraction
    per_u: tuple[tuple[int, int, Fraction | None], ...]  # (u, S_u, C / -S_u or None)
    binding_u: int
    in_verified_regime: bool

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "theta_exact": _fmt(self.theta),
            "C": str(self.C),
            "prop32_value": _fmt(self.prop32_value),
            "per_u": [
                {"u": u, "S_u": str(s), "constraint_bound": None if b is None else _fmt(b)}
                for u, s, b in self.per_u
            ],
            "binding_u": self.binding_u,
            "warning": None if self.in_verified_regime else "outside verified regime (n < k^3 + 1)",
        }


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def linz_theta(n: int, k: int, l: int) -> LinzResult:
    """theta(G(n, k, {l})) = 1 + max a subject to 1 + a S_u / C >= 0 for every u.

    Exact throughout.  Parameters with n < k^3 + 1 are evaluated but flagged
    (and warned about) as outside the regime where feasibility is proved.
    """
    _check_johnson(n, k, {l}, size_guard=False)  # never builds the graph
    regime = n >= k**3 + 1
    if not regime:
        warnings.warn(f"linz_theta({n}, {k}, {l}) is outside the verified regime n >= k^3 + 1", OutsideVerifiedRegime, stacklevel=2)
    C = binom(k, k - l) * binom(n - k, k - l)
    per_u = []
    best = None
    binding = None
    for u in range(k + 1):
        s = constraint_sum(n, k, l, u)
        b = Fraction(C, -s) if s < 0 else None
        per_u.append((u, s, b))
        if b is not None and (best is None or b < best):
            best, binding = b, u
    if best is None:
        raise IntegrityError(f"unbounded constraint system for ({n}, {k}, {l}): no S_u < 0")
    prop32 = Fraction(binom(k, k - l) * (n - k), (k - l) * (l + 1))
    return LinzResult(n, k, l, 1 + best, C, prop32, tuple(per_u), binding, regime)


def claim33_monotone(n: int, k: int, l: int) -> bool:
    """f_{u,j} >= f_{u,j+1} for all u in [0, k] and j in [max(0, u - l), k - l]."""
    _check_johnson(n, k, {l}, size_guard=False)
    return all(
        f_term(n, k, l, u, j) >= f_term(n, k, l, u, j + 1)
        for u in range(k + 1)
        for j in range(max(0, u - l), k - l + 1)
    )


# ------------------------------------------------------------ numeric bracket
#
# Primal: theta = max <J, B> over B PSD, tr B = 1, B_ij = 0 on edges.
# Dual:   theta = min lambda_max(X) over symmetric X with X = 1 on the
#         diagonal and on non-edges, free on edges.
# Both sides are solved by ADMM on the split "affine set / PSD cone"; its
# scaled multiplier U gives a dual slice point X_e = rho U_e.  Every reported
# value is evaluated at an exactly feasible point, so it is a certified bound.

@dataclass(frozen=True)
class ThetaBracket:
    lower: float
    upper: float
    iters_lower: int
    iters_upper: int
    feasibility_residuals: dict = field(default_factory=dict)
    history_lower: list[float] = field(default_factory=list, repr=False)
    history_upper: list[float] = field(default_factory=list, repr=False)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= x <= self.upper + slack

    def to_dict(self):
        return {
            "bracket": [self.lower, self.upper],
            "iters_lower": self.iters_lower,
            "iters_upper": self.iters_upper,
            "feasibility_residuals": dict(self.feasibility_residuals),
        }


def _check_size(g: Graph):
    if g.n > THETA_MAX_N:
        raise SizeError(f"theta solver is capped at n = {THETA_MAX_N}")


def _repair(b: np.ndarray, edges: np.ndarray) -> np.ndarray | None:
    """Feasible up to trace: symmetric, zero on edges, PSD (None if zero)."""
    r = np.where(edges, 0.0, (b + b.T) / 2)
    lo = np.linalg.eigvalsh(r)[0]
    if lo < 0:
        r = r + (-lo) * (1 + 1e-12) * np.eye(len(r))
    tr = np.trace(r)
    return r / tr if tr > 0 else None


def _slice_point(edges: np.ndarray, values: np.ndarray) -> np.ndarray:
    x = np.ones(edges.shape)
    x[edges] = values[edges]
    return (x + x.T) / 2


@dataclass
class _Run:
    lower: float
    upper: float
    best_b: np.ndarray
    best_x: np.ndarray
    hist_lower: list
    hist_upper: list
    iters: int


def _independent_set(g: Graph) -> list[int]:
    """Exact maximum independent set when affordable, else greedy by minimum degree."""
    if g.n <= combinat.ALPHA_MAX_N:
        return combinat.max_independent_set(g)
    alive = set(range(g.n))
    chosen = []
    while alive:
        v = min(alive, key=lambda x: (sum(1 for y in g.neighbors(x) if y in alive), x))
        chosen.append(v)
        alive -= {v, *g.neighbors(v)}
    return sorted(chosen)


def _admm(g: Graph, iters: int, tol: float, check_every: int = 10) -> _Run:
    n = g.n
    edges = g.adjacency(bool)
    eye = np.eye(n)
    # 1_S 1_S^T / |S| for an independent set S is feasible with value |S|
    ind = np.zeros(n)
    ind[_independent_set(g)] = 1.0
    b0 = np.outer(ind, ind) / ind.sum()
    run = _Run(float(ind.sum()), float(n), b0, np.ones((n, n)), [float(ind.sum())], [float(n)], 0)
    if not edges.any():
        # no free coordinates: X = J is the only slice point and B = J / n attains it
        run.lower, run.best_b = float(n), np.ones((n, n)) / n
        run.hist_lower.append(run.lower)
        return run
    rho = 1.0
    z = eye / n
    u = np.zeros((n, n))
    for t in range(1, iters + 1):
        x = np.where(edges, 0.0, z - u + 1.0 / rho)
        x += (1.0 - np.trace(x)) / n * eye
        w, v = np.linalg.eigh(x + u)
        z_prev = z
        z = (v * np.clip(w, 0.0, None)) @ v.T
        u += x - z
        run.iters = t
        if t % check_every and t != iters:
            continue
        b = _repair(z, edges)
        if b is not None:
            val = float(b.sum())
            if val > run.lower:
                run.lower, run.best_b = val, b
        xs = _slice_point(edges, rho * u)
        top = float(np.linalg.eigvalsh(xs)[-1])
        if top < run.upper:
            run.upper, run.best_x = top, xs
        run.hist_lower.append(run.lower)
        run.hist_upper.append(run.upper)
        if run.upper - run.lower <= tol:
            break
        # residual balancing
        r_primal = np.linalg.norm(x - z)
        r_dual = rho * np.linalg.norm(z - z_prev)
        if r_primal > 10 * r_dual:
            rho *= 2.0
            u /= 2.0
        elif r_dual > 10 * r_primal:
            rho /= 2.0
            u *= 2.0
    return run


def _polish_upper(g: Graph, run: _Run, iters: int, tol: float) -> int:
    """Subgradient steps on lambda_max over the slice, from the best dual point.

    The subgradient is the top-eigenspace projector averaged over its
    dimension and restricted to edges; the step is Polyak's, aimed at the
    certified lower value.
    """
    edges = g.adjacency(bool)
    x = run.best_x.copy()
    used = 0
    for _ in range(iters):
        if run.upper - run.lower <= tol:
            break
        used += 1
        w, v = np.linalg.eigh(x)
        top = w[-1]
        if top < run.upper:
            run.upper, run.best_x = float(top), x.copy()
        run.hist_upper.append(run.upper)
        vt = v[:, w >= top - 1e-9 * max(1.0, abs(top))]
        grad = np.where(edges, vt @ vt.T, 0.0) / vt.shape[1]
        nn = float(np.sum(grad * grad))
        if nn == 0.0:
            break
        x = x - (top - run.lower) / nn * grad
    return used


def theta_upper(g: Graph, iters: int = 2000, tol: float = 1e-4) -> float:
    """Certified upper bound on theta: lambda_max of a point of the slice."""
    return theta_bracket(g, iters, tol).upper


def theta_lower(g: Graph, iters: int = 2000, tol: float = 1e-4) -> float:
    """Certified lower bound on theta: <J, B> for an exactly feasible B."""
    return theta_bracket(g, iters, tol).lower


def theta_bracket(g: Graph, iters: int = 2000, tol: float = 1e-4) -> ThetaBracket:
    _check_size(g)
    run = _admm(g, iters, tol)
    polish = _polish_upper(g, run, iters, tol)
    if run.lower > run.upper + 1e-9:
        raise IntegrityError(f"theta bracket inverted: lower {run.lower} > upper {run.upper}")
    edges = g.adjacency(bool)
    b, x = run.best_b, run.best_x
    resid = {
        "upper_slice": float(np.abs(x[~edges] - 1).max()),
        "lower_edges": float(np.abs(b[edges]).max()) if edges.any() else 0.0,
        "lower_trace": float(abs(np.trace(b) - 1)),
        "lower_min_eig": float(np.linalg.eigvalsh(b)[0]),
    }
    return ThetaBracket(run.lower, run.upper, run.iters, run.iters + polish, resid,
                        run.hist_lower, run.hist_upper)
