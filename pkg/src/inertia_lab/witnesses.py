"""Upper and lower bounds on the weighted nonnegative inertia n>=0(G).

Upper bounds come from explicit weighted adjacency matrices (witnesses) and
from fit matrices; lower bounds from a spanning (n, d, lambda)-subgraph of the
complement and from orthogonal representations.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .constructions import _check_johnson, incidence_matrix, johnson
from .errors import (
    HypothesisError,
    InputError,
    PreconditionError,
    SizeError,
    SupportError,
    ValidationError,
)
from .graph import Graph, spectral_params
from .spectra import SymmetricMatrix, _as_array, eigen_sym, inertia_float

WITNESS_SEARCH_MAX_N = 200
STRATEGIES = ("unweighted", "negated", "johnson_closed_form", "random_gaussian", "sign_perturbed")


# ------------------------------------------------------------ expander bound

def cube_root_bound(d: float, lam: float) -> float:
    return ((d + lam) / (8 * lam)) ** (1 / 3)


@dataclass(frozen=True)
class ExpanderBoundResult:
    n: int
    d: int | None
    lam: float
    bound: float | None
    hypothesis_ok: bool
    violations: tuple[str, ...] = ()

    def to_dict(self):
        return {
            "n": self.n,
            "d": self.d,
            "lambda": self.lam,
            "bound": self.bound,
            "hypothesis_ok": self.hypothesis_ok,
            "violations": list(self.violations),
        }


def expander_lower_bound(G: Graph, Gamma: Graph, strict: bool = True) -> ExpanderBoundResult:
    """((d + lambda) / (8 lambda))^(1/3) for a regular Gamma inside complement(G).

    With ``strict`` a failed hypothesis raises ``HypothesisError`` listing the
    clauses; otherwise the result carries them and ``hypothesis_ok`` is false.
    """
    if G.n != Gamma.n:
        raise InputError(f"G has {G.n} vertices but Gamma has {Gamma.n}")
    rep = spectral_params(Gamma)
    clauses = []
    shared = [e for e in sorted(Gamma.edges) if G.has_edge(*e)]
    if shared:
        clauses.append(f"overlap: Gamma edge {shared[0]} is also an edge of G ({len(shared)} shared)")
    if not rep.is_regular:
        degs = Gamma.degrees()
        clauses.append(f"irregular: Gamma degrees range over [{min(degs)}, {max(degs)}]")
    elif not rep.degree < Gamma.n / 2 - 1:
        clauses.append(f"degree: d = {rep.degree} >= n/2 - 1 = {Gamma.n / 2 - 1:g}")
    if clauses and strict:
        raise HypothesisError(clauses)
    bound = cube_root_bound(rep.degree, rep.lam) if rep.is_regular and rep.lam > 0 else None
    return ExpanderBoundResult(Gamma.n, rep.degree, rep.lam, bound, not clauses, tuple(clauses))


@dataclass(frozen=True)
class DiagnosticsReport:
    n: int
    d: int
    lam: float
    k: int
    lambda1: float
    lambda1_lower: float
    vinf: float
    vinf_upper: float
    frobenius_zero: float
    tail_sum: float  # sum_{i>=2} lambda_i q_i
    top_term: float  # lambda_1 <vv^T, Lam (A_Gamma - lam I) Lam>
    tail_upper: float  # (8 k^2 lam / n) sum_{i=2..k} lambda_i
    top_lower: float  # ((d + lam)/n - 8 k^2 lam / n) lambda_1
    top_ratio: float  # sum_{i<=k} lambda_i / lambda_1
    bound: float
    checks: dict = field(default_factory=dict)

    @property
    def final_inequality_ok(self) -> bool:
        return self.checks["final"]

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self):
        return {
            "n": self.n,
            "d": self.d,
            "lambda": self.lam,
            "k": self.k,
            "lambda1": self.lambda1,
            "lambda1_lower": self.lambda1_lower,
            "vinf": self.vinf,
            "vinf_upper": self.vinf_upper,
            "frobenius_zero": self.frobenius_zero,
            "tail_sum": self.tail_sum,
            "top_term": self.top_term,
            "tail_upper": self.tail_upper,
            "top_lower": self.top_lower,
            "top_ratio": self.top_ratio,
            "bound": self.bound,
            "final_inequality_ok": self.final_inequality_ok,
            "checks": dict(self.checks),
        }


def proof_diagnostics(A, Gamma: Graph, rel_tol: float = 1e-9) -> DiagnosticsReport:
    """Evaluate every intermediate quantity of the cube-root lower bound on ``A``.

    ``A`` must be a 1-regular weighted adjacency matrix of a subgraph of
    complement(Gamma).  Each step of the argument becomes a boolean in
    ``checks``; a false entry on valid input means numerical trouble.
    ``rel_tol`` is the slack (relative to the larger side) allowed on
    the floating-point comparisons.
    """
    a = _as_array(A)
    n = a.shape[0]
    if n != Gamma.n:
        raise InputError(f"A has dim {n} but Gamma has {Gamma.n} vertices")
    rep = spectral_params(Gamma)
    if not rep.is_regular:
        raise PreconditionError("Gamma is not regular")
    d, lam = rep.degree, rep.lam
    a_gamma = Gamma.adjacency(np.float64)

    sp = eigen_sym(a, vectors=True)
    ev, vecs = sp.eigenvalues, sp.eigenvectors
    v = vecs[:, 0]
    if v.sum() < 0:
        v = -v
    x = lam * np.eye(n) - a_gamma
    frob = float(np.sum(a * (v[:, None] * x * v[None, :])))
    fnorm = float(np.linalg.norm(a))
    bad = (a != 0) & ((a_gamma != 0) | np.eye(n, dtype=bool))
    if bad.any():
        i, j = (int(t) for t in np.argwhere(bad)[0])
        raise SupportError(
            f"A[{i},{j}] = {a[i, j]:g} lies on a Gamma edge or the diagonal; Frobenius product = {frob:.3e}",
            frob,
        )

    norms = np.sqrt((a * a).sum(axis=1))
    worst = float(np.abs(norms - 1).max())
    if worst > 1e-6:
        raise PreconditionError(f"A is not 1-regular: worst row norm deviation {worst:.3e}")

    k = int(np.count_nonzero(ev >= -sp.tolerance))
    lam1 = float(ev[0])
    vinf = float(np.abs(v).max())
    q = np.einsum("ji,jk,ki->i", vecs * v[:, None], x, vecs * v[:, None])
    tail_sum = float(np.dot(ev[1:], q[1:]))
    top_term = -lam1 * float(q[0])
    c = 8 * k * k * lam / n
    tail_upper = c * float(ev[1:k].sum())
    top_lower = ((d + lam) / n - c) * lam1
    top = float(ev[:k].sum())
    ratio = top / lam1
    bound = cube_root_bound(d, lam)

    def le(lhs, rhs):
        return bool(lhs <= rhs + rel_tol * max(1.0, abs(lhs), abs(rhs)))

    checks = {
        "lambda1": le(np.sqrt(n) / (2 * k), lam1),
        "vinf": le(vinf, 2 * k / np.sqrt(n)),
        "frobenius": bool(abs(frob) <= 1e-12 * max(1.0, fnorm)),
        "tail_identity": bool(abs(tail_sum - top_term) <= rel_tol * max(1.0, abs(tail_sum), abs(top_term))),
        "tail_bound": le(tail_sum, tail_upper),
        "top_bound": le(top_lower, top_term),
        "ratio": le((d + lam) / (8 * k * k * lam), ratio) and le(ratio, k),
        "final": le(bound, k),
    }
    return DiagnosticsReport(
        n, d, lam, k, lam1, float(np.sqrt(n) / (2 * k)), vinf, float(2 * k / np.sqrt(n)), frob,
        tail_sum, top_term, tail_upper, top_lower, ratio, bound, checks,
    )


# ------------------------------------------------------------ witnesses

def soundness_margin(a: np.ndarray) -> float:
    return 1e-6 * max(1.0, float(np.linalg.norm(a)))


def sound_nonneg_count(a: np.ndarray) -> tuple[int, float | None]:
    """(count of eigenvalues >= -eps, smallest |eigenvalue| counted negative)."""
    eps = soundness_margin(a)
    ev = np.linalg.eigvalsh(a)
    neg = ev[ev < -eps]
    return int(len(ev) - len(neg)), (float(-neg.max()) if len(neg) else None)


@dataclass(frozen=True)
class WitnessCertificate:
    matrix: SymmetricMatrix
    upper_bound: int
    strategy: str
    margin: float | None

    def digest(self) -> str:
        return _digest(self.matrix.array)

    def to_dict(self, include_matrix: bool = False):
        out = {
            "strategy": self.strategy,
            "upper_bound": self.upper_bound,
            "margin": self.margin,
            "dim": self.matrix.dim,
            "sha256": self.digest(),
        }
        if include_matrix:
            out["matrix"] = self.matrix.to_json()
        return out


def _digest(a: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(a, dtype="<f8").tobytes()).hexdigest()


def _certify(a: np.ndarray, strategy: str) -> WitnessCertificate:
    count, margin = sound_nonneg_count(a)
    return WitnessCertificate(SymmetricMatrix(a), count, strategy, margin)


def johnson_matrix(n: int, k: int, l: int) -> np.ndarray:
    """Integer matrix U U^T - (k - l) I - l J, i.e. |A & B| - l off the diagonal."""
    _check_johnson(n, k, {l})
    u = incidence_matrix(n, k)
    m = u @ u.T - l
    np.fill_diagonal(m, 0)
    return m


def johnson_witness(n: int, k: int, l: int, check_support: bool = True) -> WitnessCertificate:
    m = johnson_matrix(n, k, l)
    if check_support:
        g = johnson(n, k, {l})
        if not np.array_equal(m != 0, g.adjacency(bool)):
            raise ValidationError("witness support differs from the edge set of G(n, k, {l})")
    return _certify(m.astype(np.float64), "johnson_closed_form")


def _match_johnson(g: Graph):
    """(n, k, l) with g == G(n, k, {l}) under the lexicographic labelling, else None."""
    for big in range(2, g.n + 2):
        for k in range(1, big):
            if comb(big, k) != g.n or 2 * k > big:
                continue
            for l in range(k):
                if johnson(big, k, {l}) == g:
                    return big, k, l
    return None


def witness_search(g: Graph, strategies=None, seed: int = 0, rounds: int = 32) -> WitnessCertificate:
    """Smallest sound n>=0 count over a fixed menu of weightings of ``g``.

    Random strategies draw one child ``SeedSequence`` per round, so the
    result depends only on (g, strategies, seed, rounds).  Ties go to the
    earlier strategy in ``STRATEGIES``, then to the smaller matrix digest.
    The Johnson closed form is tried only when ``g`` equals some
    G(n, k, {l}) in its lexicographic labelling.
    """
    if g.n > WITNESS_SEARCH_MAX_N:
        raise SizeError(f"witness search is capped at n = {WITNESS_SEARCH_MAX_N}")
    chosen = set(STRATEGIES if strategies is None else strategies)
    unknown = chosen - set(STRATEGIES)
    if unknown:
        raise InputError(f"unknown strategies {sorted(unknown)}")
    chosen.add("unweighted")
    adj = g.adjacency(np.float64)
    upper = np.triu(adj, 1) != 0
    cands = [_certify(adj, "unweighted")]
    if "negated" in chosen:
        cands.append(_certify(-adj, "negated"))
    if "johnson_closed_form" in chosen:
        match = _match_johnson(g)
        if match is not None:
            cands.append(johnson_witness(*match, check_support=False))
    children = np.random.SeedSequence(seed).spawn(rounds)
    for child in children:
        gauss_ss, sign_ss = child.spawn(2)
        if "random_gaussian" in chosen:
            w = np.zeros_like(adj)
            w[upper] = np.random.default_rng(gauss_ss).standard_normal(int(upper.sum()))
            cands.append(_certify(w + w.T, "random_gaussian"))
        if "sign_perturbed" in chosen:
            w = np.zeros_like(adj)
            w[upper] = np.random.default_rng(sign_ss).choice([-1.0, 1.0], int(upper.sum()))
            cands.append(_certify(w + w.T, "sign_perturbed"))
    return min(cands, key=lambda c: (c.upper_bound, STRATEGIES.index(c.strategy), c.digest()))


def unweighted_nonneg(g: Graph) -> int:
    return inertia_float(g.adjacency(np.float64)).n_nonneg


# ------------------------------------------------------------ other bounds

def orth_rep_lower_bound(g: Graph, vectors) -> float:
    """n / d from unit vectors in R^d with adjacent vertices orthogonal."""
    x = np.asarray(vectors, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] != g.n:
        raise InputError(f"need one vector per vertex: expected {g.n} rows, got shape {x.shape}")
    norms = np.linalg.norm(x, axis=1)
    off = np.flatnonzero(np.abs(norms - 1) > 1e-8)
    if off.size:
        raise InputError(f"vector {int(off[0])} has norm {norms[off[0]]:.12g}, not 1")
    gram = x @ x.T
    for u, v in sorted(g.edges):
        if abs(gram[u, v]) > 1e-8:
            raise ValidationError(f"edge ({u}, {v}) has inner product {gram[u, v]:.3e}, expected 0")
    return g.n / x.shape[1]


def haemers_witness(g: Graph, m) -> int:
    """2 * rank(m) for a real matrix m that fits g (unit diagonal, zero on non-edges)."""
    a = np.asarray(m, dtype=np.float64)
    if a.shape != (g.n, g.n):
        raise InputError(f"fit matrix must be {g.n} x {g.n}, got {a.shape}")
    for v in range(g.n):
        if a[v, v] != 1:
            raise ValidationError(f"diagonal entry ({v}, {v}) = {a[v, v]:g}, expected 1")
    nonedge = ~g.adjacency(bool)
    np.fill_diagonal(nonedge, False)
    bad = np.argwhere(nonedge & (a != 0))
    if bad.size:
        i, j = (int(t) for t in bad[0])
        raise ValidationError(f"entry ({i}, {j}) = {a[i, j]:g} but {i} and {j} are not adjacent")
    s = np.linalg.svd(a, compute_uv=False)
    return 2 * int(np.count_nonzero(s > 1e-8 * s[0]))
