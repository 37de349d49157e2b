"""Deterministic generators for the graph families used in the checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ParameterError, SizeError
from .graph import Graph

JOHNSON_MAX_VERTICES = 10**6


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def _require_prime(q: int):
    if not is_prime(q):
        raise ParameterError(f"q = {q} is not prime (prime-power fields are not supported)")


# ------------------------------------------------------------ Johnson family

def ksubsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of range(n) in lexicographic order (index = rank)."""
    return list(itertools.combinations(range(n), k))


def subset_rank(subset, n: int) -> int:
    """Lexicographic rank of a strictly increasing k-subset of range(n)."""
    k = len(subset)
    rank = 0
    prev = -1
    for i, x in enumerate(subset):
        for y in range(prev + 1, x):
            rank += comb(n - y - 1, k - i - 1)
        prev = x
    return rank


def _check_johnson(n: int, k: int, L, size_guard: bool = True) -> frozenset[int]:
    if not n > k >= 1:
        raise ParameterError(f"need n > k >= 1, got n={n}, k={k}")
    L = frozenset(int(x) for x in L)
    bad = [x for x in L if not 0 <= x < k]
    if bad:
        raise ParameterError(f"L must lie in [0, {k - 1}], got {sorted(bad)}")
    if size_guard and comb(n, k) > JOHNSON_MAX_VERTICES:
        raise SizeError(f"C({n},{k}) = {comb(n, k)} exceeds {JOHNSON_MAX_VERTICES}")
    return L


def incidence_matrix(n: int, k: int) -> np.ndarray:
    """The C(n,k) x n 0/1 matrix U whose rows are subset indicators."""
    subsets = ksubsets(n, k)
    u = np.zeros((len(subsets), n), dtype=np.int64)
    for r, s in enumerate(subsets):
        u[r, list(s)] = 1
    return u


def intersection_matrix(n: int, k: int) -> np.ndarray:
    u = incidence_matrix(n, k)
    return u @ u.T


def johnson(n: int, k: int, L) -> Graph:
    """Generalized Johnson graph G(n, k, L): A ~ B iff |A & B| not in L."""
    L = _check_johnson(n, k, L)
    inter = intersection_matrix(n, k)
    adj = ~np.isin(inter, list(L)) if L else np.ones_like(inter, dtype=bool)
    np.fill_diagonal(adj, False)
    return Graph.from_adjacency(adj)


# ------------------------------------------------------------ Paley

def quadratic_residues(q: int) -> set[int]:
    return {(x * x) % q for x in range(1, q)}


def paley(q: int) -> Graph:
    if not is_prime(q) or q % 4 != 1:
        raise ParameterError(f"paley needs a prime q = 1 (mod 4), got {q}")
    res = quadratic_residues(q)
    return Graph(q, [(u, v) for u in range(q) for v in range(u + 1, q) if (v - u) % q in res])


# ------------------------------------------------------------ projective planes

@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        _require_prime(self.p)

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Points of PG(2, q): nonzero triples scaled so the first nonzero entry is 1, sorted."""
    field = PrimeField(q)
    pts = set()
    for c in itertools.product(range(q), repeat=3):
        if any(c):
            lead = next(x for x in c if x)
            s = field.inv(lead)
            pts.add(tuple((x * s) % q for x in c))
    return sorted(pts)


def _dot(x, y, q: int) -> int:
    return (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q


def _orthogonality(q: int) -> tuple[list, np.ndarray]:
    pts = projective_points(q)
    p = np.array(pts, dtype=np.int64)
    return pts, (p @ p.T) % q == 0


def polarity(q: int) -> tuple[Graph, frozenset[int]]:
    """Polarity graph of PG(2, q): x ~ y (x != y) iff x.y = 0.

    Returns the loopless graph and its absolute points {x : x.x = 0}.
    """
    _require_prime(q)
    _, orth = _orthogonality(q)
    absolute = frozenset(int(i) for i in np.flatnonzero(orth.diagonal()))
    adj = orth.copy()
    np.fill_diagonal(adj, False)
    return Graph.from_adjacency(adj), absolute


def polarity_form_matrix(q: int) -> np.ndarray:
    """0/1 matrix of x.y = 0 including the diagonal, i.e. loops at absolute points."""
    _require_prime(q)
    return _orthogonality(q)[1].astype(np.float64)


def polarity_core(q: int) -> tuple[Graph, list[int]]:
    """Subgraph of the polarity graph induced on the non-absolute points."""
    g, absolute = polarity(q)
    keep = [v for v in range(g.n) if v not in absolute]
    return g.induced(keep), keep


def incidence(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q): points first, then lines."""
    _require_prime(q)
    _, orth = _orthogonality(q)
    m = orth.shape[0]
    adj = np.zeros((2 * m, 2 * m), dtype=bool)
    adj[:m, m:] = orth
    adj[m:, :m] = orth.T
    return Graph.from_adjacency(adj)


# ------------------------------------------------------------ fixtures

def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterError("complete needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    if n < 1:
        raise ParameterError("empty needs n >= 1")
    return Graph(n)


def petersen() -> Graph:
    return johnson(5, 2, {1})


def heawood() -> Graph:
    return incidence(2)


STANDARD_NAMES = ("cycle", "path", "complete", "empty", "petersen", "heawood")


def standard(name: str, n: int | None = None) -> Graph:
    if name == "cycle":
        return cycle(n)
    if name == "path":
        return path(n)
    if name == "complete":
        return complete(n)
    if name == "empty":
        return empty(n)
    if name == "petersen":
        if n not in (None, 10):
            raise ParameterError("petersen has exactly 10 vertices")
        return petersen()
    if name == "heawood":
        if n not in (None, 14):
            raise ParameterError("heawood has exactly 14 vertices")
        return heawood()
    raise ParameterError(f"unknown standard graph {name!r}; choose from {', '.join(STANDARD_NAMES)}")
