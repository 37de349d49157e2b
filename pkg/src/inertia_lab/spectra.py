"""Eigenvalues and inertia, floating point and exact.

The exact path is a division-free Berkowitz characteristic polynomial
followed by Sturm sign counting on integer polynomials.  Repeated roots are
counted by running Sturm on p, gcd(p, p'), gcd of that with its derivative,
and so on: a root of multiplicity m is seen by the first m members.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels
from .errors import InputError, SizeError

EXACT_MAX_DIM = 16


class SymmetricMatrix:
    """Dense real symmetric matrix; the lower triangle is authoritative."""

    __slots__ = ("_a",)

    def __init__(self, values):
        a = np.array(values, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InputError("matrix must be square with dim >= 1")
        if not np.array_equal(a, a.T):
            raise InputError("matrix is not symmetric")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def from_lower(cls, dim: int, lower) -> SymmetricMatrix:
        vals = np.asarray(lower, dtype=np.float64)
        if vals.shape != (dim * (dim + 1) // 2,):
            raise InputError(f"expected {dim * (dim + 1) // 2} lower-triangle entries")
        a = np.zeros((dim, dim))
        a[np.tril_indices(dim)] = vals
        a = np.tril(a) + np.tril(a, -1).T
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    def to_json(self) -> dict:
        return {"dim": self.dim, "lower_triangle_row_major": self._a[np.tril_indices(self.dim)].tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> SymmetricMatrix:
        return cls.from_lower(int(obj["dim"]), obj["lower_triangle_row_major"])


def _as_array(m) -> np.ndarray:
    if isinstance(m, SymmetricMatrix):
        return m.array
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError("matrix must be square with dim >= 1")
    if not np.array_equal(a, a.T):
        raise InputError("matrix is not symmetric")
    return a


def default_tolerance(a) -> float:
    return 1e-8 * max(1.0, float(np.linalg.norm(_as_array(a))))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # descending
    tolerance: float
    eigenvectors: np.ndarray | None = None  # columns match eigenvalues


def eigen_sym(m, vectors: bool = False) -> Spectrum:
    a = _as_array(m)
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    eps = 1e-8 * max(1.0, float(np.linalg.norm(a)))
    if vectors:
        w, v = np.linalg.eigh(a)
        return Spectrum(w[::-1].copy(), eps, v[:, ::-1].copy())
    w = np.linalg.eigvalsh(a)
    return Spectrum(w[::-1].copy(), eps)


@dataclass(frozen=True)
class InertiaTriple:
    n_pos: int
    n_zero: int
    n_neg: int
    mode: str  # "float" or "exact"
    tolerance: float | None = None

    @property
    def n_nonneg(self) -> int:
        return self.n_pos + self.n_zero

    @property
    def dim(self) -> int:
        return self.n_pos + self.n_zero + self.n_neg

    def counts(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_zero, self.n_neg)

    def to_dict(self) -> dict:
        return {
            "n_pos": self.n_pos,
            "n_zero": self.n_zero,
            "n_neg": self.n_neg,
            "n_nonneg": self.n_nonneg,
            "mode": self.mode,
            "tolerance": self.tolerance,
        }


def inertia_float(m, tol: float | None = None) -> InertiaTriple:
    sp = eigen_sym(m)
    eps = sp.tolerance if tol is None else tol
    ev = sp.eigenvalues
    pos = int(np.count_nonzero(ev > eps))
    neg = int(np.count_nonzero(ev < -eps))
    return InertiaTriple(pos, len(ev) - pos - neg, neg, "float", eps)


# ---------------------------------------------------------------- exact path

class IntegerSymmetricMatrix:
    """Symmetric matrix of Python ints (arbitrary precision)."""

    __slots__ = ("rows",)

    def __init__(self, values):
        rows = []
        for row in values:
            r = []
            for x in row:
                if not isinstance(x, (int, np.integer)) and not float(x).is_integer():
                    raise InputError(f"non-integer entry {x!r}")
                r.append(int(x))
            rows.append(tuple(r))
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise InputError("matrix must be square with dim >= 1")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise InputError(f"matrix is not symmetric at ({i}, {j})")
        self.rows = tuple(rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def max_abs(self) -> int:
        return max(abs(x) for r in self.rows for x in r)

    def to_json(self) -> dict:
        return {"dim": self.dim, "lower_triangle_row_major": [self.rows[i][j] for i in range(self.dim) for j in range(i + 1)]}


def _as_int_matrix(m) -> IntegerSymmetricMatrix:
    if isinstance(m, IntegerSymmetricMatrix):
        return m
    if isinstance(m, np.ndarray) and m.dtype.kind in "iub":
        return IntegerSymmetricMatrix(m.astype(object).tolist())
    return IntegerSymmetricMatrix(m)


@dataclass(frozen=True)
class IntegerPolynomial:
    coefficients: tuple[int, ...]  # ascending degree

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coefficients]


def _berkowitz_bigint(rows) -> list[int]:
    n = len(rows)
    poly = [1, -rows[0][0]]
    for r in range(1, n):
        toe = [1, -rows[r][r]]
        vec = [rows[i][r] for i in range(r)]
        row_r = rows[r][:r]
        for _ in range(r):
            toe.append(-sum(x * y for x, y in zip(row_r, vec)))
            vec = [sum(rows[i][j] * vec[j] for j in range(r)) for i in range(r)]
        poly = [sum(toe[i - j] * poly[j] for j in range(min(i, r) + 1)) for i in range(r + 2)]
    return poly


def _int64_safe(n: int, bound: int) -> bool:
    # Berkowitz intermediates are sums of <= n+1 terms each <= (n*bound)^(n+1)
    return (n + 1) * (n * bound + 1) ** (n + 2) < 2**62


def charpoly_exact(m) -> IntegerPolynomial:
    """det(xI - m) with exact integer coefficients (ascending order)."""
    im = _as_int_matrix(m)
    n = im.dim
    if n > EXACT_MAX_DIM:
        raise SizeError(f"exact mode is capped at dim {EXACT_MAX_DIM}, got {n}")
    if _int64_safe(n, im.max_abs()):
        desc = kernels.berkowitz_int64(np.array(im.rows, dtype=np.int64)).tolist()
    else:
        desc = _berkowitz_bigint(im.rows)
    return IntegerPolynomial(tuple(int(c) for c in reversed(desc)))


# Integer polynomials below are ascending coefficient lists without trailing zeros.

def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _primitive(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    if g > 1:
        p = [c // g for c in p]
    return p


def _derivative(p):
    return _trim([i * p[i] for i in range(1, len(p))] or [0])


def _pseudo_rem(f, g):
    """Remainder of lc(g)^(deg f - deg g + 1) * f by g."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    delta = len(f) - len(g) + 1
    while len(r) - 1 >= dg and any(r):
        shift = len(r) - 1 - dg
        lead = r[-1]
        r = [c * lc for c in r]
        for i in range(dg + 1):
            r[shift + i] -= lead * g[i]
        r.pop()
        delta -= 1
        _trim(r)
        if len(r) == 1 and r[0] == 0:
            break
    if delta > 0:
        r = [c * lc**delta for c in r]
    return _trim(r) if r else [0]


def _sturm_chain(p):
    """Sturm sequence of p (positive rescalings only); the last member is gcd(p, p')."""
    chain = [_primitive(list(p))]
    d = _derivative(p)
    if d == [0]:
        return chain
    chain.append(_primitive(d))
    while len(chain[-1]) > 1:
        f, g = chain[-2], chain[-1]
        r = _pseudo_rem(f, g)
        if r == [0]:
            break
        k = len(f) - len(g) + 1
        # pseudo-rem carries lc(g)^k; keep -rem up to a positive factor
        if g[-1] < 0 and k % 2 == 1:
            nxt = r
        else:
            nxt = [-c for c in r]
        chain.append(_primitive(nxt))
    return chain


def _variations(signs):
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _sign(x):
    return (x > 0) - (x < 0)


def _sign_at_minus_inf(p):
    return _sign(p[-1]) * (1 if (len(p) - 1) % 2 == 0 else -1)


def _negative_count_from_chain(chain) -> int:
    return _variations([_sign_at_minus_inf(q) for q in chain]) - _variations([_sign(q[0]) for q in chain])


def count_negative_roots_distinct(p) -> int:
    """Distinct roots in (-inf, 0) of an integer polynomial with p(0) != 0."""
    return _negative_count_from_chain(_sturm_chain(p))


def count_roots_in(p, a, b) -> int:
    """Distinct roots in (a, b] by Sturm's theorem; a, b exact rationals or ints."""
    chain = _sturm_chain(list(p))

    def at(x):
        out = []
        for q in chain:
            acc = 0
            for c in reversed(q):
                acc = acc * x + c
            out.append(_sign(acc))
        return _variations(out)

    return at(a) - at(b)


def _negative_roots_with_multiplicity(p) -> int:
    total = 0
    cur = list(p)
    while len(cur) > 1:
        chain = _sturm_chain(cur)
        total += _negative_count_from_chain(chain)
        cur = chain[-1]
    return total


def inertia_from_charpoly(poly: IntegerPolynomial) -> InertiaTriple:
    coeffs = list(poly.coefficients)
    dim = len(coeffs) - 1
    zeros = 0
    while zeros < dim and coeffs[zeros] == 0:
        zeros += 1
    deflated = _trim(coeffs[zeros:])
    neg = _negative_roots_with_multiplicity(deflated) if len(deflated) > 1 else 0
    return InertiaTriple(dim - zeros - neg, zeros, neg, "exact", None)


def inertia_exact(m) -> InertiaTriple:
    return inertia_from_charpoly(charpoly_exact(m))
