"""Exact combinatorial invariants and isomorphism-free graph enumeration."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .errors import CoverageError, SizeError
from .graph import Graph, complement, graph6_decode, is_connected

ALPHA_MAX_N = kernels.CLIQUE_MAX_N
ENUM_MAX_N = 9

# Audited classical values; R(2, b) = b is handled by rule.
RAMSEY = {
    (3, 3): 6,
    (3, 4): 9,
    (3, 5): 14,
    (4, 4): 18,
}


def ramsey(a: int, b: int) -> int | None:
    a, b = min(a, b), max(a, b)
    if a == 1:
        return 1
    if a == 2:
        return b
    return RAMSEY.get((a, b))


def _uint_masks(masks) -> np.ndarray:
    return np.array(masks, dtype=np.uint64)


def clique_number(g: Graph) -> int:
    if g.n > ALPHA_MAX_N:
        raise SizeError(f"exact clique search is capped at n = {ALPHA_MAX_N}")
    return int(kernels.max_clique_size(_uint_masks(g.masks), g.n))


def max_independent_set(g: Graph) -> list[int]:
    """One maximum independent set, sorted."""
    if g.n > ALPHA_MAX_N:
        raise SizeError(f"exact independence search is capped at n = {ALPHA_MAX_N}")
    _, mask = kernels.max_clique(_uint_masks(complement(g).masks), g.n)
    mask = int(mask)
    return [v for v in range(g.n) if mask >> v & 1]


def alpha_exact(g: Graph) -> int:
    """Independence number via maximum clique of the complement."""
    if g.n > ALPHA_MAX_N:
        raise SizeError(f"exact independence search is capped at n = {ALPHA_MAX_N}")
    return clique_number(complement(g))


def mu_lower(n: int) -> int:
    """min{ab : R(a+1, b+1) > n}, using only the tabulated Ramsey numbers."""
    if not 1 <= n <= 9:
        raise CoverageError(f"mu_lower covers 1 <= n <= 9, got {n}")
    best = n  # a = 1, b = n: R(2, n+1) = n+1 > n
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if a * b >= best:
                break
            r = ramsey(a + 1, b + 1)
            if r is None:
                raise CoverageError(f"R({a + 1}, {b + 1}) is needed but not tabulated")
            if r > n:
                best = a * b
    return best


# ------------------------------------------------------------- enumeration

def code_to_masks(code: int, n: int) -> list[int]:
    """Inverse of the canonical code: bits x(i, j), column-major, first bit most significant."""
    masks = [0] * n
    pos = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> pos) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            pos -= 1
    return masks


def canonical_form(g: Graph) -> tuple[int, Graph]:
    """(code, relabelled graph); isomorphic inputs give equal codes."""
    if g.n > kernels.CANON_MAX_N:
        raise SizeError(f"canonical form is capped at n = {kernels.CANON_MAX_N}")
    code, _ = kernels.canonical_code(np.array(g.masks, dtype=np.int64), g.n)
    code = int(code)
    return code, Graph._from_masks(g.n, code_to_masks(code, g.n))


@lru_cache(maxsize=None)
def _all_codes(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    parents = _all_codes(n - 1)
    m = n - 1
    arr = np.zeros((len(parents), m), dtype=np.int64)
    for p, code in enumerate(parents):
        arr[p] = code_to_masks(code, m)
    codes = kernels.augment_codes(arr, m)
    codes = np.unique(codes[codes >= 0])
    return tuple(int(c) for c in codes)


def enumerate_graphs(n: int, connected: bool = True) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, in ascending code order.

    Classes on n vertices are grown from classes on n - 1 by attaching a
    minimum-degree vertex in every possible way, then deduplicated by
    canonical code.
    """
    if not 1 <= n <= ENUM_MAX_N:
        raise SizeError(f"enumeration covers 1 <= n <= {ENUM_MAX_N}, got {n}")
    for code in _all_codes(n):
        g = Graph._from_masks(n, code_to_masks(code, n))
        if not connected or is_connected(g):
            yield g


def enumerate_connected(n: int) -> Iterator[Graph]:
    return enumerate_graphs(n, connected=True)


def graphs_from_g6_stream(lines, connected: bool = True) -> dict[int, list[Graph]]:
    """Decode an external graph6 stream, dropping repeats up to isomorphism."""
    seen: set[tuple[int, int]] = set()
    out: dict[int, list[tuple[int, Graph]]] = {}
    for line in lines:
        if isinstance(line, str):
            line = line.encode("ascii")
        if not line.strip():
            continue
        g = graph6_decode(line)
        if connected and not is_connected(g):
            continue
        code, cg = canonical_form(g)
        if (g.n, code) in seen:
            continue
        seen.add((g.n, code))
        out.setdefault(g.n, []).append((code, cg))
    return {n: [g for _, g in sorted(items, key=lambda t: t[0])] for n, items in sorted(out.items())}
