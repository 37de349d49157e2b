"""Immutable simple graphs, graph6 I/O and the structural operations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import DecodeError, InputError

MAX_VERTICES = 1 << 16


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Stored as one adjacency bitmask (a Python int) per vertex, which is also
    the canonical bit-level form used for equality and hashing.
    """

    __slots__ = ("_n", "_masks", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not 1 <= n <= MAX_VERTICES:
            raise InputError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._n = n
        self._masks = tuple(masks)

    @classmethod
    def _from_masks(cls, n: int, masks) -> Graph:
        # internal: masks already symmetric and loop-free
        g = cls.__new__(cls)
        g._n = n
        g._masks = tuple(int(m) for m in masks)
        return g

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        a = np.asarray(adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("adjacency must be square")
        nz = a != 0
        if not np.array_equal(nz, nz.T):
            raise InputError("adjacency pattern is not symmetric")
        if nz.diagonal().any():
            raise InputError("adjacency has a nonzero diagonal entry")
        n = a.shape[0]
        if not 1 <= n <= MAX_VERTICES:
            raise InputError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
        packed = np.packbits(nz[:, ::-1], axis=1)
        masks = [int.from_bytes(row.tobytes(), "big") >> (-n % 8) for row in packed]
        return cls._from_masks(n, masks)

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.iter_edges())

    def iter_edges(self):
        for v, m in enumerate(self._masks):
            m >>= v + 1
            u = v + 1
            while m:
                if m & 1:
                    yield (v, u)
                m >>= 1
                u += 1

    @cached_property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._masks[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        m = self._masks[v]
        return [u for u in range(self._n) if (m >> u) & 1]

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self._masks]

    def adjacency(self, dtype=np.int64) -> np.ndarray:
        n = self._n
        nbytes = (n + 7) // 8
        buf = b"".join(m.to_bytes(nbytes, "little") for m in self._masks)
        bits = np.unpackbits(np.frombuffer(buf, np.uint8).reshape(n, nbytes), axis=1, bitorder="little")
        return bits[:, :n].astype(dtype)

    def induced(self, vertices) -> Graph:
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        masks = []
        for v in vs:
            m = 0
            for u in self.neighbors(v):
                if u in pos:
                    m |= 1 << pos[u]
            masks.append(m)
        return Graph._from_masks(len(vs), masks)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._masks == other._masks

    def __hash__(self):
        return hash((self._n, self._masks))

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.num_edges})"


def _upper_bits(g: Graph):
    """x(i, j) in graph6 order: j = 1..n-1, then i = 0..j-1."""
    masks = g.masks
    for j in range(1, g.n):
        mj = masks[j]
        for i in range(j):
            yield (mj >> i) & 1


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def graph6_encode(g: Graph) -> bytes:
    out = bytearray(_encode_size(g.n))
    acc = 0
    k = 0
    for b in _upper_bits(g):
        acc = (acc << 1) | b
        k += 1
        if k == 6:
            out.append(acc + 63)
            acc = k = 0
    if k:
        out.append((acc << (6 - k)) + 63)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    """Parse one graph6 record (an optional ``>>graph6<<`` header is allowed)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    start = 0
    if data.startswith(b">>graph6<<"):
        start = 10
    for off in range(start, len(data)):
        if not 63 <= data[off] <= 126:
            raise DecodeError(f"byte {data[off]} outside 63..126", off)
    if len(data) == start:
        raise DecodeError("empty record", start)

    pos = start
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    else:
        width = 3
        pos += 1
        if pos < len(data) and data[pos] == 126:
            width = 6
            pos += 1
        if pos + width > len(data):
            raise DecodeError("truncated size field", len(data))
        n = 0
        for i in range(width):
            n = (n << 6) | (data[pos + i] - 63)
        pos += width
    if not 1 <= n <= MAX_VERTICES:
        raise DecodeError(f"vertex count {n} outside [1, {MAX_VERTICES}]", start)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise DecodeError(f"body has {len(body)} bytes, expected {nbytes}", pos + min(len(body), nbytes))
    pad = nbytes * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise DecodeError("nonzero padding bits", pos + nbytes - 1)

    masks = [0] * n
    i, j = 0, 1
    for b in body:
        v = b - 63
        for shift in range(5, -1, -1):
            if j >= n:
                break
            if (v >> shift) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._from_masks(n, masks)


def read_graph6_lines(text: bytes | str) -> list[Graph]:
    if isinstance(text, str):
        text = text.encode("ascii")
    return [graph6_decode(line) for line in text.splitlines() if line.strip()]


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._from_masks(g.n, [full & ~m & ~(1 << v) for v, m in enumerate(g.masks)])


def add_universal(g: Graph, t: int) -> Graph:
    """Append ``t`` vertices adjacent to everything, including each other."""
    if t < 0:
        raise InputError("t must be non-negative")
    n = g.n + t
    full = (1 << n) - 1
    new_bits = full ^ ((1 << g.n) - 1)
    masks = [m | new_bits for m in g.masks]
    masks += [full & ~(1 << v) for v in range(g.n, n)]
    return Graph._from_masks(n, masks)


def is_triangle_free(g: Graph) -> bool:
    masks = g.masks
    for u, v in g.iter_edges():
        if masks[u] & masks[v]:
            return False
    return True


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    masks = g.masks
    while frontier:
        nxt = 0
        m = frontier
        v = 0
        while m:
            if m & 1:
                nxt |= masks[v]
            m >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


@dataclass(frozen=True)
class ExpanderReport:
    n: int
    is_regular: bool
    degree: int | None
    lam: float
    satisfies_thm13_hypothesis: bool
    lambda2: float
    lambda_min: float

    def to_dict(self):
        return {
            "n": self.n,
            "is_regular": self.is_regular,
            "degree": self.degree,
            "lambda": self.lam,
            "lambda2": self.lambda2,
            "lambda_min": self.lambda_min,
            "satisfies_thm13_hypothesis": self.satisfies_thm13_hypothesis,
        }


def spectral_params(g: Graph) -> ExpanderReport:
    """Regularity (combinatorial) and max(|lambda_2|, |lambda_n|) of A_G.

    For a bipartite graph lambda_n = -lambda_1, so lambda equals the largest
    eigenvalue; ``lambda2`` is reported separately for that case.
    """
    from .spectra import eigen_sym

    if g.n < 2:
        raise InputError("spectral_params needs at least 2 vertices")
    degs = g.degrees()
    regular = min(degs) == max(degs)
    ev = eigen_sym(g.adjacency(np.float64)).eigenvalues
    lam = float(max(abs(ev[1]), abs(ev[-1])))
    d = degs[0] if regular else None
    ok = regular and d < g.n / 2 - 1
    return ExpanderReport(g.n, regular, d, lam, ok, float(ev[1]), float(ev[-1]))
