"""Hot inner loops.

Every function here is written in the numba-compatible subset of Python so
the same source runs compiled (default) or interpreted when
``INERTIA_LAB_NUMBA=0``.  Callers validate sizes; kernels do not.

Bit conventions: ``masks[v]`` has bit ``u`` set iff ``u ~ v``.
"""
import numpy as np

from ._jit import njit

# Bits in a canonical code are C(n, 2); 55 for n = 11.
CANON_MAX_N = 11
CLIQUE_MAX_N = 64
SWEEP_MAX_N = 24

_M1 = 0x5555555555555555
_M2 = 0x3333333333333333
_M4 = 0x0F0F0F0F0F0F0F0F


@njit
def popcount(x):
    # x is a non-negative int64; no multiply so interpreted ints cannot overflow.
    x = x - ((x >> 1) & _M1)
    x = (x & _M2) + ((x >> 2) & _M2)
    x = (x + (x >> 4)) & _M4
    x = x + (x >> 8)
    x = x + (x >> 16)
    x = x + (x >> 32)
    return x & 0x7F


@njit
def _refine_colors(masks, n):
    """Colour refinement (1-WL) with colours numbered by sorted signature."""
    color = np.zeros(n, np.int64)
    ncolors = 1
    sig = np.zeros((n, n + 1), np.int64)
    idx = np.zeros(n, np.int64)
    while True:
        for v in range(n):
            for c in range(n + 1):
                sig[v, c] = 0
            sig[v, 0] = color[v]
            m = masks[v]
            for u in range(n):
                if (m >> u) & 1:
                    sig[v, 1 + color[u]] += 1
        for v in range(n):
            idx[v] = v
        # insertion sort of vertices by signature row
        for i in range(1, n):
            cur = idx[i]
            j = i - 1
            while j >= 0:
                other = idx[j]
                cmp = 0
                for c in range(ncolors + 1):
                    if sig[other, c] != sig[cur, c]:
                        cmp = 1 if sig[other, c] > sig[cur, c] else -1
                        break
                if cmp <= 0:
                    break
                idx[j + 1] = other
                j -= 1
            idx[j + 1] = cur
        new_color = np.zeros(n, np.int64)
        k = 0
        for i in range(n):
            if i > 0:
                a = idx[i - 1]
                b = idx[i]
                for c in range(ncolors + 1):
                    if sig[a, c] != sig[b, c]:
                        k += 1
                        break
            new_color[idx[i]] = k
        if k + 1 == ncolors:
            return color
        ncolors = k + 1
        color = new_color


@njit
def canonical_code(masks, n):
    """Maximum column-major upper-triangle code over colour-respecting orders.

    Returns ``(code, order)`` where ``order[p]`` is the vertex placed at
    canonical position ``p``.  Twins are tried once per search node: swapping
    two twins is an automorphism fixing every placed vertex.
    """
    order = np.zeros(max(n, 1), np.int64)
    best_order = np.zeros(max(n, 1), np.int64)
    if n <= 1:
        return 0, best_order
    color = _refine_colors(masks, n)
    cell = np.sort(color)
    pref = np.zeros(n + 1, np.int64)
    best = np.full(n + 1, -1, np.int64)
    cand = np.zeros(n + 1, np.int64)
    tried = np.zeros(n + 1, np.int64)
    placed = 0
    depth = 0
    while True:
        if depth == n:
            if pref[n] > best[n]:
                for i in range(n + 1):
                    best[i] = pref[i]
                for i in range(n):
                    best_order[i] = order[i]
            depth -= 1
            placed &= ~(1 << order[depth])
            continue
        found = -1
        pv = 0
        c = cand[depth]
        while c < n:
            v = c
            c += 1
            if (placed >> v) & 1:
                continue
            if color[v] != cell[depth]:
                continue
            skip = False
            t = tried[depth]
            u = 0
            while t:
                if t & 1:
                    if ((masks[u] ^ masks[v]) & ~((1 << u) | (1 << v))) == 0:
                        skip = True
                        break
                t >>= 1
                u += 1
            if skip:
                continue
            bits = 0
            for i in range(depth):
                bits = (bits << 1) | ((masks[order[i]] >> v) & 1)
            pv = (pref[depth] << depth) | bits
            tried[depth] |= 1 << v
            if pv < best[depth + 1]:
                continue
            found = v
            break
        cand[depth] = c
        if found < 0:
            if depth == 0:
                break
            depth -= 1
            placed &= ~(1 << order[depth])
            continue
        order[depth] = found
        placed |= 1 << found
        pref[depth + 1] = pv
        depth += 1
        cand[depth] = 0
        tried[depth] = 0
    return best[n], best_order


@njit
def augment_codes(parents, m):
    """Canonical codes of one-vertex extensions of every parent on m vertices.

    The new vertex must have minimum degree in the child; every graph arises
    this way by deleting a minimum-degree vertex.  Rejected slots hold -1.
    """
    nparents = parents.shape[0]
    nsub = 1 << m
    out = np.full(nparents * nsub, -1, np.int64)
    masks = np.zeros(m + 1, np.int64)
    deg = np.zeros(m, np.int64)
    for p in range(nparents):
        for v in range(m):
            deg[v] = popcount(parents[p, v])
        for s in range(nsub):
            d = popcount(s)
            ok = True
            for v in range(m):
                if deg[v] + ((s >> v) & 1) < d:
                    ok = False
                    break
            if not ok:
                continue
            for v in range(m):
                masks[v] = parents[p, v] | (((s >> v) & 1) << m)
            masks[m] = s
            code, _ = canonical_code(masks, m + 1)
            out[p * nsub + s] = code
    return out


@njit
def _lowbit_index(x):
    i = 0
    while ((x >> np.uint64(i)) & np.uint64(1)) == np.uint64(0):
        i += 1
    return i


@njit
def _color_sort(P, adj, order_row, bound_row):
    one = np.uint64(1)
    zero = np.uint64(0)
    k = 0
    color = 0
    Q = P
    while Q != zero:
        color += 1
        R = Q
        while R != zero:
            v = _lowbit_index(R)
            bit = one << np.uint64(v)
            R &= ~bit
            R &= ~adj[v]
            Q &= ~bit
            order_row[k] = v
            bound_row[k] = color
            k += 1
    return k


@njit
def max_clique(adj, n):
    """Branch and bound maximum clique with greedy-colouring bounds (n <= 64).

    Returns (size, vertex bitmask of one maximum clique).
    """
    one = np.uint64(1)
    zero = np.uint64(0)
    if n == 0:
        return 0, zero
    full = zero
    for v in range(n):
        full |= one << np.uint64(v)
    P = np.zeros(n + 1, np.uint64)
    chosen = np.zeros(n + 1, np.uint64)
    order = np.zeros((n + 1, n), np.int64)
    bound = np.zeros((n + 1, n), np.int64)
    cnt = np.zeros(n + 1, np.int64)
    size = np.zeros(n + 1, np.int64)
    best = 0
    best_mask = zero
    level = 0
    P[0] = full
    cnt[0] = _color_sort(full, adj, order[0], bound[0])
    while level >= 0:
        if cnt[level] == 0:
            level -= 1
            continue
        i = cnt[level] - 1
        v = order[level, i]
        b = bound[level, i]
        cnt[level] = i
        if size[level] + b <= best:
            level -= 1
            continue
        bit = one << np.uint64(v)
        newP = P[level] & adj[v]
        P[level] &= ~bit
        if newP == zero:
            if size[level] + 1 > best:
                best = size[level] + 1
                best_mask = chosen[level] | bit
            continue
        level += 1
        P[level] = newP
        chosen[level] = chosen[level - 1] | bit
        size[level] = size[level - 1] + 1
        cnt[level] = _color_sort(newP, adj, order[level], bound[level])
    return best, best_mask


@njit
def max_clique_size(adj, n):
    return max_clique(adj, n)[0]


@njit
def best_disconnected_pair(nonadj, n):
    """Maximise |S| + |T| over nonempty S, T = common non-neighbourhood of S.

    Pairs with T empty are skipped (S = V would otherwise always win).

    ``nonadj[v]`` has bit ``u`` set iff u and v are not adjacent (v itself
    included).  Subsets are visited in counting order; ``acc[i]`` holds the
    AND over the members of S at positions >= i.  Returns (value, S mask)
    with ties resolved to the smallest mask.
    """
    full = (1 << n) - 1
    acc = np.full(n + 1, full, np.int64)
    best = -1
    best_s = 0
    s = 0
    for _ in range(full):
        # increment: clear trailing ones, set bit p
        p = 0
        while (s >> p) & 1:
            p += 1
        s = (s | (1 << p)) & ~((1 << p) - 1)
        a = acc[p + 1] & nonadj[p]
        for i in range(p + 1):
            acc[i] = a
        if a == 0:
            continue
        val = popcount(s) + popcount(a)
        if val > best:
            best = val
            best_s = s
    return best, best_s


@njit
def berkowitz_int64(a):
    """det(xI - a) coefficients, highest degree first, in int64 arithmetic.

    Callers must bound the entries so no intermediate overflows.
    """
    n = a.shape[0]
    poly = np.zeros(n + 1, np.int64)
    poly[0] = 1
    poly[1] = -a[0, 0]
    vec = np.zeros(n, np.int64)
    tmp = np.zeros(n, np.int64)
    toe = np.zeros(n + 2, np.int64)
    new = np.zeros(n + 1, np.int64)
    for r in range(1, n):
        toe[0] = 1
        toe[1] = -a[r, r]
        for i in range(r):
            vec[i] = a[i, r]
        for k in range(r):
            s = 0
            for i in range(r):
                s += a[r, i] * vec[i]
            toe[k + 2] = -s
            for i in range(r):
                t = 0
                for j in range(r):
                    t += a[i, j] * vec[j]
                tmp[i] = t
            for i in range(r):
                vec[i] = tmp[i]
        for i in range(r + 2):
            s = 0
            for j in range(min(i, r) + 1):
                s += toe[i - j] * poly[j]
            new[i] = s
        for i in range(r + 2):
            poly[i] = new[i]
    return poly
