"""Time each compiled kernel against its plain-Python body (``py_func``).

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

With ``INERTIA_LAB_NUMBA=0`` both columns run the Python body.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from inertia_lab import _jit, kernels
from inertia_lab.combinat import _all_codes, code_to_masks
from inertia_lab.constructions import johnson, petersen
from inertia_lab.graph import Graph, complement


def _random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    a = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_adjacency(a | a.T)


def workloads(quick: bool):
    g_canon = _random_graph(10, 0.5, 1)
    yield "canonical_code", kernels.canonical_code, (np.array(g_canon.masks, np.int64), g_canon.n)

    m = 5 if quick else 6
    parents = np.array([code_to_masks(c, m) for c in _all_codes(m)], np.int64)
    yield f"augment_codes (m={m})", kernels.augment_codes, (parents, m)

    g_clique = complement(johnson(9, 2, {1}))
    yield "max_clique (n=36)", kernels.max_clique, (np.array(g_clique.masks, np.uint64), g_clique.n)

    n_sweep = 14 if quick else 18
    g_sweep = _random_graph(n_sweep, 0.4, 2)
    full = (1 << n_sweep) - 1
    nonadj = np.array([full & ~mk for mk in g_sweep.masks], np.int64)
    yield f"best_disconnected_pair (n={n_sweep})", kernels.best_disconnected_pair, (nonadj, n_sweep)

    a = petersen().adjacency(np.int64)
    yield "berkowitz_int64 (n=10)", kernels.berkowitz_int64, (a,)


def best_time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--quick", action="store_true")
    args = p.parse_args(argv)
    print(f"numba enabled: {_jit.USE_NUMBA}")
    print(f"{'kernel':34s} {'compiled s':>12s} {'python s':>12s} {'speedup':>9s}")
    for name, kernel, kargs in workloads(args.quick):
        kernel(*kargs)  # compile / warm caches
        fast = best_time(kernel, kargs, args.repeat)
        slow_fn = _jit.py_func(kernel)
        r_fast, r_slow = kernel(*kargs), slow_fn(*kargs)
        same = all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(
            r_fast if isinstance(r_fast, tuple) else (r_fast,),
            r_slow if isinstance(r_slow, tuple) else (r_slow,)))
        slow = best_time(slow_fn, kargs, 1)
        flag = "" if same else "  MISMATCH"
        print(f"{name:34s} {fast:12.6f} {slow:12.6f} {slow / max(fast, 1e-12):8.1f}x{flag}")


if __name__ == "__main__":
    main()
