import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from inertia_lab import _jit, kernels
from inertia_lab.combinat import _all_codes, code_to_masks
from inertia_lab.graph import Graph


@st.composite
def masks(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph(n, [p for p, b in zip(pairs, bits) if b])
    return g


def _same(x, y):
    xs = x if isinstance(x, tuple) else (x,)
    ys = y if isinstance(y, tuple) else (y,)
    return all(np.array_equal(np.asarray(a), np.asarray(b)) for a, b in zip(xs, ys))


@given(masks())
def test_canonical_code_compiled_matches_python(g):
    args = (np.array(g.masks, np.int64), g.n)
    assert _same(kernels.canonical_code(*args), _jit.py_func(kernels.canonical_code)(*args))


@given(masks(max_n=16))
def test_clique_compiled_matches_python(g):
    args = (np.array(g.masks, np.uint64), g.n)
    assert _same(kernels.max_clique(*args), _jit.py_func(kernels.max_clique)(*args))


@given(masks(max_n=10))
def test_sweep_compiled_matches_python(g):
    full = (1 << g.n) - 1
    args = (np.array([full & ~m for m in g.masks], np.int64), g.n)
    assert _same(kernels.best_disconnected_pair(*args), _jit.py_func(kernels.best_disconnected_pair)(*args))


def test_augment_compiled_matches_python():
    parents = np.array([code_to_masks(c, 4) for c in _all_codes(4)], np.int64)
    assert _same(kernels.augment_codes(parents, 4), _jit.py_func(kernels.augment_codes)(parents, 4))


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_berkowitz_compiled_matches_python(n, seed):
    a = np.random.default_rng(seed).integers(-3, 4, (n, n))
    a = np.tril(a) + np.tril(a, -1).T
    assert _same(kernels.berkowitz_int64(a), _jit.py_func(kernels.berkowitz_int64)(a))


def test_flag_parsing():
    assert _jit.USE_NUMBA == (os.environ.get("INERTIA_LAB_NUMBA", "1").lower() not in ("0", "false", "no", "off"))


@pytest.mark.slow
def test_pure_numpy_fallback_runs_the_pipeline():
    code = (
        "from inertia_lab import _jit, suites\n"
        "assert not _jit.USE_NUMBA\n"
        "r = suites.verify_ng(6)\n"
        "assert r['violations'] == [] and len(r['records']) == 1+1+2+6+21+112\n"
        "print('ok')\n"
    )
    env = dict(os.environ, INERTIA_LAB_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, timeout=600)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"
