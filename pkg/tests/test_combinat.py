import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from inertia_lab import combinat
from inertia_lab.constructions import cycle, johnson, petersen
from inertia_lab.errors import CoverageError, SizeError
from inertia_lab.graph import Graph, complement, graph6_encode
from inertia_lab.spectra import inertia_exact
from oracles import brute_alpha, brute_force_classes, to_nx

CONNECTED = [1, 1, 2, 6, 21, 112, 853, 11117]
ALL = [1, 2, 4, 11, 34, 156, 1044, 12346]


@pytest.mark.parametrize("n", range(1, 8))
def test_class_counts(n):
    assert sum(1 for _ in combinat.enumerate_connected(n)) == CONNECTED[n - 1]
    assert sum(1 for _ in combinat.enumerate_graphs(n, connected=False)) == ALL[n - 1]


@pytest.mark.slow
def test_class_counts_n8():
    assert sum(1 for _ in combinat.enumerate_connected(8)) == CONNECTED[7]
    assert sum(1 for _ in combinat.enumerate_graphs(8, connected=False)) == ALL[7]


def test_n3_is_p3_and_k3():
    gs = list(combinat.enumerate_connected(3))
    assert sorted(g.num_edges for g in gs) == [2, 3]


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("connected", [True, False])
def test_matches_brute_force_class_for_class(n, connected):
    ours = [to_nx(g) for g in combinat.enumerate_graphs(n, connected)]
    ref = brute_force_classes(n, connected)
    assert len(ours) == len(ref)
    unmatched = list(ref)
    for h in ours:
        hit = next(i for i, r in enumerate(unmatched) if nx.is_isomorphic(h, r))
        unmatched.pop(hit)
    assert not unmatched


def test_enumeration_is_deterministic():
    a = [graph6_encode(g) for g in combinat.enumerate_connected(6)]
    combinat._all_codes.cache_clear()
    b = [graph6_encode(g) for g in combinat.enumerate_connected(6)]
    assert a == b


@given(st.integers(1, 9), st.data())
def test_canonical_form_invariant_under_relabelling(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    bits = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    perm = data.draw(st.permutations(range(n)))
    g = Graph(n, [p for p, b in zip(pairs, bits) if b])
    h = Graph(n, [(perm[u], perm[v]) for u, v in g.edges])
    cg, gg = combinat.canonical_form(g)
    ch, _ = combinat.canonical_form(h)
    assert cg == ch
    assert nx.is_isomorphic(to_nx(gg), to_nx(g))


def test_size_guards():
    with pytest.raises(SizeError):
        next(combinat.enumerate_connected(10))
    with pytest.raises(SizeError):
        combinat.alpha_exact(Graph(65))


def test_alpha_examples():
    assert combinat.alpha_exact(cycle(5)) == 2
    assert combinat.alpha_exact(petersen()) == brute_alpha(petersen()) == 4
    assert combinat.alpha_exact(johnson(9, 2, {1})) == 8


@given(st.integers(1, 14), st.data())
def test_alpha_matches_brute_force(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    bits = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph(n, [p for p, b in zip(pairs, bits) if b])
    assert combinat.alpha_exact(g) == brute_alpha(g)
    assert combinat.clique_number(g) == brute_alpha(complement(g))


def test_alpha_on_64_vertices():
    rng = np.random.default_rng(5)
    a = np.triu(rng.random((64, 64)) < 0.9, 1)
    g = Graph.from_adjacency(a | a.T)
    ref = max(len(c) for c in nx.find_cliques(to_nx(complement(g))))
    assert combinat.alpha_exact(g) == ref


def test_alpha_le_inertia_all_graphs_to_7():
    for n in range(1, 8):
        for g in combinat.enumerate_graphs(n, connected=False):
            assert combinat.alpha_exact(g) <= inertia_exact(g.adjacency()).n_nonneg


def _mu_oracle(n):
    # direct from the definition with the audited table
    table = {(3, 3): 6, (3, 4): 9, (3, 5): 14, (4, 4): 18}

    def r(a, b):
        a, b = sorted((a, b))
        return b if a == 2 else 1 if a == 1 else table.get((a, b))

    return min(a * b for a in range(1, n + 1) for b in range(1, n + 1)
               if r(a + 1, b + 1) is not None and r(a + 1, b + 1) > n)


@pytest.mark.parametrize("n", range(1, 10))
def test_mu_lower_matches_definition(n):
    assert combinat.mu_lower(n) == _mu_oracle(n)


def test_mu_lower_examples_and_coverage():
    assert (combinat.mu_lower(4), combinat.mu_lower(5), combinat.mu_lower(9)) == (4, 4, 8)
    with pytest.raises(CoverageError):
        combinat.mu_lower(10)
    assert combinat.ramsey(4, 3) == combinat.ramsey(3, 4) == 9


def test_g6_stream_dedup():
    c5 = graph6_encode(cycle(5))
    relabelled = graph6_encode(Graph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]))
    disconnected = graph6_encode(Graph(5, [(0, 1)]))
    out = combinat.graphs_from_g6_stream([c5, relabelled, b"", disconnected, b"Bw"])
    assert sorted(out) == [3, 5]
    assert len(out[5]) == 1 and len(out[3]) == 1
