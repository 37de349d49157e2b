import csv
import io
import json

import numpy as np
import pytest

from inertia_lab import combinat, suites
from inertia_lab.constructions import complete, cycle, paley
from inertia_lab.errors import IntegrityError, ParameterError
from inertia_lab.graph import complement, graph6_encode
from inertia_lab.spectra import inertia_exact


def test_ng_record_c5():
    r = suites.ng_record(cycle(5))
    assert (r["inertia_G"], r["inertia_coG"], r["product"], r["sum"]) == (3, 3, 9, 6)
    assert r["product_ok"] and r["sum_ok"] and r["sum"] == r["n"] + 1


def test_ng_record_k4():
    r = suites.ng_record(complete(4))
    assert (r["inertia_G"], r["inertia_coG"], r["product"]) == (1, 4, 4)


def test_verify_ng_small():
    rep = suites.verify_ng(5)
    assert rep["violations"] == [] and len(rep["records"]) == 1 + 1 + 2 + 6 + 21
    assert rep["summary"]["classes_per_n"] == {"1": 1, "2": 1, "3": 2, "4": 6, "5": 21}
    assert rep["timing"] is None
    assert set(rep) == {"suite", "params", "records", "violations", "timing", "summary"}


def test_verify_ng_tight_list_contains_named_families():
    rep = suites.verify_ng(6)
    tight = set(rep["summary"]["tight_product"])
    for g in (complete(n) for n in range(1, 7)):
        assert graph6_encode(g).decode() in tight
    p4 = [r for r in rep["records"] if r["n"] == 4 and r["product"] == 4]
    assert any(r["graph6"] == graph6_encode(complete(4)).decode() for r in p4)


def test_verify_ng_repeat_runs_identical():
    a = suites.to_json(suites.verify_ng(7, jobs=1))
    b = suites.to_json(suites.verify_ng(7, jobs=1))
    assert a == b
    c = suites.to_json(suites.verify_ng(7, jobs=2))
    assert a == c


def test_verify_ng_all_graphs_flag():
    rep = suites.verify_ng(5, all_graphs=True)
    assert sum(rep["summary"]["classes_per_n"].values()) == 1 + 2 + 4 + 11 + 34
    assert rep["violations"] == []


def test_verify_ng_from_g6_matches_enumeration(tmp_path):
    lines = []
    for n in range(1, 6):
        for g in combinat.enumerate_connected(n):
            lines.append(graph6_encode(g))
            # a relabelled duplicate must be dropped
            perm = list(range(n))[::-1]
            dup = type(g)(n, [(perm[u], perm[v]) for u, v in g.edges])
            lines.append(graph6_encode(dup))
    path = tmp_path / "all.g6"
    path.write_bytes(b"\n".join(lines) + b"\n")
    from_file = suites.verify_ng(5, from_g6=str(path))
    enum = suites.verify_ng(5)
    assert from_file["params"]["source"] == "g6"
    assert sorted(r["graph6"] for r in from_file["records"]) == sorted(r["graph6"] for r in enum["records"])


def test_verify_ng_guard():
    with pytest.raises(ParameterError):
        suites.verify_ng(10)


def test_mu_bound_for_all_connected_to_7():
    for n in range(1, 8):
        mu = combinat.mu_lower(n)
        for g in combinat.enumerate_connected(n):
            a = inertia_exact(g.adjacency()).n_nonneg
            b = inertia_exact(complement(g).adjacency()).n_nonneg
            assert a * b >= mu
            assert combinat.alpha_exact(g) * combinat.alpha_exact(complement(g)) >= mu


def test_verify_johnson_k2():
    rep = suites.verify_johnson(2)
    (rec,) = rep["records"]
    assert rep["violations"] == []
    assert rec["witness_upper_bound"] == 8 and rec["theta_exact"] == "8/1" and rec["mode"] == "full"


def test_verify_johnson_k4_theta_only():
    (rec,) = suites.verify_johnson(4)["records"]
    assert rec["mode"] == "theta_only" and rec["witness_upper_bound"] is None
    assert rec["theta_ge_2k"] and rec["claim33_monotone"]


@pytest.mark.slow
def test_verify_johnson_k3():
    rep = suites.verify_johnson(3)
    (rec,) = rep["records"]
    assert rep["violations"] == [] and rec["witness_upper_bound"] <= 28 and rec["theta_exact"] == "21/1"


def test_verify_expander_heawood():
    rep = suites.verify_expander("heawood")
    (rec,) = rep["records"]
    assert rep["violations"] == []
    assert rec["nonneg_G"] == 8 and rec["alpha_G"] == 2
    assert rec["diagnostics"]["final_inequality_ok"]


def test_verify_expander_incidence3_alpha():
    (rec,) = suites.verify_expander("incidence_q", 3)["records"]
    assert rec["alpha_G"] == 2 and rec["bound"] <= rec["nonneg_G"]


def test_verify_expander_polarity_core():
    rep = suites.verify_expander("polarity_core_q", 5)
    (rec,) = rep["records"]
    assert rep["violations"] == [] and rec["lambda_le_sqrt_q"]
    assert (rec["degree_min"], rec["degree_max"]) == (4, 6)


def test_verify_expander_bad_params():
    with pytest.raises(ParameterError):
        suites.verify_expander("incidence_q")
    with pytest.raises(ParameterError):
        suites.verify_expander("heawood", 3)


@pytest.mark.parametrize("q,f,product", [(5, 2, 9), (13, 6, 49), (17, 8, 81)])
def test_verify_srg(q, f, product):
    rep = suites.verify_srg(q)
    (rec,) = rep["records"]
    assert rep["violations"] == []
    assert rec["f"] == rec["g"] == f == (q - 1) // 2
    assert rec["product"] == product == q + f * f


def test_srg_multiplicities_rejects_non_srg():
    ev = np.linalg.eigvalsh(cycle(7).adjacency(np.float64))
    with pytest.raises(IntegrityError):
        suites.srg_multiplicities(ev, 2)


def test_csv_and_json_shapes():
    rep = suites.verify_ng(4)
    rows = list(csv.DictReader(io.StringIO(suites.to_csv(rep))))
    assert len(rows) == len(rep["records"]) and rows[0]["graph6"] == rep["records"][0]["graph6"]
    assert json.loads(suites.to_json(rep)) == rep
    srg = suites.to_csv(suites.verify_srg(5))
    assert srg.splitlines()[0].startswith("q,n,degree")


def test_timing_is_opt_in():
    rep = suites.verify_srg(5, timing=True)
    assert rep["timing"]["seconds"] >= 0


def test_default_jobs(monkeypatch):
    monkeypatch.setenv("INERTIA_LAB_JOBS", "3")
    assert suites.default_jobs() == 3
    monkeypatch.setenv("INERTIA_LAB_JOBS", "x")
    assert suites.default_jobs() == 1
