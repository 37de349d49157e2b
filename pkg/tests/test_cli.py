import json

import numpy as np
import pytest

from inertia_lab.cli import main
from inertia_lab.constructions import cycle, heawood, path, petersen
from inertia_lab.graph import Graph, graph6_decode, graph6_encode
from inertia_lab.spectra import SymmetricMatrix
from oracles import umbrella_c5


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c5file(tmp_path):
    p = tmp_path / "c5.g6"
    p.write_bytes(graph6_encode(cycle(5)) + b"\n")
    return str(p)


def test_construct_families(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "johnson", "--n", "9", "--k", "2", "--l", "1")
    assert code == 0 and graph6_decode(out.strip()).n == 36
    code, out, _ = run(capsys, "construct", "std", "--name", "cycle", "--n", "5")
    assert graph6_decode(out.strip()) == cycle(5)
    for fam, q, n in [("polarity", "5", 31), ("incidence", "3", 26), ("paley", "17", 17)]:
        code, out, _ = run(capsys, "construct", fam, "--q", q)
        assert code == 0 and graph6_decode(out.strip()).n == n
    code, out, _ = run(capsys, "construct", "polarity", "--q", "5", "--core")
    assert graph6_decode(out.strip()).n == 25
    dest = tmp_path / "p.g6"
    assert main(["construct", "std", "--name", "petersen", "--out", str(dest)]) == 0
    assert graph6_decode(dest.read_bytes().strip()) == petersen()


def test_construct_bad_parameter_exit_2(capsys):
    code, _, err = run(capsys, "construct", "paley", "--q", "7")
    assert code == 2 and "paley" in err


def test_inertia_basic_and_witness(capsys, c5file, tmp_path):
    code, out, _ = run(capsys, "inertia", "--in", c5file, "--exact")
    d = json.loads(out)
    assert code == 0 and d["unweighted_inertia"]["n_nonneg"] == 3 and d["unweighted_inertia"]["mode"] == "exact"
    assert d["lower_bounds"]["alpha"] == 2 and d["best_witness"] is None
    vec = tmp_path / "u.json"
    vec.write_text(json.dumps(umbrella_c5().tolist()))
    code, out, _ = run(capsys, "inertia", "--in", c5file, "--witness-search", "--seed", "1", "--rounds", "4",
                       "--orth-rep", str(vec))
    d = json.loads(out)
    assert d["best_witness"]["strategy"] == "negated" and d["best_witness"]["upper_bound"] == 2
    assert d["lower_bounds"]["orth_rep"] == pytest.approx(5 / 3)


def test_inertia_expander_gamma(capsys, tmp_path):
    from inertia_lab.graph import complement

    g = tmp_path / "g.g6"
    gam = tmp_path / "gamma.g6"
    g.write_bytes(graph6_encode(complement(heawood())))
    gam.write_bytes(graph6_encode(heawood()))
    code, out, _ = run(capsys, "inertia", "--in", str(g), "--gamma", str(gam))
    d = json.loads(out)
    assert code == 0 and d["lower_bounds"]["expander"]["hypothesis_ok"]


def test_inertia_bad_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_bytes(b"B\x21\n")
    code, _, err = run(capsys, "inertia", "--in", str(bad))
    assert code == 2 and "63..126" in err
    two = tmp_path / "two.g6"
    two.write_bytes(b"Bw\nBw\n")
    assert run(capsys, "inertia", "--in", str(two))[0] == 2
    assert run(capsys, "inertia", "--in", str(tmp_path / "missing.g6"))[0] == 2


def test_theta_johnson_exact(capsys):
    code, out, _ = run(capsys, "theta", "johnson", "--n", "9", "--k", "2", "--l", "1", "--exact")
    d = json.loads(out)
    assert code == 0 and d["theta_exact"] == "8/1" and d["binding_u"] == 2
    lo, hi = d["bracket"]
    assert lo <= 8 <= hi
    code, out, _ = run(capsys, "theta", "johnson", "--n", "65", "--k", "4", "--l", "2", "--exact", "--method", "none")
    d = json.loads(out)
    assert d["bracket"] is None and d["theta_exact"] == "1239/19"


def test_theta_graph_file(capsys, c5file):
    code, out, _ = run(capsys, "theta", "--in", c5file, "--method", "bracket", "--iters", "2000", "--tol", "1e-4")
    lo, hi = json.loads(out)["bracket"]
    assert code == 0 and lo <= 5**0.5 <= hi
    code, out, _ = run(capsys, "theta", "--in", c5file, "--method", "upper")
    assert json.loads(out)["bracket"][0] is None
    assert run(capsys, "theta")[0] == 2


def test_scale(capsys, c5file, tmp_path):
    code, out, _ = run(capsys, "scale", "--in", c5file, "--tol", "1e-10")
    d = json.loads(out)
    assert code == 0 and np.allclose(d["row_norms"], 1)
    assert d["inertia_before"]["n_nonneg"] == d["inertia_after"]["n_nonneg"]
    w = tmp_path / "w.json"
    a = cycle(5).adjacency(np.float64) * np.array([1, 2, 3, 4, 5])[:, None]
    a = np.triu(a) + np.triu(a, 1).T
    w.write_text(json.dumps(SymmetricMatrix(a).to_json()))
    code, out, _ = run(capsys, "scale", "--in", c5file, "--weights", str(w), "--emit-matrix")
    d = json.loads(out)
    assert code == 0 and d["B"]["dim"] == 5 and d["residual"] <= 1e-10


def test_scale_failures(capsys, tmp_path):
    p3 = tmp_path / "p3.g6"
    p3.write_bytes(graph6_encode(path(3)))
    code, _, err = run(capsys, "scale", "--in", str(p3))
    assert code == 2 and "not scalable" in err
    chord = tmp_path / "ch.g6"
    chord.write_bytes(graph6_encode(Graph(5, list(cycle(5).edges) + [(0, 2)])))
    code, out, _ = run(capsys, "scale", "--in", str(chord), "--max-iter", "1", "--tol", "1e-14")
    assert code == 1 and json.loads(out)["residual"] > 0


def test_diagnose(capsys):
    code, out, _ = run(capsys, "diagnose", "expander", "--gamma", "heawood")
    d = json.loads(out)
    assert code == 0 and d["k"] == 8 and all(d["checks"].values())


def test_verify_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "ng", "--max-n", "5", "--jobs", "1")
    d = json.loads(out)
    assert code == 0 and d["suite"] == "ng" and d["timing"] is None
    code, out, _ = run(capsys, "verify", "srg", "--q", "13", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("13,13,6")
    code, out, _ = run(capsys, "verify", "johnson", "--k", "2", "--timing")
    assert code == 0 and json.loads(out)["timing"]["seconds"] >= 0
    code, out, _ = run(capsys, "verify", "expander", "--gamma", "incidence_q", "--q", "3")
    assert code == 0
    dest = tmp_path / "r.json"
    assert main(["verify", "srg", "--q", "5", "--out", str(dest)]) == 0
    assert json.loads(dest.read_text())["violations"] == []


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "ng", "--max-n", "12")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "expander", "--gamma", "nope"])
    assert exc.value.code == 2
