"""Verification suites.  Each returns a report dict with keys
suite, params, records, violations, timing (and a suite-specific summary).

``timing`` is None unless requested so that repeated runs serialise to
identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from multiprocessing import get_context

import numpy as np

from . import combinat, constructions
from .errors import IntegrityError, ParameterError
from .graph import Graph, complement, graph6_encode, spectral_params
from .scaling import sinkhorn
from .spectra import EXACT_MAX_DIM, inertia_exact, inertia_float
from .theta import claim33_monotone, linz_theta
from .witnesses import expander_lower_bound, johnson_witness, proof_diagnostics

NG_MAX_N = combinat.ENUM_MAX_N


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("INERTIA_LAB_JOBS", "1")))
    except ValueError:
        return 1


def _report(suite, params, records, violations, started, timing, summary=None):
    out = {
        "suite": suite,
        "params": params,
        "records": records,
        "violations": violations,
        "timing": {"seconds": round(time.perf_counter() - started, 3)} if timing else None,
    }
    if summary is not None:
        out["summary"] = summary
    return out


def nonneg(a, exact: bool | None = None) -> tuple[int, str]:
    """(n>=0, mode); exact when the matrix is small enough unless told otherwise."""
    dim = len(a)
    if exact is None:
        exact = dim <= EXACT_MAX_DIM
    if exact:
        return inertia_exact(np.asarray(a, dtype=np.int64)).n_nonneg, "exact"
    return inertia_float(np.asarray(a, dtype=np.float64)).n_nonneg, "float"


# ------------------------------------------------------------ Nordhaus-Gaddum

def ng_record(g: Graph) -> dict:
    a = g.adjacency(np.int64)
    ca = complement(g).adjacency(np.int64)
    k1 = inertia_exact(a).n_nonneg
    k2 = inertia_exact(ca).n_nonneg
    n = g.n
    return {
        "graph6": graph6_encode(g).decode("ascii"),
        "n": n,
        "inertia_G": k1,
        "inertia_coG": k2,
        "product": k1 * k2,
        "sum": k1 + k2,
        "product_ok": k1 * k2 >= n,
        "sum_ok": k1 + k2 <= n + 1,
    }


def _ng_chunk(g6_lines):
    from .graph import graph6_decode

    return [ng_record(graph6_decode(s)) for s in g6_lines]


def _chunks(seq, size):
    for i in range(0, len(seq), size):
        yield seq[i:i + size]


def verify_ng(max_n: int = 8, jobs: int | None = None, all_graphs: bool = False,
              from_g6: str | None = None, timing: bool = False) -> dict:
    """Exact n>=0 of A_G and its complement for every (connected) graph up to max_n."""
    started = time.perf_counter()
    if not 1 <= max_n <= NG_MAX_N:
        raise ParameterError(f"max_n must lie in [1, {NG_MAX_N}]")
    jobs = default_jobs() if jobs is None else max(1, jobs)
    connected = not all_graphs
    if from_g6 is not None:
        with open(from_g6, "rb") as fh:
            by_n = combinat.graphs_from_g6_stream(fh, connected=connected)
        graphs = [g for n in sorted(by_n) if n <= max_n for g in by_n[n]]
    else:
        graphs = [g for n in range(1, max_n + 1) for g in combinat.enumerate_graphs(n, connected)]
    lines = [graph6_encode(g).decode("ascii") for g in graphs]
    if jobs == 1 or len(lines) < 2000:
        records = _ng_chunk(lines)
    else:
        with get_context("spawn").Pool(jobs) as pool:
            parts = pool.map(_ng_chunk, list(_chunks(lines, 500)))
        records = [r for part in parts for r in part]

    violations = []
    counts: dict[int, int] = {}
    tight_product, tight_sum = [], []
    for r in records:
        counts[r["n"]] = counts.get(r["n"], 0) + 1
        if not r["product_ok"]:
            violations.append(f"{r['graph6']}: product {r['product']} < n = {r['n']}")
        if not r["sum_ok"]:
            violations.append(f"{r['graph6']}: sum {r['sum']} > n + 1 = {r['n'] + 1}")
        if r["product"] == r["n"]:
            tight_product.append(r["graph6"])
        if r["sum"] == r["n"] + 1:
            tight_sum.append(r["graph6"])
    params = {"max_n": max_n, "all_graphs": all_graphs, "source": "g6" if from_g6 else "enumeration"}
    summary = {
        "classes_per_n": {str(n): c for n, c in sorted(counts.items())},
        "tight_product": tight_product,
        "tight_sum_count": len(tight_sum),
    }
    return _report("ng", params, records, violations, started, timing, summary)


# ------------------------------------------------------------ Johnson gap

def verify_johnson(k: int, timing: bool = False) -> dict:
    """G(k^3 + 1, k, {floor(k/2)}): witness count <= k^3 + 1 while theta >= 2^k."""
    started = time.perf_counter()
    if k < 1:
        raise ParameterError("k must be >= 1")
    n, l = k**3 + 1, k // 2
    lin = linz_theta(n, k, l)
    rec = {
        "n": n,
        "k": k,
        "l": l,
        "vertices": math.comb(n, k),
        "theta_exact": lin.to_dict()["theta_exact"],
        "theta_ge_2k": lin.theta >= 2**k,
        "claim33_monotone": claim33_monotone(n, k, l),
        "explicit_point_feasible": lin.theta - 1 >= lin.prop32_value,
        "witness_upper_bound": None,
        "witness_ok": None,
        "mode": "theta_only",
    }
    if k <= 3:
        cert = johnson_witness(n, k, l)
        rec["witness_upper_bound"] = cert.upper_bound
        rec["witness_ok"] = cert.upper_bound <= n
        rec["mode"] = "full"
    violations = []
    if not rec["theta_ge_2k"]:
        violations.append(f"theta = {rec['theta_exact']} < 2^{k}")
    if not rec["claim33_monotone"]:
        violations.append("f_{u,j} is not non-increasing in j")
    if not rec["explicit_point_feasible"]:
        violations.append("theta - 1 is below the explicit feasible value")
    if rec["witness_ok"] is False:
        violations.append(f"witness count {rec['witness_upper_bound']} > {n}")
    return _report("johnson", {"k": k}, [rec], violations, started, timing)


# ------------------------------------------------------------ expander chain

EXPANDER_GAMMAS = ("heawood", "incidence_q", "polarity_core_q")


def _gamma(name: str, q: int | None) -> Graph:
    if name == "heawood":
        if q not in (None, 2):
            raise ParameterError("heawood is the q = 2 incidence graph; omit --q")
        return constructions.heawood()
    if q is None:
        raise ParameterError(f"{name} needs a prime q")
    if name == "incidence_q":
        return constructions.incidence(q)
    if name == "polarity_core_q":
        return constructions.polarity_core(q)[0]
    raise ParameterError(f"unknown gamma {name!r}; choose from {', '.join(EXPANDER_GAMMAS)}")


def verify_expander(gamma_name: str, q: int | None = None, timing: bool = False) -> dict:
    """Full lower-bound chain on G = complement(Gamma)."""
    started = time.perf_counter()
    gamma = _gamma(gamma_name, q)
    G = complement(gamma)
    rep = spectral_params(gamma)
    degs = gamma.degrees()
    a0 = G.adjacency(np.float64)
    k_unweighted, mode = nonneg(G.adjacency(np.int64))
    rec = {
        "gamma": gamma_name,
        "q": 2 if gamma_name == "heawood" else q,
        "n": gamma.n,
        "degree_min": min(degs),
        "degree_max": max(degs),
        "lambda": rep.lam,
        "lambda2": rep.lambda2,
        "lambda_min": rep.lambda_min,
        "nonneg_G": k_unweighted,
        "nonneg_mode": mode,
        "alpha_G": combinat.alpha_exact(G) if G.n <= combinat.ALPHA_MAX_N else None,
    }
    violations = []
    if rec["alpha_G"] is not None and rec["alpha_G"] > k_unweighted:
        violations.append(f"alpha(G) = {rec['alpha_G']} exceeds n>=0(A_G) = {k_unweighted}")

    scaled = sinkhorn(a0, G)
    rec["sinkhorn_iterations"] = scaled.iterations
    rec["sinkhorn_residual"] = scaled.residual
    rec["nonneg_B"] = inertia_float(scaled.B).n_nonneg
    if rec["nonneg_B"] != inertia_float(a0).n_nonneg:
        violations.append("scaling changed the nonnegative inertia")

    if gamma_name == "polarity_core_q":
        rec["lambda_le_sqrt_q"] = rep.lam <= math.sqrt(q) + 1e-8
        if not rec["lambda_le_sqrt_q"]:
            violations.append(f"lambda = {rep.lam} exceeds sqrt(q) = {math.sqrt(q)}")
        if rep.is_regular:
            res = expander_lower_bound(G, gamma, strict=False)
            rec["bound"] = res.bound
    else:
        res = expander_lower_bound(G, gamma)
        diag = proof_diagnostics(scaled.B, gamma)
        rec["bound"] = res.bound
        rec["diagnostics"] = diag.to_dict()
        if not diag.all_ok:
            violations.append(f"proof diagnostics failed: {', '.join(diag.failed)}")
        if res.bound > k_unweighted:
            violations.append(f"bound {res.bound} exceeds n>=0(A_G) = {k_unweighted}")
    return _report("expander", {"gamma": gamma_name, "q": rec["q"]}, [rec], violations, started, timing)


# ------------------------------------------------------------ strongly regular

def srg_multiplicities(ev: np.ndarray, degree: int, atol: float = 1e-6):
    """(r, f, s, g) for a spectrum (d^1, r^f, s^g) with r > s; raises otherwise."""
    rest = np.sort(ev)[::-1]
    if abs(rest[0] - degree) > atol:
        raise IntegrityError("top eigenvalue differs from the degree")
    rest = rest[1:]
    groups: list[list[float]] = []
    for x in rest:
        if groups and abs(groups[-1][0] - x) <= atol:
            groups[-1].append(float(x))
        else:
            groups.append([float(x)])
    if len(groups) != 2:
        raise IntegrityError(f"expected two non-principal eigenvalues, found {len(groups)}")
    (r, f), (s, g) = ((float(np.mean(grp)), len(grp)) for grp in groups)
    return r, f, s, g


def verify_srg(q: int, timing: bool = False) -> dict:
    """Paley(q): n>=0(A) = 1 + f, n>=0(A-bar) = 1 + g, product = n + f g."""
    started = time.perf_counter()
    g = constructions.paley(q)
    n = g.n
    d = g.degrees()[0]
    ev = np.linalg.eigvalsh(g.adjacency(np.float64))
    r, f, s, mult_g = srg_multiplicities(ev, d)
    k1, mode = nonneg(g.adjacency(np.int64))
    k2, _ = nonneg(complement(g).adjacency(np.int64))
    rec = {
        "q": q,
        "n": n,
        "degree": d,
        "r": r,
        "f": f,
        "s": s,
        "g": mult_g,
        "nonneg_G": k1,
        "nonneg_coG": k2,
        "mode": mode,
        "product": k1 * k2,
        "n_plus_fg": n + f * mult_g,
    }
    violations = []
    if k1 != 1 + f:
        violations.append(f"n>=0(A) = {k1} but 1 + f = {1 + f}")
    if k2 != 1 + mult_g:
        violations.append(f"n>=0(complement) = {k2} but 1 + g = {1 + mult_g}")
    if k1 * k2 != n + f * mult_g:
        violations.append(f"product {k1 * k2} != n + fg = {n + f * mult_g}")
    if k1 * k2 < n:
        violations.append(f"product {k1 * k2} < n = {n}")
    return _report("srg", {"q": q}, [rec], violations, started, timing)


# ------------------------------------------------------------ serialisation

def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def to_csv(report: dict) -> str:
    records = report["records"]
    buf = io.StringIO()
    if not records:
        return ""
    cols = list(records[0])
    for r in records[1:]:
        cols += [c for c in r if c not in cols]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        w.writerow([json.dumps(r[c], sort_keys=True) if isinstance(r.get(c), (dict, list)) else r.get(c, "") for c in cols])
    return buf.getvalue()
