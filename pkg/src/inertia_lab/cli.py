"""Command-line entry point ``inertia-lab``.

Exit status: 0 when every checked assertion holds, 1 when a report lists
violations (or a proven inequality fails numerically), 2 on usage or input
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import comb

import numpy as np

from . import combinat, constructions, suites
from .errors import ConvergenceError, InertiaLabError, IntegrityError
from .graph import complement, graph6_decode, graph6_encode
from .scaling import sinkhorn
from .spectra import EXACT_MAX_DIM, SymmetricMatrix, inertia_exact, inertia_float
from .theta import THETA_MAX_N, linz_theta, theta_bracket
from .witnesses import (
    STRATEGIES,
    expander_lower_bound,
    orth_rep_lower_bound,
    proof_diagnostics,
    witness_search,
)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read_graph(path: str):
    data = sys.stdin.buffer.read() if path == "-" else open(path, "rb").read()
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise InertiaLabError(f"{path}: expected exactly one graph6 record, found {len(lines)}")
    return graph6_decode(lines[0])


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ------------------------------------------------------------ commands

def cmd_construct(args) -> int:
    kind = args.family
    if kind == "johnson":
        L = [int(x) for x in args.l.split(",") if x.strip()] if args.l else []
        g = constructions.johnson(args.n, args.k, L)
    elif kind == "polarity":
        g = constructions.polarity_core(args.q)[0] if args.core else constructions.polarity(args.q)[0]
    elif kind == "incidence":
        g = constructions.incidence(args.q)
    elif kind == "paley":
        g = constructions.paley(args.q)
    else:
        g = constructions.standard(args.name, args.n)
    _emit(graph6_encode(g).decode("ascii") + "\n", args.out)
    return 0


def cmd_inertia(args) -> int:
    g = _read_graph(args.inp)
    a = g.adjacency(np.int64)
    if args.exact:
        tri = inertia_exact(a)
    else:
        tri = inertia_float(a.astype(np.float64))
    out = {"n": g.n, "unweighted_inertia": tri.to_dict(), "best_witness": None}
    upper = tri.n_nonneg
    if args.witness_search:
        strategies = args.strategies.split(",") if args.strategies else None
        cert = witness_search(g, strategies, seed=args.seed, rounds=args.rounds)
        out["best_witness"] = cert.to_dict()
        upper = min(upper, cert.upper_bound)
    lower = {"alpha": None, "expander": None, "orth_rep": None}
    if g.n <= combinat.ALPHA_MAX_N:
        lower["alpha"] = combinat.alpha_exact(g)
    if args.gamma:
        lower["expander"] = expander_lower_bound(g, _read_graph(args.gamma), strict=False).to_dict()
    if args.orth_rep:
        lower["orth_rep"] = orth_rep_lower_bound(g, _read_json(args.orth_rep))
    out["lower_bounds"] = lower
    _emit(_dump(out), args.out)
    floors = [lower["alpha"], lower["orth_rep"]]
    if lower["expander"] and lower["expander"]["hypothesis_ok"]:
        floors.append(lower["expander"]["bound"])
    return 1 if any(f is not None and f > upper + 1e-9 for f in floors) else 0


def cmd_theta(args) -> int:
    out = {"theta_exact": None, "bracket": None, "binding_u": None, "per_u": None}
    if args.target == "johnson":
        if None in (args.n, args.k, args.l):
            raise InertiaLabError("theta johnson needs --n, --k and --l")
        if args.exact:
            lin = linz_theta(args.n, args.k, args.l).to_dict()
            for key in ("theta_exact", "binding_u", "per_u", "warning"):
                out[key] = lin[key]
        g = None
        if args.method != "none" and comb(args.n, args.k) <= THETA_MAX_N:
            g = constructions.johnson(args.n, args.k, {args.l})
    else:
        if not args.inp:
            raise InertiaLabError("theta needs --in FILE or the 'johnson' target")
        g = _read_graph(args.inp)
    if g is not None and args.method != "none":
        br = theta_bracket(g, iters=args.iters, tol=args.tol)
        d = br.to_dict()
        if args.method == "upper":
            d["bracket"] = [None, br.upper]
        elif args.method == "lower":
            d["bracket"] = [br.lower, None]
        out.update(d)
    _emit(_dump(out), args.out)
    return 0


def cmd_scale(args) -> int:
    g = _read_graph(args.inp)
    if args.weights:
        a = SymmetricMatrix.from_json(_read_json(args.weights)).array
    else:
        a = g.adjacency(np.float64)
    try:
        res = sinkhorn(a, g, tol=args.tol, max_iter=args.max_iter)
    except ConvergenceError as exc:
        _emit(_dump({"error": str(exc), "residual": exc.residual}), args.out)
        return 1
    out = {
        "row_norms": res.row_norms().tolist(),
        "iterations": res.iterations,
        "residual": res.residual,
        "inertia_before": inertia_float(a).to_dict(),
        "inertia_after": inertia_float(res.B).to_dict(),
    }
    if args.emit_matrix:
        out["B"] = res.B.to_json()
    _emit(_dump(out), args.out)
    same = out["inertia_before"]["n_nonneg"] == out["inertia_after"]["n_nonneg"]
    return 0 if same else 1


def cmd_diagnose(args) -> int:
    gamma = suites._gamma(args.gamma, args.q)
    G = complement(gamma)
    expander_lower_bound(G, gamma)
    res = sinkhorn(G.adjacency(np.float64), G)
    rep = proof_diagnostics(res.B, gamma)
    _emit(_dump(rep.to_dict()), args.out)
    return 0 if rep.all_ok else 1


def cmd_verify(args) -> int:
    if args.suite == "ng":
        report = suites.verify_ng(args.max_n, args.jobs, args.all_graphs, args.from_g6, timing=args.timing)
    elif args.suite == "johnson":
        report = suites.verify_johnson(args.k, timing=args.timing)
    elif args.suite == "expander":
        report = suites.verify_expander(args.gamma, args.q, timing=args.timing)
    else:
        report = suites.verify_srg(args.q, timing=args.timing)
    text = suites.to_csv(report) if args.format == "csv" else suites.to_json(report)
    _emit(text, args.out)
    return 1 if report["violations"] else 0


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inertia-lab", description="Graph inertia, theta and verification suites.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit a graph in graph6")
    csub = c.add_subparsers(dest="family", required=True)
    j = csub.add_parser("johnson")
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--k", type=int, required=True)
    j.add_argument("--l", default="", help="comma-separated forbidden intersection sizes")
    pol = csub.add_parser("polarity")
    pol.add_argument("--q", type=int, required=True)
    pol.add_argument("--core", action="store_true", help="drop the absolute points")
    for name in ("incidence", "paley"):
        csub.add_parser(name).add_argument("--q", type=int, required=True)
    s = csub.add_parser("std")
    s.add_argument("--name", required=True, choices=constructions.STANDARD_NAMES)
    s.add_argument("--n", type=int)
    for sp in csub.choices.values():
        sp.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    i = sub.add_parser("inertia", help="inertia and bounds for one graph")
    i.add_argument("--in", dest="inp", required=True)
    i.add_argument("--exact", action="store_true")
    i.add_argument("--witness-search", action="store_true")
    i.add_argument("--strategies", help=f"comma-separated subset of {','.join(STRATEGIES)}")
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--rounds", type=int, default=32)
    i.add_argument("--gamma", help="graph6 file of a spanning expander in the complement")
    i.add_argument("--orth-rep", help="JSON list of unit vectors, one per vertex")
    i.add_argument("--out")
    i.set_defaults(func=cmd_inertia)

    t = sub.add_parser("theta", help="Lovász theta")
    t.add_argument("target", nargs="?", choices=["johnson"])
    t.add_argument("--in", dest="inp")
    t.add_argument("--n", type=int)
    t.add_argument("--k", type=int)
    t.add_argument("--l", type=int)
    t.add_argument("--exact", action="store_true")
    t.add_argument("--method", choices=["bracket", "upper", "lower", "none"], default="bracket")
    t.add_argument("--iters", type=int, default=2000)
    t.add_argument("--tol", type=float, default=1e-4)
    t.add_argument("--out")
    t.set_defaults(func=cmd_theta)

    sc = sub.add_parser("scale", help="scale a weighted adjacency matrix to 1-regular")
    sc.add_argument("--in", dest="inp", required=True)
    sc.add_argument("--weights")
    sc.add_argument("--tol", type=float, default=1e-10)
    sc.add_argument("--max-iter", type=int, default=100_000)
    sc.add_argument("--emit-matrix", action="store_true")
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_scale)

    d = sub.add_parser("diagnose", help="proof diagnostics")
    dsub = d.add_subparsers(dest="what", required=True)
    de = dsub.add_parser("expander")
    de.add_argument("--gamma", required=True, choices=suites.EXPANDER_GAMMAS)
    de.add_argument("--q", type=int)
    de.add_argument("--out")
    d.set_defaults(func=cmd_diagnose)

    v = sub.add_parser("verify", help="verification suites")
    vsub = v.add_subparsers(dest="suite", required=True)
    ng = vsub.add_parser("ng")
    ng.add_argument("--max-n", type=int, default=8)
    ng.add_argument("--jobs", type=int)
    ng.add_argument("--all-graphs", action="store_true")
    ng.add_argument("--from-g6")
    vsub.add_parser("johnson").add_argument("--k", type=int, required=True)
    ve = vsub.add_parser("expander")
    ve.add_argument("--gamma", required=True, choices=suites.EXPANDER_GAMMAS)
    ve.add_argument("--q", type=int)
    vsub.add_parser("srg").add_argument("--q", type=int, required=True)
    for sp in vsub.choices.values():
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--timing", action="store_true")
        sp.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IntegrityError as exc:
        print(f"inertia-lab: integrity failure: {exc}", file=sys.stderr)
        return 1
    except (InertiaLabError, OSError, json.JSONDecodeError) as exc:
        print(f"inertia-lab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
