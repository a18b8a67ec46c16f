"""Batch JSON-in/JSON-out command line front end.

One verb per kernel operation, no interactive mode.  Reports carry the
input hash, the seed, and the package version; identical (verb, input,
seed) produce byte-identical reports apart from the version field.
Exit codes: 0 ok, 1 a check failed, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, cocycle, coeff, corpus, hilbert, jsonio, lattice, tower, twisted


def _read_input(args) -> tuple[dict, str]:
    if args.input is None:
        return {}, ""
    raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    return json.loads(raw), raw


def _window_from(doc, c, default_bound):
    if isinstance(doc, list):
        return [jsonio.parse_vector(v) for v in doc]
    if isinstance(doc, dict):
        basis = [jsonio.parse_vector(v) for v in doc["basis"]]
        return cocycle.box_window(basis, int(doc.get("bound", default_bound)))
    if c.domain is not None:
        return cocycle.box_window(c.domain.basis, default_bound)
    raise ValueError("a window (or a cocycle with a lattice domain) is required")


def _beta_payload(beta: cocycle.BetaRule) -> dict:
    return jsonio.format_beta(beta)


# -- verb handlers ------------------------------------------------------------

def _run_lattice_hnf(doc, args):
    h, u = lattice.hnf([list(map(int, row)) for row in doc["matrix"]])
    return {"h": h, "u": u}


def _run_lattice_filtration(doc, args):
    dim = int(doc["ambient_dim"])
    cur = jsonio.parse_basis(doc["current"], dim)
    nxt, step = lattice.filtration_step(cur, jsonio.parse_vector(doc["adjoin"]))
    return {"next": jsonio.format_basis(nxt),
            "step": {"e_basis": [jsonio.format_vector(v) for v in step.e_basis],
                     "f": jsonio.format_vector(step.f), "n": step.n}}


def _run_lattice_quotient(doc, args):
    dim = int(doc["ambient_dim"])
    sub = jsonio.parse_basis(doc["basis"], dim)
    reps, factors = lattice.quotient_by_scaling(sub, int(doc["r"]))
    return {"reps": [jsonio.format_vector(v) for v in reps],
            "cyclic_factors": factors}


def _run_lattice_pointed(doc, args):
    dim = int(doc["ambient_dim"])
    gens = [jsonio.parse_vector(v) for v in doc["generators"]]
    cert = lattice.is_pointed(dim, gens)
    out = {"verdict": cert.verdict}
    if cert.functional is not None:
        out["functional"] = jsonio.format_vector(cert.functional)
    if cert.witness is not None:
        out["witness"] = jsonio.format_vector(cert.witness)
        out["combination"] = list(cert.combination)
    return out


def _run_cocycle_check(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    window = _window_from(doc.get("window"), c, args.window)
    ident = cocycle.check_cocycle(c, window, trials=args.trials, seed=args.seed)
    sym = cocycle.check_symmetric(c, window, trials=args.trials, seed=args.seed)
    return {"cocycle_identity": jsonio.format_report(ident),
            "symmetry": jsonio.format_report(sym),
            "_failed": not (ident.ok and sym.ok)}


def _run_cocycle_trivialize(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    bound = int(doc.get("bound", args.window))
    if doc.get("method", "lattice") == "roots":
        steps = [lattice.FiltrationStep(
                    tuple(jsonio.parse_vector(v) for v in s["e_basis"]),
                    jsonio.parse_vector(s["f"]), int(s["n"]))
                 for s in doc["filtration"]]
        got = cocycle.trivialize_via_roots(c, steps, bound=bound)
        if isinstance(got, cocycle.RootUnavailable):
            return {"result": "root_unavailable", "step": got.step, "n": got.n,
                    "element": jsonio.format_element(got.element)}
        return {"result": "trivialized", "beta": _beta_payload(got)}
    basis = [jsonio.parse_vector(v) for v in doc["basis"]]
    beta = cocycle.trivialize_on_lattice(c, basis, bound)
    return {"result": "trivialized", "beta": _beta_payload(beta)}


def _run_cocycle_segre(doc, args):
    c1, c2 = (jsonio.parse_cocycle(d) for d in doc["of"])
    return {"cocycle": jsonio.format_cocycle(cocycle.segre(c1, c2))}


def _run_cocycle_veronese(doc, args):
    c = jsonio.parse_cocycle(doc["of"])
    return {"cocycle": jsonio.format_cocycle(cocycle.veronese(c, int(doc["r"])))}


def _run_cocycle_extend(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    y = jsonio.parse_element(c.field, doc.get("y", "1/1"))
    ext = cocycle.extend_root(c, jsonio.parse_vector(doc["e"]), int(doc["p"]), y)
    return {"cocycle": jsonio.format_cocycle(ext)}


def _run_cocycle_divide(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    bound = int(doc.get("bound", args.window))
    root, beta = cocycle.divide_class(c, int(doc["r"]), bound=bound)
    window = cocycle.box_window(c.domain.basis, bound)
    table = {g: beta.value(g) for g in window}
    beta_tab = cocycle.BetaRule(field=c.field, domain=c.domain, table=table)
    return {"root": jsonio.format_cocycle(root),
            "beta": _beta_payload(beta_tab)}


def _run_cocycle_solve_fq(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    q = int(doc["q"])
    window = _window_from(doc.get("window"), c, args.window)
    beta = cocycle.coboundary_solve_finite_field(c, window, q)
    if beta is None:
        return {"result": "no_coboundary"}
    return {"result": "solved", "beta": _beta_payload(beta)}


def _run_algebra_mul(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    ctx = twisted.context(c)
    a = jsonio.parse_twisted(ctx, doc["a"])
    b = jsonio.parse_twisted(ctx, doc["b"])
    return {"product": jsonio.format_twisted(a * b)}


def _run_algebra_invert(doc, args):
    c = jsonio.parse_cocycle(doc["cocycle"])
    ctx = twisted.context(c)
    a = jsonio.parse_twisted(ctx, doc["a"])
    return {"inverse": jsonio.format_twisted(twisted.invert_homogeneous(a))}


def _run_rkd_cocycle(doc, args):
    sch = jsonio.parse_schedule(doc.get("schedule", "diagonal"))
    base = jsonio.parse_field(doc["base"]) if "base" in doc else None
    c = tower.limit_cocycle(int(doc["d"]), sch, base)
    values = []
    for g_doc, h_doc in doc.get("pairs", []):
        g, h = jsonio.parse_vector(g_doc), jsonio.parse_vector(h_doc)
        values.append({"g": g_doc, "h": h_doc,
                       "value": jsonio.format_element(c.at(g, h))})
    return {"cocycle": jsonio.format_cocycle(c), "values": values}


def _run_rkd_primes(doc, args):
    n = args.n if args.n is not None else int(doc.get("n", 7))
    sch = jsonio.parse_schedule(doc.get("schedule", "diagonal"))
    return {"primes": tower.prime_seq(sch, n)}


def _run_rkd_verify(doc, args):
    sch = jsonio.parse_schedule(doc.get("schedule", "diagonal"))
    d = int(doc.get("d", 1))
    levels = doc.get("levels", list(range(1, 7)))
    results = []
    failed = False
    for i in levels:
        for j in range(1, d + 1):
            rep = tower.verify_level_irreducible(int(i), j, sch)
            failed = failed or not rep.ok
            results.append({"level": int(i), "coordinate": j,
                            "verdict": rep.verdict})
    return {"irreducibility": results, "_failed": failed}


def _parse_hilbert_input(doc):
    grading = [jsonio.parse_vector(row) for row in doc["grading"]]
    dim = len(grading)
    n = len(grading[0]) if grading else 0
    cols = [tuple(grading[i][j] for i in range(dim)) for j in range(n)]
    spec = hilbert.graded_ring_spec(dim, cols,
                                    allow_zero_columns=bool(doc.get("allow_zero", False)))
    ideal = hilbert.monomial_ideal([tuple(map(int, g)) for g in doc.get("ideal", [])])
    return spec, ideal


def _run_hilbert_series(doc, args):
    spec, ideal = _parse_hilbert_input(doc)
    form = hilbert.hilbert_series(spec, ideal)
    return {"numerator": [{"deg": jsonio.format_vector(d), "coef": c}
                          for d, c in form.numerator],
            "denominator": [jsonio.format_vector(v)
                            for v in form.denominator_factors]}


def _run_hilbert_function(doc, args):
    spec, ideal = _parse_hilbert_input(doc)
    t = jsonio.parse_vector(doc["t"])
    bound = doc.get("bound")
    return {"count": hilbert.hilbert_function(spec, ideal, t,
                                              None if bound is None else int(bound))}


def _run_hilbert_verify(doc, args):
    spec, ideal = _parse_hilbert_input(doc)
    modest = hilbert.modest_check(spec, ideal)
    out = {"modest": modest.status}
    if modest.status == "not_modest":
        out["witness"] = list(modest.witness)
        out["_failed"] = True
        return out
    if "h" in doc:
        h = jsonio.parse_vector(doc["h"])
    else:
        h = lattice.is_pointed(spec.dim, spec.columns).functional
    rep = hilbert.verify_summable(spec, ideal, h, Fraction(doc.get("bound", args.window)))
    out["summable"] = jsonio.format_report(rep)
    out["_failed"] = not rep.ok
    return out


def _run_corpus(doc, args):
    outdir = Path(doc.get("out", args.out or "corpus"))
    outdir.mkdir(parents=True, exist_ok=True)
    count = int(doc.get("count", 20))
    written = []
    instances = corpus.hilbert_corpus(args.seed, count)
    payload = []
    for spec, ideal in instances:
        payload.append({
            "grading": [jsonio.format_vector(tuple(col[i] for col in spec.columns))
                        for i in range(spec.dim)],
            "ideal": [list(g) for g in ideal.generators]})
    path = outdir / f"hilbert_seed{args.seed}.json"
    path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    written.append(str(path))
    rules = corpus.bilinear_corpus(args.seed, count, [coeff.QQ, coeff.finite_field(5)])
    path = outdir / f"cocycles_seed{args.seed}.json"
    path.write_text(json.dumps([jsonio.format_cocycle(r) for r in rules],
                               sort_keys=True, indent=1) + "\n")
    written.append(str(path))
    return {"written": written, "count": count}


_HANDLERS = {
    "lattice.hnf": _run_lattice_hnf,
    "lattice.filtration": _run_lattice_filtration,
    "lattice.quotient": _run_lattice_quotient,
    "lattice.pointed": _run_lattice_pointed,
    "cocycle.check": _run_cocycle_check,
    "cocycle.trivialize": _run_cocycle_trivialize,
    "cocycle.segre": _run_cocycle_segre,
    "cocycle.veronese": _run_cocycle_veronese,
    "cocycle.extend": _run_cocycle_extend,
    "cocycle.divide": _run_cocycle_divide,
    "cocycle.solve-fq": _run_cocycle_solve_fq,
    "algebra.mul": _run_algebra_mul,
    "algebra.invert": _run_algebra_invert,
    "rkd.cocycle": _run_rkd_cocycle,
    "rkd.primes": _run_rkd_primes,
    "rkd.verify": _run_rkd_verify,
    "hilbert.series": _run_hilbert_series,
    "hilbert.function": _run_hilbert_function,
    "hilbert.verify": _run_hilbert_verify,
    "corpus": _run_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgraded",
        description="Exact kernel for gradings of rings by subgroups of Q^d")
    parser.add_argument("verb", choices=sorted(_HANDLERS))
    parser.add_argument("--input", "-i", default=None,
                        help="JSON problem file, or - for stdin")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--window", type=int, default=4,
                        help="default box bound for windowed checks")
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--n", type=int, default=None,
                        help="term count for rkd.primes")
    parser.add_argument("--out", default=None, help="output directory for corpus")
    return parser


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
        return
    print(f"status: {report['status']}")
    for key, val in sorted(report["payload"].items()):
        print(f"{key}: {json.dumps(val, sort_keys=True)}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        doc, raw = _read_input(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    handler = _HANDLERS[args.verb]
    try:
        payload = handler(doc, args)
    except (ValueError, KeyError, TypeError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    failed = bool(payload.pop("_failed", False))
    report = {
        "status": "fail" if failed else "ok",
        "payload": payload,
        "provenance": {
            "input_sha256": hashlib.sha256(raw.encode()).hexdigest(),
            "seed": args.seed,
            "version": __version__,
        },
    }
    _emit(report, args.format)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
