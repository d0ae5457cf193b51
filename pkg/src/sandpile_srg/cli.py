"""Command-line interface: ``sandpile-srg <command> ...``.

Every command builds one JSON-compatible payload; ``--json`` prints it as is
and the default human mode renders the same payload as text, so both modes
carry identical numbers.

Exit codes: 0 success, 1 usage error, 2 input or infeasibility error,
3 verification mismatch.
"""

import argparse
import importlib.resources
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import predict as pr
from ._arith import decimal, prime_divisors, valuation
from .errors import ConferenceGraph, Disconnected, HypothesisViolation, SandpileError
from .formats import parse_adjacency_text, parse_graph6, parse_matrix_text, parse_parameter_table
from .graphs import FAMILIES, build_family, complement, laplacian, srg_parameters
from .groups import (
    AbelianGroup,
    critical_group_at_primes,
    laplacian_components,
    laplacian_local_divisors,
)
from .linalg import BACKEND, snf
from .srg import (
    SrgParams,
    critical_group_order,
    exponent_bound,
    laplacian_spectrum,
    validate_params,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3

log = logging.getLogger("sandpile_srg")


def load_schema(command):
    """The published JSON schema for ``command --json`` output."""
    res = importlib.resources.files("sandpile_srg") / "schemas" / f"{command}.json"
    return json.loads(res.read_text(encoding="utf-8"))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; our contract reserves 2 for bad input
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _params(args):
    return SrgParams(args.v, args.k, args.lam, args.mu)


def order_factorization(params):
    """``{p: v_p(|K|)}`` straight from the parameters."""
    spec = laplacian_spectrum(params)
    v = params.v
    if spec.integral:
        primes = prime_divisors(spec.r * spec.s)
        exps = {p: valuation(spec.r, p) * spec.f + valuation(spec.s, p) * spec.g
                - valuation(v, p) for p in primes}
    else:
        f = (v - 1) // 2
        exps = {p: valuation(params.mu * v, p) * f - valuation(v, p)
                for p in prime_divisors(params.mu * v)}
    return {str(p): e for p, e in exps.items() if e > 0}


def _order_text(d):
    if len(d["order"]) <= 60:
        return d["order"]
    return " * ".join(f"{p}^{e}" for p, e in d["order_factorization"].items())


# payload builders

def spectrum_payload(params):
    feas = validate_params(params)
    spec = laplacian_spectrum(params)
    out = {"params": list(params), "conference": not spec.integral,
           "feasibility": feas.to_json(), "feasible": feas.feasible}
    if spec.integral:
        out.update(r=spec.r, f=spec.f, s=spec.s, g=spec.g,
                   order=decimal(critical_group_order(spec, params.v)),
                   exponent_bound=exponent_bound(spec))
    else:
        # r s = mu v still holds, so |K| = (mu v)^f / v with f = g = (v-1)/2
        f = (params.v - 1) // 2
        out.update(r=None, f=f, s=None, g=f,
                   order=decimal((params.mu * params.v) ** f // params.v),
                   exponent_bound=params.mu * params.v)
    out["order_factorization"] = order_factorization(params)
    return out


def predict_payload(params, prime=None, e0=None):
    spec = laplacian_spectrum(params)
    if not spec.integral:
        raise ConferenceGraph(f"{params} is a conference graph")
    if prime is None:
        preds = [pred for _, pred in pr.predict_all(params).entries]
    else:
        preds = [pr.predict_prime(params, prime, e0)]
    return {
        "params": list(params),
        "spectrum": {"r": spec.r, "f": spec.f, "s": spec.s, "g": spec.g},
        "order": decimal(critical_group_order(spec, params.v)),
        "order_factorization": order_factorization(params),
        "exponent_bound": spec.r * spec.s,
        "predictions": [pred.to_json() for pred in preds],
    }


def load_graph(args):
    if args.family:
        name, *rest = args.family
        try:
            nums = [int(x) for x in rest]
        except ValueError:
            raise UsageError(f"family arguments must be integers, got {rest}") from None
        if name not in FAMILIES:
            raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
        if len(nums) != FAMILIES[name][1]:
            raise UsageError(f"family {name!r} takes {FAMILIES[name][1]} argument(s)")
        return build_family(name, *nums, complemented=args.complement), " ".join(args.family)
    if args.graph6:
        G, src = parse_graph6(_read(args.graph6)), args.graph6
    else:
        G, src = parse_adjacency_text(_read(args.matrix)), args.matrix
    if args.complement:
        G = complement(G)
    return G, src


def compute_group(G):
    """Critical group of ``G`` plus the per-prime p-ranks.

    For an srg every invariant factor divides ``mu v``, so the prime-local
    elimination at each prime of ``mu v`` with cap ``v_p(mu v)`` is complete.
    Other graphs go through the global Smith normal form.
    """
    L = laplacian(G)
    if laplacian_components(L) != 1:
        raise Disconnected("graph is not connected")
    params = srg_parameters(G)
    if params:
        bound = params.mu * params.v
        caps = {p: valuation(bound, p) for p in prime_divisors(bound)}
        group, local = critical_group_at_primes(L, caps)
        ranks = {p: e.p_rank for p, e in local.items()}
        return group, ranks, "prime-local", params
    factors = snf(L).invariant_factors
    group = AbelianGroup.from_invariant_factors([s for s in factors if s > 1])
    ranks = {p: sum(1 for s in factors if s % p) for p in group.primes}
    return group, ranks, "global", params


def compute_payload(G, source):
    group, ranks, method, params = compute_group(G)
    return {
        "source": source,
        "n": G.n,
        "edges": len(G.edges()),
        "srg": list(params) if params else None,
        "method": method,
        "group": {
            "elementary": group.to_text(),
            "invariant": group.to_invariant_text(),
            "divisors": group.to_json(),
        },
        "invariant_factors": [decimal(d) for d in group.invariant_factors()],
        "order": decimal(group.order()),
        "spanning_trees": decimal(group.order()),
        "primes": [
            {"p": p, "sylow": group.sylow(p).to_text(),
             "multiplicities": list(group.multiplicities(p)), "p_rank": ranks[p]}
            for p in sorted(ranks) if p in group.primes
        ],
    }


def verify_payload(G, source, params=None):
    group, ranks, method, actual = compute_group(G)
    if params is None:
        if not actual:
            raise HypothesisViolation(f"{source} is not a strongly regular graph: {actual.reason}")
        params = actual
    report = pr.predict_all(params)
    predicted = dict(report.entries)
    rows = []
    for p in sorted(set(predicted) | set(group.primes)):
        pred = predicted.get(p) or pr.NotApplicable(p, "p does not divide the predicted order")
        e0 = ranks.get(p)
        if e0 is None:
            # p divides the predicted order but not the computed one
            e0 = laplacian_local_divisors(laplacian(G), p, 1).p_rank
        verdict = pr.consistency_check(pred, group, e0)
        rows.append({
            "p": p, "variant": pred.kind, "prediction": pred.render(), "e0": e0,
            "computed": group.sylow(p).to_text(), "status": verdict.status,
            "case": verdict.case, "details": verdict.details,
        })
    return {
        "source": source,
        "params": list(params),
        "graph_params": list(actual) if actual else None,
        "method": method,
        "group": group.to_text(),
        "results": rows,
        "ok": all(r["status"] != "Mismatch" for r in rows),
    }


def _scan_row(row):
    out = {"line": row.line, "params": list(row.params), "errors": []}
    try:
        params = SrgParams(*row.params)
    except SandpileError as exc:
        out.update(feasible=False, conference=False, spectrum=None, spectrum_match=None,
                   absolute_bound_ok=None, notes=[], predictions=[])
        out["errors"].append(str(exc))
        return out
    feas = validate_params(params)
    spec = laplacian_spectrum(params)
    out.update(feasible=feas.feasible, conference=feas.conference,
               absolute_bound_ok=feas.absolute_bound_ok, notes=list(feas.notes))
    if not spec.integral:
        out.update(spectrum=None, spectrum_match=None if not row.has_spectrum else False,
                   predictions=[])
        return out
    mine = [spec.r, spec.f, spec.s, spec.g]
    out["spectrum"] = mine
    out["spectrum_match"] = None if not row.has_spectrum else mine == [row.r_L, row.f, row.s_L, row.g]
    preds = []
    try:
        for p, pred in pr.predict_all(params).entries:
            text = "constraints only" if pred.kind == "ConstraintsOnly" else pred.render()
            preds.append({"p": p, "variant": pred.kind, "text": text})
    except SandpileError as exc:
        out["errors"].append(f"{type(exc).__name__}: {exc}")
    out["predictions"] = preds
    return out


def scan_payload(rows, threads=None):
    if threads is None:
        threads = int(os.environ.get("SANDPILE_SRG_THREADS", "0") or 0)
    if threads <= 0:
        threads = os.cpu_count() or 1
    if threads == 1 or len(rows) < 2:
        results = [_scan_row(r) for r in rows]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_row, rows))
    summary = {
        "rows": len(results),
        "spectrum_mismatches": sum(1 for r in results if r["spectrum_match"] is False),
        "infeasible": sum(1 for r in results if not r["feasible"]),
        "conference": sum(1 for r in results if r["conference"]),
        "errors": sum(1 for r in results if r["errors"]),
    }
    return {"results": results, "summary": summary}


def snf_payload(M):
    res = snf(M)
    return {"rows": M.rows, "cols": M.cols, "diagonal": [decimal(d) for d in res.invariant_factors],
            "rank": res.rank}


def nonexist_payload():
    return pr.nonexistence_28_report().to_json()


# human renderers

def _render_spectrum(d):
    p = d["params"]
    lines = [f"srg({p[0]},{p[1]},{p[2]},{p[3]})"]
    if d["conference"]:
        lines.append(f"conference graph: irrational Laplacian eigenvalues, f = g = {d['f']}")
    else:
        lines.append(f"r={d['r']} f={d['f']} s={d['s']} g={d['g']}")
    lines.append(f"|K| = {_order_text(d)}")
    lines.append(f"exponent divides {d['exponent_bound']}")
    fe = d["feasibility"]
    lines.append("feasible" if d["feasible"] else "infeasible")
    for key in ("identity_ok", "multiplicities_integral", "absolute_bound_ok"):
        lines.append(f"  {key}: {fe[key]}")
    lines += [f"  note: {n}" for n in fe["notes"]]
    return lines


def _render_prediction(pred):
    head = f"p={pred['p']}: {pred['variant']}"
    if pred["theorem"]:
        head += f" [{pred['theorem']}]"
    lines = [head]
    if pred["variant"] == "ConstraintsOnly":
        lines += [f"  {eq}" for eq in pred["equations"]]
    else:
        lines.append(f"  {pred['text']}")
    if pred.get("e0") is not None:
        lines.append(f"  p-rank e0 = {pred['e0']}")
    if pred.get("e0_range"):
        lo, hi = pred["e0_range"]
        lines.append(f"  e0 in [{lo}, {hi}]")
    return lines


def _render_predict(d):
    s = d["spectrum"]
    p = d["params"]
    lines = [f"srg({p[0]},{p[1]},{p[2]},{p[3]}): r={s['r']} f={s['f']} s={s['s']} g={s['g']}",
             f"|K| = {_order_text(d)}"]
    for pred in d["predictions"]:
        lines += _render_prediction(pred)
    return lines


def _render_compute(d):
    lines = [f"{d['source']}: n={d['n']} edges={d['edges']}"]
    if d["srg"]:
        lines.append("srg({},{},{},{})".format(*d["srg"]))
    lines += [
        f"K = {d['group']['elementary']}",
        f"K = {d['group']['invariant']}",
        f"spanning trees = {d['spanning_trees']}",
    ]
    for row in d["primes"]:
        lines.append(f"p={row['p']}: p-rank {row['p_rank']}, Sylow {row['sylow']}")
    return lines


def _render_verify(d):
    lines = [f"{d['source']}: srg({','.join(map(str, d['params']))})", f"K = {d['group']}"]
    for r in d["results"]:
        status = r["status"] if r["case"] is None else f"{r['status']}({r['case']})"
        lines.append(f"p={r['p']}: {status}  e0={r['e0']}  computed {r['computed']}  "
                     f"predicted {r['prediction']}")
        if r["details"]:
            lines.append(f"  {r['details']}")
    return lines


def _render_scan(d):
    lines = []
    for r in d["results"]:
        p = r["params"]
        tag = "ok" if r["feasible"] else "INFEASIBLE"
        if r["conference"]:
            tag += " conference"
        if r["spectrum_match"] is False:
            tag += " SPECTRUM-MISMATCH"
        if r.get("absolute_bound_ok") is False:
            tag += " absolute-bound"
        preds = "; ".join(f"p={q['p']} {q['text']}" for q in r["predictions"])
        lines.append(f"{p[0]} {p[1]} {p[2]} {p[3]}: {tag}" + (f"  {preds}" if preds else ""))
        lines += [f"  error: {e}" for e in r["errors"]]
    s = d["summary"]
    lines.append(f"rows={s['rows']} spectrum_mismatches={s['spectrum_mismatches']} "
                 f"infeasible={s['infeasible']} conference={s['conference']} errors={s['errors']}")
    return lines


def _render_snf(d):
    return [f"{d['rows']}x{d['cols']} rank {d['rank']}", f"diag({', '.join(d['diagonal'])})"]


def _render_nonexist(d):
    lines = ["srg({},{},{},{}) does not exist".format(*d["params"]) if d["contradiction"]
             else "no contradiction found"]
    lines += [f"  {s}" for s in d["steps"]]
    lines.append(f"{d['independent_vectors']} independent kernel vectors vs dimension {d['kernel_dim']}")
    return lines


# commands

def cmd_spectrum(args):
    d = spectrum_payload(_params(args))
    return d, _render_spectrum, EXIT_OK if d["feasible"] else EXIT_INPUT


def cmd_predict(args):
    if args.e0 is not None and args.prime is None:
        raise UsageError("--e0 requires --prime")
    return predict_payload(_params(args), args.prime, args.e0), _render_predict, EXIT_OK


def cmd_compute(args):
    G, src = load_graph(args)
    return compute_payload(G, src), _render_compute, EXIT_OK


def cmd_verify(args):
    G, src = load_graph(args)
    params = SrgParams(*args.params) if args.params else None
    d = verify_payload(G, src, params)
    return d, _render_verify, EXIT_OK if d["ok"] else EXIT_MISMATCH


def cmd_scan(args):
    rows = parse_parameter_table(_read(args.table))
    return scan_payload(rows, args.threads), _render_scan, EXIT_OK


def cmd_snf(args):
    return snf_payload(parse_matrix_text(_read(args.matrix))), _render_snf, EXIT_OK


def cmd_nonexist28(args):
    return nonexist_payload(), _render_nonexist, EXIT_OK


def _graph_source(sp):
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", nargs="+", metavar="NAME",
                     help=f"built-in family and its integer arguments ({', '.join(FAMILIES)})")
    src.add_argument("--graph6", metavar="FILE", help="graph6 file, '-' for stdin")
    src.add_argument("--matrix", metavar="FILE", help="0/1 adjacency text file, '-' for stdin")
    sp.add_argument("--complement", action="store_true", help="use the complement graph")


def build_parser():
    parser = _Parser(prog="sandpile-srg", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def params_cmd(name, helptext):
        sp = sub.add_parser(name, help=helptext)
        for dest in ("v", "k", "lam", "mu"):
            sp.add_argument(dest, type=int)
        return sp

    sp = params_cmd("spectrum", "Laplacian spectrum, |K| and feasibility of srg parameters")
    sp.set_defaults(func=cmd_spectrum)
    sp = params_cmd("predict", "Sylow subgroups predicted from srg parameters")
    sp.add_argument("--prime", type=int)
    sp.add_argument("--e0", type=int, help="p-rank, collapses rank-parametrised predictions")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("compute", help="critical group of a graph")
    _graph_source(sp)
    sp.set_defaults(func=cmd_compute)
    sp = sub.add_parser("verify", help="compare computed Sylow subgroups with predictions")
    _graph_source(sp)
    sp.add_argument("--params", nargs=4, type=int, metavar=("V", "K", "LAMBDA", "MU"),
                    help="predict from these parameters instead of the graph's own")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", help="spectrum, feasibility and predictions for a parameter table")
    sp.add_argument("table", help="table file, '-' for stdin")
    sp.add_argument("--threads", type=int, default=None,
                    help="worker threads (default SANDPILE_SRG_THREADS, 0 = one per CPU)")
    sp.set_defaults(func=cmd_scan)
    sp = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    sp.add_argument("matrix", help="'rows cols' header then entries, '-' for stdin")
    sp.set_defaults(func=cmd_snf)
    sp = sub.add_parser("nonexist28", help="parameter-only proof that srg(28,9,0,4) does not exist")
    sp.set_defaults(func=cmd_nonexist28)
    return parser


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else
                        logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    log.info("kernel backend: %s", BACKEND)
    try:
        payload, render, code = args.func(args)
    except UsageError as exc:
        print(f"sandpile-srg: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SandpileError, OSError) as exc:
        print(f"sandpile-srg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        json.dump(payload, stdout, indent=2)
        stdout.write("\n")
    else:
        stdout.write("\n".join(render(payload)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
