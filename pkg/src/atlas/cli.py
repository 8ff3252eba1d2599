"""``atlas`` command line: compute, gadget, embed, kcenter, verify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import report
from .embedding import FiniteMetric, MetricError
from .gadgets import GENERATORS
from .graph import GraphError
from .highway import TAGS, anchored_hitting_set, enumerate_shortest_paths
from .hitting import CapExceeded
from .io import format_rational, parse_rational, read_graph, read_metric, write_graph

PARAM_ALIASES = {"skeleton": "kappa", "ddim": "doubling", "hindex": "h"}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_config(path: str | None) -> dict:
    """Optional JSON config: ``{"caps": {param: n}, "timeout": seconds, "jobs": n}``."""
    if path is None:
        return {}
    cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    unknown = set(cfg) - {"caps", "timeout", "jobs"}
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return cfg


def _settings(args) -> tuple[dict, float | None, int]:
    cfg = load_config(args.config)
    caps = {k: int(v) for k, v in cfg.get("caps", {}).items()}
    timeout = cfg.get("timeout", report.DEFAULT_TIMEOUT)
    if args.timeout is not None:
        timeout = args.timeout
    if timeout is not None and timeout <= 0:
        timeout = None
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 1))
    return caps, timeout, jobs


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, payload, rows=None, header=None) -> None:
    if args.format == "csv" and rows is not None:
        text = _csv(rows, header)
    else:
        text = dumps(payload)
    sys.stdout.write(text)


def _cell(x) -> str:
    return "" if x is None else str(x)


def cmd_compute(args) -> int:
    g = read_graph(args.graph)
    caps, timeout, jobs = _settings(args)
    if args.anchor is not None:
        if args.radius is None or len(args.param or []) != 1 or args.param[0] not in TAGS:
            raise ValueError("--anchor needs --radius and exactly one of --param hd1|hd2|hd3")
        w = anchored_hitting_set(enumerate_shortest_paths(g, cap=None), args.anchor,
                                 parse_rational(args.radius), args.param[0])
        payload = report.to_json(w)
        _emit(args, payload, [[w.tag, w.anchor, format_rational(w.radius), w.value]],
              ["param", "anchor", "radius", "value"])
        return 0
    params = [PARAM_ALIASES.get(p, p) for p in (args.param or report.PARAMS)]
    for p in params:
        if p not in report.COMPUTERS:
            raise ValueError(f"unknown parameter {p!r}")
    rep = report.report_graph(Path(args.graph).stem, g, params, caps, timeout, jobs)
    rows = [[rep.graph_id, p, _cell(r["value"]), r["status"]] for p, r in rep.params.items()]
    _emit(args, rep.to_dict(), rows, ["graph", "param", "value", "status"])
    return 0 if rep.ok else 1


def _gadget_params(args) -> dict:
    params: dict = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"gadget parameter {item!r} is not key=value")
        if key == "metric":
            params[key] = value.lower() in ("1", "true", "yes")
        elif key == "variant":
            params[key] = value
        else:
            params[key] = int(value)
    if args.graph is not None:
        params["g"] = read_graph(args.graph)
    return params


def cmd_gadget(args) -> int:
    caps, _, _ = _settings(args)
    params = _gadget_params(args)
    g, spec = report.gadget(args.family, **params)
    if args.out:
        write_graph(g, args.out, comment=f"{spec.family} {spec.variant or ''}".strip())
        Path(str(args.out) + ".claims.json").write_text(dumps(report.to_json(spec)), encoding="utf-8")
    if args.check:
        rep = report.run_gadget_claims(args.family, params, caps)
        rows = [[rep["family"], c["param"], c["relation"], _cell(c["expected"]), _cell(c["actual"]),
                 c["status"], _cell(c.get("pass"))] for c in rep["claims"]]
        _emit(args, rep, rows, ["family", "param", "relation", "expected", "actual", "status", "pass"])
        return 0 if rep["ok"] else 1
    payload = {"family": spec.family, "n": g.n, "m": g.m, "spec": report.to_json(spec)}
    if not args.out:
        payload["edges"] = report.to_json([list(e) for e in g.edges])
    _emit(args, payload)
    return 0


def cmd_embed(args) -> int:
    caps, _, _ = _settings(args)
    x = FiniteMetric.from_matrix(read_metric(args.metric))
    rep, g = report.embedding_report(x, parse_rational(args.epsilon), caps)
    if args.out:
        write_graph(g, args.out, comment=f"embedding eps={args.epsilon}")
    rows = [[k, _cell(v)] for k, v in sorted(rep.items()) if not isinstance(v, list)]
    _emit(args, rep, rows, ["field", "value"])
    return 0 if rep["ok"] else 1


def cmd_kcenter(args) -> int:
    g = read_graph(args.graph)
    rep = report.kcenter_report(g, args.k, exact=args.exact, ratio=args.ratio)
    rows = []
    for kind in ("greedy", "exact"):
        if kind in rep:
            rows.append([kind, args.k, rep[kind]["radius"], " ".join(map(str, rep[kind]["centers"]))])
    _emit(args, rep, rows, ["solver", "k", "radius", "centers"])
    return 0 if rep.get("within_factor_2", True) else 1


def cmd_verify(args) -> int:
    caps, timeout, jobs = _settings(args)
    reports = report.verify_corpus(args.directory, caps=caps, timeout=timeout, jobs=jobs)
    payload = {"graphs": [r.to_dict() for r in reports], "ok": all(r.ok for r in reports),
               "failures": sum(not r.ok for r in reports)}
    rows = []
    for r in reports:
        if r.error:
            rows.append([r.graph_id, "error", "", r.error, "False"])
        for p, res in r.params.items():
            rows.append([r.graph_id, "param", p, _cell(res["value"]), res["status"]])
        for c in r.checks:
            rows.append([r.graph_id, "check", c["name"], f"{c['lhs']} <= {c['rhs']}", str(c["pass"])])
    text = _csv(rows, ["graph", "kind", "name", "value", "status"]) if args.format == "csv" else dumps(payload)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if payload["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=None, help="parallel workers per graph")
    common.add_argument("--timeout", type=float, default=None,
                        help=f"seconds per parameter (default {report.DEFAULT_TIMEOUT:g}; 0 disables)")
    common.add_argument("--config", default=None, help="JSON file with caps / timeout / jobs")

    ap = argparse.ArgumentParser(prog="atlas", description="Exact graph parameters for shortest-path structure.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="parameters of one graph")
    p.add_argument("graph")
    p.add_argument("--param", action="append",
                   help=f"repeatable; one of {', '.join(report.PARAMS)} (default: all)")
    p.add_argument("--anchor", type=int, default=None)
    p.add_argument("--radius", default=None)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("gadget", parents=[common], help="generate a gadget and its claims")
    p.add_argument("family", choices=sorted(GENERATORS))
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--graph", default=None, help="input graph for spanning_tree_tight_weights / vc_reduction")
    p.add_argument("--out", default=None)
    p.add_argument("--check", action="store_true", help="evaluate the claims")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("embed", parents=[common], help="embed a finite metric")
    p.add_argument("--metric", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("kcenter", parents=[common], help="k-center radius")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--ratio", action="store_true")
    p.set_defaults(func=cmd_kcenter)

    p = sub.add_parser("verify", parents=[common], help="relationship checks over a directory")
    p.add_argument("directory")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, MetricError, CapExceeded, ValueError, OSError) as exc:
        sys.stderr.write(f"atlas: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
