"""Parameter reports, relationship checks and gadget-claim evaluation."""
from __future__ import annotations

import dataclasses
import multiprocessing
import time
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing.connection import wait
from pathlib import Path
from typing import Callable, Iterable

from . import classic
from .classic import Decomposition
from .embedding import (
    FiniteMetric,
    build_embedded_graph,
    ceil_log2,
    kappa_bound,
    long_edge_violations,
    pruning_violations,
    verify_distortion,
    verify_hierarchy,
)
from .gadgets import GENERATORS, Claim, GadgetSpec
from .graph import GraphError, WeightedGraph, components, is_metric
from .highway import anchored_hitting_set, enumerate_shortest_paths, highway_dimension
from .hitting import CapExceeded
from .io import format_rational, read_graph
from .kcenter import exact_kcenter, hochbaum_shmoys
from .skeleton import skeleton_dimension

PARAMS = ("kappa", "hd1", "hd2", "hd3", "ml", "bw", "pw", "tw", "dl", "h", "maxdeg", "mindeg", "doubling")
OK, TIES, SKIPPED, ERROR = "ok", "tie-flagged", "skipped-cap", "error"
DEFAULT_TIMEOUT = 60.0


def to_json(obj):
    """Convert results to JSON-ready values; rationals become ``"p/q"`` strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str, float)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Decomposition):
        return {"kind": obj.kind, "width": obj.width,
                "bags": [sorted(b) for b in obj.bags], "tree_edges": [list(e) for e in obj.tree_edges]}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_json(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_json(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _highway(tag: str):
    def run(g: WeightedGraph, cap):
        w = highway_dimension(g, tag, cap=cap)
        wit = {"anchor": w.anchor, "radius": w.radius, "hitting_set": w.hitting_set}
        return w.value, wit, w.had_ties
    return run


def _classic(fn):
    def run(g: WeightedGraph, cap):
        r = fn(g, cap=cap)
        return r.value, r.witness, False
    return run


def _kappa(g: WeightedGraph, cap):
    if cap is not None and g.n > cap:
        raise CapExceeded(f"kappa capped at n={cap}")
    r = skeleton_dimension(g)
    return r.kappa, {"source": r.witness_source, "radius": r.witness_radius}, r.had_ties


def _doubling(g: WeightedGraph, cap):
    r = classic.doubling_dimension(g, cap=cap)
    return r.d, {"ddim": r.ddim, "center": r.center, "radius": r.radius}, False


def _labeling(fn):
    def run(g: WeightedGraph, cap):
        r = fn(g, cap=cap)
        return r.value, {str(v): lab for v, lab in sorted(r.witness.items())}, False
    return run


COMPUTERS: dict[str, Callable] = {
    "kappa": _kappa,
    "hd1": _highway("hd1"),
    "hd2": _highway("hd2"),
    "hd3": _highway("hd3"),
    "ml": _classic(classic.max_leaf_number),
    "bw": _labeling(classic.bandwidth),
    "pw": _classic(classic.pathwidth),
    "tw": _classic(classic.treewidth),
    "dl": _classic(classic.distance_to_linear_forest),
    "h": lambda g, cap: (classic.h_index(g), None, False),
    "maxdeg": lambda g, cap: (classic.degree_stats(g)[1], None, False),
    "mindeg": lambda g, cap: (classic.degree_stats(g)[0], None, False),
    "doubling": _doubling,
}


def compute_parameter(g: WeightedGraph, name: str, cap: int | None = None) -> dict:
    """One parameter as ``{"value", "witness", "status"}``; caps turn into skipped-cap."""
    if name not in COMPUTERS:
        raise ValueError(f"unknown parameter {name!r}")
    try:
        value, witness, ties = COMPUTERS[name](g, cap)
    except CapExceeded as exc:
        return {"value": None, "witness": None, "status": SKIPPED, "detail": str(exc)}
    return {"value": value, "witness": to_json(witness), "status": TIES if ties else OK}


def _worker(conn, g, name, cap) -> None:
    try:
        conn.send(compute_parameter(g, name, cap))
    except Exception as exc:  # reported, not raised, so the parent keeps going
        conn.send({"value": None, "witness": None, "status": ERROR, "detail": repr(exc)})
    finally:
        conn.close()


def compute_parameters(
    g: WeightedGraph,
    params: Iterable[str] = PARAMS,
    caps: dict[str, int] | None = None,
    timeout: float | None = None,
    jobs: int = 1,
) -> dict[str, dict]:
    """Compute several parameters, each with an optional wall-clock limit.

    Without a timeout and with one job everything runs in-process.  Otherwise
    each parameter gets a forked worker, at most ``jobs`` at a time; a worker
    past its deadline is killed and the parameter reported as skipped-cap.
    """
    params = list(params)
    caps = caps or {}
    if timeout is None and jobs <= 1:
        return {p: compute_parameter(g, p, caps.get(p)) for p in params}
    ctx = multiprocessing.get_context("fork")
    results: dict[str, dict] = {}
    pending = list(params)
    running: dict = {}
    while pending or running:
        while pending and len(running) < max(1, jobs):
            p = pending.pop(0)
            recv, send = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_worker, args=(send, g, p, caps.get(p)), daemon=True)
            proc.start()
            send.close()
            running[recv] = (p, proc, time.monotonic())
        wait_for = None
        if timeout is not None:
            now = time.monotonic()
            wait_for = max(0.0, min(start + timeout - now for _, _, start in running.values()))
        for conn in wait(list(running), timeout=wait_for):
            p, proc, _ = running.pop(conn)
            try:
                results[p] = conn.recv()
            except EOFError:
                results[p] = {"value": None, "witness": None, "status": ERROR, "detail": "worker died"}
            conn.close()
            proc.join()
        if timeout is not None:
            now = time.monotonic()
            for conn, (p, proc, start) in list(running.items()):
                if now - start >= timeout:
                    proc.kill()
                    proc.join()
                    conn.close()
                    del running[conn]
                    results[p] = {"value": None, "witness": None, "status": SKIPPED,
                                  "detail": f"timeout after {timeout:g}s"}
    return {p: results[p] for p in params}


# -- relationships -----------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    lhs: str
    rhs: str
    bound: Callable[[dict], int]  # right-hand side from the parameter values
    needs: tuple[str, ...]
    applies: Callable[[WeightedGraph], bool] = lambda g: True


def _connected_nontrivial(g: WeightedGraph) -> bool:
    return g.n >= 2 and len(components(g)) == 1


RELATIONS = (
    Relation("kappa <= ml", "kappa", "ml", lambda v: v["ml"], ("kappa", "ml")),
    Relation("bw <= ml", "bw", "ml", lambda v: v["ml"], ("bw", "ml")),
    Relation("pw <= bw", "pw", "bw", lambda v: v["bw"], ("pw", "bw")),
    Relation("tw <= pw", "tw", "pw", lambda v: v["pw"], ("tw", "pw")),
    Relation("maxdeg <= 2*bw", "maxdeg", "2*bw", lambda v: 2 * v["bw"], ("maxdeg", "bw")),
    Relation("dl <= ml-1", "dl", "ml-1", lambda v: v["ml"] - 1, ("dl", "ml"), _connected_nontrivial),
    Relation("pw <= dl+1", "pw", "dl+1", lambda v: v["dl"] + 1, ("pw", "dl")),
    Relation("h <= maxdeg", "h", "maxdeg", lambda v: v["maxdeg"], ("h", "maxdeg")),
    Relation("mindeg <= tw", "mindeg", "tw", lambda v: v["tw"], ("mindeg", "tw")),
    Relation("hd2 <= hd1", "hd2", "hd1", lambda v: v["hd1"], ("hd2", "hd1")),
    Relation("hd1 <= hd3*(hd3+1)", "hd1", "hd3*(hd3+1)", lambda v: v["hd3"] * (v["hd3"] + 1), ("hd1", "hd3")),
    Relation("hd2 <= hd3", "hd2", "hd3", lambda v: v["hd3"], ("hd2", "hd3")),
    Relation("kappa <= hd3", "kappa", "hd3", lambda v: v["hd3"], ("kappa", "hd3")),
    Relation("doubling <= 2*kappa+1", "doubling", "2*kappa+1", lambda v: 2 * v["kappa"] + 1, ("doubling", "kappa")),
)


def relationship_checks(g: WeightedGraph, params: dict[str, dict]) -> list[dict]:
    """Every relation whose inputs were computed; skipped inputs drop the check."""
    values = {p: r["value"] for p, r in params.items() if r["status"] in (OK, TIES)}
    out = []
    for rel in RELATIONS:
        if not all(p in values for p in rel.needs) or not rel.applies(g):
            continue
        lhs, rhs = values[rel.lhs], rel.bound(values)
        out.append({"name": rel.name, "lhs": lhs, "relation": "<=", "rhs": rhs, "pass": lhs <= rhs})
    return out


@dataclass
class ParameterReport:
    graph_id: str
    n: int | None = None
    m: int | None = None
    params: dict[str, dict] = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(c["pass"] for c in self.checks) and \
            all(p["status"] != ERROR for p in self.params.values())

    def to_dict(self) -> dict:
        return {"graph_id": self.graph_id, "n": self.n, "m": self.m, "params": self.params,
                "checks": self.checks, "error": self.error, "ok": self.ok}


def report_graph(graph_id: str, g: WeightedGraph, params: Iterable[str] = PARAMS,
                 caps: dict[str, int] | None = None, timeout: float | None = None,
                 jobs: int = 1) -> ParameterReport:
    res = compute_parameters(g, params, caps, timeout, jobs)
    return ParameterReport(graph_id, g.n, g.m, res, relationship_checks(g, res))


def verify_graphs(graphs: Iterable[tuple[str, WeightedGraph]], **kw) -> list[ParameterReport]:
    return [report_graph(name, g, **kw) for name, g in graphs]


def verify_corpus(directory: str | Path, **kw) -> list[ParameterReport]:
    """Report on every ``*.txt`` / ``*.gr`` file of ``directory`` in name order."""
    reports = []
    files = sorted(p for p in Path(directory).iterdir() if p.suffix in (".txt", ".gr") and p.is_file())
    for path in files:
        try:
            g = read_graph(path)
        except (GraphError, OSError, ValueError, UnicodeDecodeError) as exc:
            reports.append(ParameterReport(path.stem, error=f"{type(exc).__name__}: {exc}"))
            continue
        reports.append(report_graph(path.stem, g, **kw))
    return reports


# -- gadget claims -----------------------------------------------------------

def _compare(actual, relation: str, expected) -> bool:
    if relation == "=":
        return actual == expected
    if relation == "<=":
        return actual <= expected
    if relation == ">=":
        return actual >= expected
    raise ValueError(f"unknown relation {relation!r}")


def evaluate_claim(g: WeightedGraph, claim: Claim, caps: dict[str, int] | None = None) -> dict:
    caps = caps or {}
    row = {"param": claim.param, "relation": claim.relation, "expected": to_json(claim.value),
           "source": claim.source}
    if claim.anchors is not None:
        row["anchors"] = list(claim.anchors)
    if claim.radius is not None:
        row["radius"] = format_rational(claim.radius)
    try:
        if claim.param == "metric":
            actual = is_metric(g)[0]
        elif claim.param == "n":
            actual = g.n
        elif claim.anchors is not None and claim.radius is not None:
            cat = enumerate_shortest_paths(g, cap=None)
            actual = max(anchored_hitting_set(cat, a, claim.radius, claim.param).value for a in claim.anchors)
        elif claim.anchors is not None:
            cap = caps.get("anchored", 64)
            if g.n > cap:
                raise CapExceeded(f"anchored evaluation capped at n={cap}")
            actual = highway_dimension(g, claim.param, cap=cap, anchors=claim.anchors).value
        else:
            res = compute_parameter(g, claim.param, caps.get(claim.param))
            if res["status"] == SKIPPED:
                raise CapExceeded(res["detail"])
            actual = res["value"]
    except CapExceeded as exc:
        row.update(actual=None, status=SKIPPED, detail=str(exc))
        return row
    row.update(actual=to_json(actual), status=OK, **{"pass": _compare(actual, claim.relation, claim.value)})
    return row


def gadget(family: str, **params) -> tuple[WeightedGraph, GadgetSpec]:
    if family not in GENERATORS:
        raise ValueError(f"unknown gadget family {family!r}; known: {', '.join(GENERATORS)}")
    return GENERATORS[family](**params)


def run_gadget_claims(family: str, params: dict, caps: dict[str, int] | None = None) -> dict:
    g, spec = gadget(family, **params)
    rows = [evaluate_claim(g, c, caps) for c in spec.claims]
    return {
        "family": spec.family,
        "params": to_json(spec.params),
        "variant": spec.variant,
        "n": g.n,
        "m": g.m,
        "claims": rows,
        "ok": all(r.get("pass", True) for r in rows),
    }


# -- embedding and k-center --------------------------------------------------

def embedding_report(x: FiniteMetric, eps, caps: dict[str, int] | None = None) -> tuple[dict, WeightedGraph]:
    """Build the embedding, run every check on it; returns the report and the graph."""
    caps = caps or {}
    eps = Fraction(eps)
    emb = build_embedded_graph(x, eps)
    h = emb.hierarchy
    dist = verify_distortion(emb.metric, emb.graph, eps)
    out = {
        "n": x.n,
        "epsilon": eps,
        "scale": emb.scale,
        "L": h.L,
        "level_sizes": [len(y) for y in h.levels],
        "edges": emb.graph.m,
        "unpruned_edges": emb.unpruned.m,
        "hierarchy_violations": verify_hierarchy(emb.metric, h),
        "distortion_ok": dist.ok,
        "min_stretch": dist.min_stretch,
        "max_stretch": dist.max_stretch,
        "pruning_violations": pruning_violations(emb),
        "long_edge_violations": long_edge_violations(emb),
    }
    kappa = skeleton_dimension(emb.graph).kappa
    out["kappa"] = kappa
    try:
        d = classic.doubling_constant(emb.metric.dist, cap=caps.get("doubling")).d
    except CapExceeded:
        d = None
    out["doubling"] = d
    bound = None if d is None else kappa_bound(h.L, eps, ceil_log2(d))
    out["kappa_bound"] = bound
    out["kappa_bound_ok"] = None if bound is None else kappa <= bound
    out["ok"] = (dist.ok and not out["hierarchy_violations"] and not out["pruning_violations"]
                 and not out["long_edge_violations"] and out["kappa_bound_ok"] is not False)
    return to_json(out), emb.graph


def kcenter_report(g: WeightedGraph, k: int, exact: bool = False, ratio: bool = False) -> dict:
    out: dict = {"k": k}
    if not exact or ratio:
        out["greedy"] = to_json(hochbaum_shmoys(g, k))
    if exact or ratio:
        out["exact"] = to_json(exact_kcenter(g, k))
    if ratio:
        opt = Fraction(out["exact"]["radius"])
        got = Fraction(out["greedy"]["radius"])
        out["ratio"] = None if opt == 0 else format_rational(got / opt)
        out["within_factor_2"] = got <= 2 * opt
    return out
