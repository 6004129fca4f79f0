"""Command-line entry point: ``rainbow-ch <command> ...``.

Exit status: 0 ok, 1 an asserted check failed, 2 a search ran out of budget,
3 bad usage or an unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import formulas
from .errors import DEFAULT_NODE_BUDGET, Indeterminate, Verdict
from .report import EXIT_CODES, REPORT_NAME, ReportError, aggregate, dumps, emit_report, emit_text, envelope

OUT_ENV = "RAINBOW_CH_OUT"
USAGE_ERROR = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    workers: int = 1
    budget: int = DEFAULT_NODE_BUDGET
    output_path: str = "rainbow_ch_out"
    emit_traces: bool = False
    json: bool = False

    def __post_init__(self):
        if self.budget < 1:
            raise UsageError("budget must be positive")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")


def load_config(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not JSON ({exc.msg})") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path}: config must be a JSON object")
    unknown = set(data) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise UsageError(f"{path}: unknown config keys {sorted(unknown)}")
    return data


def resolve_config(args) -> RunConfig:
    """Built-in defaults < config file < environment (output dir) < flags."""
    merged = asdict(RunConfig())
    if args.config:
        merged.update(load_config(args.config))
    if os.environ.get(OUT_ENV):
        merged["output_path"] = os.environ[OUT_ENV]
    for key, flag in (("seed", "seed"), ("workers", "workers"), ("budget", "budget"),
                      ("output_path", "out"), ("emit_traces", "traces"), ("json", "json")):
        val = getattr(args, flag, None)
        if val is not None:
            merged[key] = val
    try:
        return RunConfig(**merged)
    except TypeError as exc:
        raise UsageError(str(exc)) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- commands --------------------------------------------------------------------------
# each returns (name, status, result, summary line)


def _load_graph(path):
    from .graph import read_graph

    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc
    except (ValueError, IndexError) as exc:
        raise UsageError(f"{path}: malformed graph file ({exc})") from exc


def _load_coloring(path):
    from .coloring import read_coloring

    try:
        return read_coloring(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: malformed colouring file ({exc})") from exc


def _spec(a):
    from .constructions import ConstructionSpec

    spec = ConstructionSpec(a.family, a.n, a.t, y1=a.y1, rival=a.rival)
    bad = spec.violations()
    if bad:
        raise UsageError(f"invalid {a.family}({a.n},{a.t}): " + "; ".join(bad))
    return spec


def _tag(a):
    tag = f"{a.family}_{a.n}_{a.t}"
    if a.y1 is not None:
        tag += f"_y{a.y1}"
    return tag + ("_rival" if a.rival else "")


def cmd_construct(a, cfg):
    from .constructions import build_construction
    from .graph import edge_count, to_text

    spec = _spec(a)
    pg = build_construction(spec)
    edges, closed = edge_count(pg.graph), spec.closed_form()
    name = "construct_" + _tag(a)
    emit_text(to_text(pg.graph), cfg.output_path, name + ".graph")
    res = pg.to_json()
    res["edge_list"] = res.pop("edges")
    res.update(edges=edges, closed_form=closed, graph_file=name + ".graph")
    status = "ok" if edges == closed else "violation"
    return name, status, res, f"{a.family}({a.n},{a.t}): {edges} edges (closed form {closed})"


def cmd_color(a, cfg):
    from .constructions import build_lower_bound_coloring

    spec = _spec(a)
    try:
        c = build_lower_bound_coloring(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    name = "color_" + _tag(a)
    emit_text(dumps(c.to_json()), cfg.output_path, name + ".coloring.json")
    res = {"family": a.family, "n": a.n, "t": a.t, "num_colors": c.num_colors,
           "coloring_file": name + ".coloring.json"}
    return name, "ok", res, f"{a.family}({a.n},{a.t}) colouring: {c.num_colors} colours"


def cmd_tile(a, cfg):
    from .tiling import maximal_tiling_triple

    g = _load_graph(a.graph_file)
    tr = maximal_tiling_triple(g, budget=cfg.budget)
    res = {"n": g.n, "max_tiling": len(tr.triangles), "matching": tr.m, "singletons": tr.i,
           "triple": tr.to_json()}
    line = f"{a.graph_file}: {len(tr.triangles)} disjoint triangles, {tr.m} matching edges, {tr.i} singletons"
    return "tile_" + Path(a.graph_file).stem, "ok", res, line


def cmd_partition(a, cfg):
    import random

    from .lemmas import check_appendix_bounds, check_global_bounds
    from .tiling import ideal_partition, maximal_tiling_triple, part_edge_profile, partition_stats

    g = _load_graph(a.graph_file)
    tr = maximal_tiling_triple(g, budget=cfg.budget)
    rng = random.Random(cfg.seed) if a.random_peel else None
    p = ideal_partition(g, tr, t2_rule=a.t2_rule, rng=rng)
    st = partition_stats(p, tr)
    name = "partition_" + Path(a.graph_file).stem
    emit_text(part_edge_profile(g, tr, p).to_csv(), cfg.output_path, name + ".csv")
    reports = check_appendix_bounds(g, tr, p) + check_global_bounds(g, tr, p)
    bad = [r.lemma for r in reports if r.violated]
    res = {"triple": tr.to_json(), "partition": p.to_json(), "stats": list(st.as_tuple()),
           "profile_file": name + ".csv", "bounds": [r.to_json() for r in reports]}
    line = f"stats (t1,t2,t3,t4,m,i) = {st.as_tuple()}; {len(reports)} bounds, {len(bad)} violated"
    return name, "violation" if bad else "ok", res, line


FORMULAS_6 = {"f": formulas.poly_f, "h": formulas.poly_h, "g": formulas.poly_g,
              "q1": formulas.poly_q1}
FORMULAS_NT = {"e1": formulas.e1, "e2": formulas.e2, "e3": formulas.e3, "e4": formulas.e4,
               "e5": formulas.e5, "gamma3": formulas.gamma3, "gamma4": formulas.gamma4}
FORMULA_NAMES = sorted(FORMULAS_6) + sorted(FORMULAS_NT) + ["xi", "ex-abhp", "ar-first", "identity"]


def _ints(vals, k, what):
    if len(vals) != k:
        raise UsageError(f"{what} takes {k} integers, got {len(vals)}")
    try:
        return [int(v) for v in vals]
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from exc


def cmd_formula(a, cfg):
    name, vals = a.name, a.args
    status = "ok"
    if name in FORMULAS_6:
        s = _ints(vals, 6, name)
        if min(s) < 0:
            raise UsageError("partition stats must be non-negative")
        res = {"value": FORMULAS_6[name](s)}
    elif name in FORMULAS_NT:
        n, t = _ints(vals, 2, name)
        res = {"value": FORMULAS_NT[name](n, t)}
    elif name in ("xi", "ex-abhp"):
        n, t = _ints(vals, 2, name)
        fn = formulas.xi_piecewise if name == "xi" else formulas.ex_abhp
        try:
            pv = fn(n, t)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        res = {"value": pv.value, "branch": pv.branch, "branches": list(pv.branches),
               "tie": pv.tie, "notes": list(pv.notes)}
    elif name == "ar-first":
        n, t = _ints(vals, 2, name)
        try:
            res = {"value": formulas.ar_first_interval(n, t, override=a.override),
                   "override": a.override}
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif name == "identity":
        v = _ints(vals, 8, name)
        try:
            verdict = formulas.check_identity(v[0], v[1:7], v[7])
        except (ValueError, KeyError) as exc:
            raise UsageError(f"identity: {exc}") from exc
        res = {"value": verdict.holds, "lhs": str(verdict.lhs), "rhs": str(verdict.rhs)}
        status = "ok" if verdict.holds else "violation"
    else:
        raise UsageError(f"unknown formula {name!r}; choose from {', '.join(FORMULA_NAMES)}")
    res["formula"], res["args"] = name, list(vals)
    fname = "formula_" + "_".join([name] + [str(x) for x in vals])
    return fname, status, res, f"{name}({', '.join(vals)}) = {res['value']}"


def cmd_identity_check(a, cfg):
    out = formulas.sweep_identities(a.points, cfg.seed)
    res = {"points": a.points, "seed": cfg.seed,
           "identities": {str(k): {"label": formulas.IDENTITIES[k].label, "failures": len(v),
                                   "examples": [[list(s), x] for s, x, _ in v[:5]]}
                          for k, v in out.items()}}
    failed = sum(len(v) for v in out.values())
    line = f"{len(out)} identities x {a.points} points: " + ("all hold" if not failed else f"{failed} failures")
    return "identity_check", "violation" if failed else "ok", res, line


def cmd_fact_scan(a, cfg):
    from .facts import FACTS, scan_fact_inequalities

    if a.fact not in FACTS:
        raise UsageError(f"unknown fact {a.fact!r}; choose from {', '.join(FACTS)}")
    try:
        rep = scan_fact_inequalities(a.fact, (a.n_lo, a.n_hi), a.samples, cfg.seed,
                                     workers=cfg.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    line = f"fact {a.fact}: {rep.checked} tuples, {rep.violations} violations"
    if rep.informational:
        line += " (below the large-n threshold, informational)"
    return f"fact_scan_{a.fact}", "ok" if rep.ok else "violation", rep.to_json(), line


def cmd_rainbow(a, cfg):
    from .rainbow import rainbow_search_stats

    c = _load_coloring(a.coloring_file)
    if a.s < 1:
        raise UsageError("s must be at least 1")
    tiling, nodes = rainbow_search_stats(c, a.s, budget=cfg.budget)
    res = {"n": c.n, "s": a.s, "num_colors": c.num_colors, "found": tiling is not None,
           "tiling": None if tiling is None else tiling.to_json(), "nodes": nodes}
    line = f"rainbow {a.s}K3: " + ("found " + str(list(tiling.triangles)) if tiling else "none")
    return f"rainbow_{Path(a.coloring_file).name.split('.')[0]}_{a.s}", "ok", res, line


def cmd_ar_oracle(a, cfg):
    from .rainbow import ar_oracle

    try:
        r = ar_oracle(a.n, a.s, budget=cfg.budget, checkpoint=a.checkpoint,
                      allow_large=a.allow_large)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = r.sandwich_ok and r.witness_rainbow_free
    line = f"ar({a.n}, {a.s}K3) = {r.value}; sandwich {list(r.sandwich)}"
    return f"ar_oracle_{a.n}_{a.s}", "ok" if ok else "violation", r.to_json(), line


def cmd_ex_oracle(a, cfg):
    from .rainbow import ex_oracle

    try:
        r = ex_oracle(a.n, a.s, budget=cfg.budget, method=a.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return f"ex_oracle_{a.n}_{a.s}", "ok", r.to_json(), f"ex({a.n}, {a.s}K3) = {r.value} ({r.method})"


def cmd_verify_construction(a, cfg):
    from .constructions import verify_lower_bound_coloring

    spec = _spec(a)
    if a.family not in ("E1", "E2", "E3", "E4", "E5"):
        raise UsageError("lower-bound colourings exist for E1..E5 only")
    v = verify_lower_bound_coloring(spec, budget=cfg.budget)
    status = {Verdict.HOLDS: "ok", Verdict.VIOLATED: "violation",
              Verdict.INDETERMINATE: "indeterminate"}[v.verdict]
    line = f"{a.family}({a.n},{a.t}) with {v.num_colors} colours: rainbow {v.s}K3 {v.verdict.value}"
    return "verify_" + _tag(a), status, v.to_json(), line


def cmd_scan(a, cfg):
    from .lemmas import scan_for_counterexamples

    name = f"scan_{a.mode}_{a.n}_{a.samples}"
    trace = str(Path(cfg.output_path) / f"{name}.jsonl") if cfg.emit_traces else None
    if trace:
        Path(cfg.output_path).mkdir(parents=True, exist_ok=True)
    try:
        s = scan_for_counterexamples(a.mode, a.n, a.samples, cfg.seed, n_min=a.n_min,
                                     t2_rule=a.t2_rule, workers=cfg.workers, trace_path=trace)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    line = (f"{s.graphs} graphs: {len(s.violations)} violations, "
            f"{len(s.order_sensitive)} peeling-order sensitivities")
    return name, "ok" if s.ok else "violation", s.to_json(), line


def cmd_report(a, cfg):
    try:
        res = aggregate(cfg.output_path)
    except ReportError as exc:
        raise UsageError(str(exc)) from exc
    c = res["counts"]
    line = f"{len(res['runs'])} runs: {c['ok']} ok, {c['violation']} violation, {c['indeterminate']} indeterminate"
    return REPORT_NAME[:-5], res["status"], res, line


# -- parser ------------------------------------------------------------------------------


def _family_args(p):
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--y1", type=int, default=None, help="G4 only: size of Y1")
    p.add_argument("--rival", action="store_true", help="E3 only: X of size 2t+1")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON object of run settings (flags win)")
    common.add_argument("--out", help=f"output directory (env {OUT_ENV})")
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--budget", type=int, help="node budget for exact searches")
    common.add_argument("--traces", action="store_const", const=True)
    common.add_argument("--json", action="store_const", const=True,
                        help="print the JSON document instead of a summary line")

    parser = _Parser(prog="rainbow-ch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    _family_args(add("construct", cmd_construct, "build a construction graph"))
    _family_args(add("color", cmd_color, "lower-bound colouring of K_n"))
    add("tile", cmd_tile, "maximal tiling triple of a graph").add_argument("graph_file")
    p = add("partition", cmd_partition, "ideal partition, edge profile and lemma bounds")
    p.add_argument("graph_file")
    p.add_argument("--t2-rule", default="singletons", choices=("singletons", "triangles"))
    p.add_argument("--random-peel", action="store_true")
    p = add("formula", cmd_formula, "evaluate a closed form: " + ", ".join(FORMULA_NAMES))
    p.add_argument("name")
    p.add_argument("args", nargs="*")
    p.add_argument("--override", action="store_true", help="ar-first outside its proven range")
    add("identity-check", cmd_identity_check, "random sweep of the exact identities").add_argument(
        "--points", type=int, default=10**4)
    p = add("fact-scan", cmd_fact_scan, "sampled check of an inequality fact")
    p.add_argument("fact")
    p.add_argument("--n-lo", type=int, default=3000)
    p.add_argument("--n-hi", type=int, default=10000)
    p.add_argument("--samples", type=int, default=10**6)
    p = add("rainbow", cmd_rainbow, "search a colouring for a rainbow sK3")
    p.add_argument("coloring_file")
    p.add_argument("s", type=int)
    p = add("ar-oracle", cmd_ar_oracle, "exhaustive anti-Ramsey number for small n")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--allow-large", action="store_true")
    p = add("ex-oracle", cmd_ex_oracle, "exact Turan number of sK3 for small n")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--method", choices=("exhaustive", "branch-and-bound"))
    _family_args(add("verify-construction", cmd_verify_construction,
                     "check a lower-bound colouring has no rainbow (t+2)K3"))
    p = add("scan", cmd_scan, "lemma counterexample scan")
    p.add_argument("mode", choices=("exhaustive", "random"))
    p.add_argument("n", type=int)
    p.add_argument("samples", type=int)
    p.add_argument("--n-min", type=int)
    p.add_argument("--t2-rule", default="singletons", choices=("singletons", "triangles"))
    add("report", cmd_report, "aggregate the outputs in the output directory")
    return parser


def _fallback_name(args) -> str:
    pos = [str(getattr(args, k)) for k in ("family", "n", "t", "s", "mode", "samples")
           if getattr(args, k, None) is not None]
    return "_".join([args.command.replace("-", "_")] + pos)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command (try --help)")
        cfg = resolve_config(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        name, status, result, line = args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except Indeterminate as exc:
        name = _fallback_name(args)
        status, result, line = "indeterminate", {"message": str(exc), "nodes": exc.nodes,
                                                 "bounds": exc.bounds}, f"indeterminate: {exc}"
    except ReportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    run_args = {k: v for k, v in sorted(vars(args).items())
                if k not in ("func", "config", "out", "workers", "json", "traces")}
    run_args.update(seed=cfg.seed, budget=cfg.budget)
    doc = envelope(args.command, run_args, status, result)
    try:
        path = emit_report(doc, cfg.output_path, name)
    except ReportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if cfg.json:
        sys.stdout.write(dumps(doc))
    else:
        print(f"[{status}] {line}")
        print(f"  -> {path}")
    return EXIT_CODES[status]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
