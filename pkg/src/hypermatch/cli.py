"""Command line interface: generate instances, run algorithms, verify solutions.

Three subcommands:

  generate FAMILY [key=value ...]   write an instance file
  run --algo NAME --in FILE ...     run a pipeline, report JSON, write solution
  verify KIND --in FILE SOLUTION    re-run the validator for a solution file

Exit codes: 0 all verdicts pass, 1 verification failure, 2 usage or parse
error, 3 oracle budget exceeded.  Reports carry no timestamp, so identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import apps, edge_coloring, generate, io, oracles, packing, rounding
from .core import (
    Graph,
    Hypergraph,
    Matching,
    Verdict,
    graph_to_hypergraph,
    induced_subhypergraph,
    validate_edge_coloring,
    validate_independent_set,
    validate_matching,
    validate_vertex_coloring,
    unblocked_edges,
)
from .ledger import RoundLedger

SCHEMA_VERSION = 1

ALGORITHMS = (
    "maximal-matching",
    "approx-matching",
    "edge-color",
    "list-edge-color",
    "rand-edge-color",
    "mis",
    "vertex-color",
    "approx-graph-matching",
    "orientation",
    "pseudo-forests",
    "arb-edge-color",
)

VERIFY_KINDS = (
    "matching",
    "maximal-matching",
    "independent-set",
    "mis",
    "edge-coloring",
    "list-edge-coloring",
    "vertex-coloring",
    "orientation",
    "pseudo-forests",
)

FAMILIES = (
    "random-hypergraph",
    "random-graph",
    "d-regular",
    "star",
    "cycle",
    "path",
    "complete",
    "line-graph-of",
)


class UsageError(Exception):
    """Bad arguments or preconditions; maps to exit code 2."""


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _parse_instance(text: str) -> Graph | Hypergraph:
    head = text.split(None, 1)
    if not head:
        raise io.ParseError("empty instance file")
    if head[0] == "hgr":
        return io.parse_hypergraph(text)
    if head[0] == "gr":
        return io.parse_graph(text)
    raise io.ParseError(f"unknown instance header {head[0]!r}")


def _parse_graph_with_lists(text: str) -> edge_coloring.ListEdgeInstance:
    """A gr instance followed by one 'edge-id: colors' line per edge."""
    lines = text.splitlines()
    header = lines[0].split() if lines else []
    if len(header) != 3 or header[0] != "gr":
        raise io.ParseError("expected a gr header followed by color lists")
    m = int(header[2])
    graph_text = "\n".join(lines[: 1 + m]) + "\n"
    lists_text = "\n".join(lines[1 + m :])
    g = io.parse_graph(graph_text)
    lists = io.parse_lists(lists_text)
    return edge_coloring.build_list_edge_instance(g, lists)


def _need_graph(instance: Graph | Hypergraph, algo: str) -> Graph:
    if not isinstance(instance, Graph):
        raise UsageError(f"{algo} needs a gr instance, got a hypergraph")
    return instance


def _to_hypergraph(instance: Graph | Hypergraph) -> Hypergraph:
    if isinstance(instance, Graph):
        return graph_to_hypergraph(instance)
    return instance


def _independence_for(g: Graph, force_oracle: bool) -> tuple[int, str]:
    """Neighborhood independence from the oracle, else the safe bound."""
    try:
        return oracles.neighborhood_independence(g), "oracle"
    except oracles.OverBudgetError:
        if force_oracle:
            raise
        return max(1, g.max_degree), "max_degree_fallback"


def _verdicts_json(verdicts: dict[str, Verdict]) -> dict:
    return {
        name: {"ok": bool(v.ok), "reason": v.reason}
        for name, v in sorted(verdicts.items())
    }


def _instance_summary(path: str, instance: Graph | Hypergraph) -> dict:
    if isinstance(instance, Graph):
        return {
            "path": path,
            "kind": "graph",
            "n": instance.n,
            "m": instance.m,
            "rank": 2 if instance.m else 0,
            "max_degree": instance.max_degree,
        }
    return {
        "path": path,
        "kind": "hypergraph",
        "n": instance.n,
        "m": instance.m,
        "rank": instance.rank,
        "max_degree": instance.max_degree,
    }


def _ceil_div_fraction(num: int, ratio: Fraction) -> int:
    """ceil(num / ratio) computed exactly."""
    q = Fraction(num) / ratio
    return -((-q.numerator) // q.denominator)


# per-algorithm runners; each returns
#   (solution_text, solution_summary, verdicts, oracle_fn)
# where oracle_fn() computes the oracle block lazily (may raise
# OverBudgetError) or is None when no comparison is defined.


def _run_maximal_matching(instance, args, ledger):
    h = _to_hypergraph(instance)
    if args.slack is not None:
        m, unblocked = rounding.almost_maximal_matching(h, args.slack, ledger)
        verdicts = {
            "matching_valid": validate_matching(h, m),
            "unblocked_consistent": Verdict(
                unblocked == unblocked_edges(h, m),
                "reported unblocked set disagrees with a recount"
                if unblocked != unblocked_edges(h, m)
                else "",
            ),
        }
        summary = {
            "kind": "matching",
            "size": len(m),
            "unblocked": sorted(unblocked),
        }

        def oracle():
            opt = oracles.max_matching(h).size
            left = (
                oracles.max_matching(
                    induced_subhypergraph(h, sorted(unblocked))[0]
                ).size
                if unblocked
                else 0
            )
            ok = Fraction(left) <= args.slack * opt
            return {
                "optimum": opt,
                "unblocked_optimum": left,
                "verdict": {
                    "ok": ok,
                    "reason": "" if ok else "unblocked share above slack",
                },
            }

        return io.format_matching(m), summary, verdicts, oracle
    m = rounding.maximal_matching(h, ledger)
    verdicts = {"matching_maximal": validate_matching(h, m, require_maximal=True)}

    def oracle():
        opt = oracles.max_matching(h).size
        return {"optimum": opt, "size": len(m)}

    return (
        io.format_matching(m),
        {"kind": "matching", "size": len(m)},
        verdicts,
        oracle,
    )


def _run_approx_matching(instance, args, ledger):
    h = _to_hypergraph(instance)
    if h.m == 0:
        m = Matching(frozenset())
    else:
        m = rounding.approx_max_matching(h, ledger)
    verdicts = {"matching_valid": validate_matching(h, m)}

    def oracle():
        opt = oracles.max_matching(h).size
        return {"optimum": opt, "size": len(m)}

    return (
        io.format_matching(m),
        {"kind": "matching", "size": len(m)},
        verdicts,
        oracle,
    )


def _check_reduction_soundness(h, lists) -> Verdict:
    reduced = edge_coloring.reduce_hypergraph_list_edge_coloring(h, lists)
    for mm in oracles.enumerate_maximal_matchings(reduced.hypergraph):
        try:
            colors = edge_coloring.decode_matching(reduced, h.m, mm)
        except RuntimeError as exc:
            return Verdict(False, f"a maximal matching fails to decode: {exc}")
        for v in range(h.n):
            used = [colors[eid] for eid in h.incidence[v]]
            if len(set(used)) != len(used):
                return Verdict(False, f"decoded coloring clashes at vertex {v}")
    return Verdict(True)


def _run_edge_color(instance, args, ledger):
    g = _need_graph(instance, "edge-color")
    if g.m == 0:
        raise UsageError("edge-color needs at least one edge")
    res = edge_coloring.edge_color(g, ledger)
    palette = 2 * g.max_degree - 1
    verdicts = {
        "coloring_proper": validate_edge_coloring(g, res.colors, palette=palette)
    }

    def oracle():
        h = graph_to_hypergraph(g)
        lists = edge_coloring.full_palette_lists(h, palette)
        v = _check_reduction_soundness(h, lists)
        return {"reduction_soundness": {"ok": v.ok, "reason": v.reason}}

    summary = {
        "kind": "edge-coloring",
        "palette_bound": palette,
        "max_color": max(res.colors.values()),
        "stats": res.stats,
    }
    return io.format_coloring(res.colors), summary, verdicts, oracle


def _run_list_edge_color(text, args, ledger):
    inst = _parse_graph_with_lists(text)
    res = edge_coloring.list_edge_color(inst, ledger)
    verdicts = {
        "coloring_respects_lists": validate_edge_coloring(
            inst.g, res.colors, lists=inst.lists
        )
    }

    def oracle():
        h = graph_to_hypergraph(inst.g)
        v = _check_reduction_soundness(h, inst.lists)
        return {"reduction_soundness": {"ok": v.ok, "reason": v.reason}}

    summary = {
        "kind": "edge-coloring",
        "max_color": max(res.colors.values()),
        "stats": res.stats,
    }
    return inst.g, io.format_coloring(res.colors), summary, verdicts, oracle


def _run_rand_edge_color(instance, args, ledger):
    g = _need_graph(instance, "rand-edge-color")
    if g.m == 0:
        raise UsageError("rand-edge-color needs at least one edge")
    res = edge_coloring.randomized_edge_color(g, args.seed, ledger)
    palette = 2 * g.max_degree - 1
    verdicts = {
        "coloring_proper": validate_edge_coloring(g, res.colors, palette=palette)
    }
    summary = {
        "kind": "edge-coloring",
        "palette_bound": palette,
        "max_color": max(res.colors.values()),
        "stats": res.stats,
    }
    return io.format_coloring(res.colors), summary, verdicts, None


def _run_mis(instance, args, ledger):
    g = _need_graph(instance, "mis")
    independence, source = _independence_for(g, args.oracle)
    s = packing.maximal_independent_set(g, independence, ledger)
    verdicts = {
        "independent_and_maximal": validate_independent_set(
            g, s, require_maximal=True
        )
    }

    def oracle():
        best = oracles.max_independent_set(g).size
        r = oracles.neighborhood_independence(g)
        bound = Fraction(best, 32 * max(1, r) ** 3)
        ok = Fraction(len(s)) >= bound
        return {
            "optimum": best,
            "independence": r,
            "size": len(s),
            "verdict": {
                "ok": ok,
                "reason": "" if ok else f"size {len(s)} below {bound}",
            },
        }

    summary = {
        "kind": "independent-set",
        "size": len(s),
        "independence": independence,
        "independence_source": source,
    }
    return io.format_id_set(s), summary, verdicts, oracle


def _run_vertex_color(instance, args, ledger):
    g = _need_graph(instance, "vertex-color")
    independence, source = _independence_for(g, args.oracle)
    out = packing.vertex_color(g, independence, ledger=ledger)
    palette = g.max_degree + 1
    proper = validate_vertex_coloring(g, out.colors)
    in_range = Verdict(
        all(1 <= c <= palette for c in out.colors),
        "" if all(1 <= c <= palette for c in out.colors) else "color outside palette",
    )
    verdicts = {"coloring_proper": proper, "palette_respected": in_range}
    summary = {
        "kind": "vertex-coloring",
        "palette_bound": palette,
        "colors_used": len(set(out.colors)),
        "independence": independence,
        "independence_source": source,
    }
    colors = {v: out.colors[v] for v in range(g.n)}
    return io.format_coloring(colors), summary, verdicts, None


def _run_approx_graph_matching(instance, args, ledger):
    g = _need_graph(instance, "approx-graph-matching")
    if args.eps is None:
        raise UsageError("approx-graph-matching needs --eps")
    m = apps.approx_max_graph_matching(g, args.eps, ledger=ledger)
    verdicts = (
        {"matching_valid": validate_matching(graph_to_hypergraph(g), m)}
        if g.m
        else {"matching_valid": Verdict(True)}
    )

    def oracle():
        opt = oracles.max_graph_matching(g).size
        need = _ceil_div_fraction(opt, 1 + args.eps)
        ok = len(m) >= need
        return {
            "optimum": opt,
            "required": need,
            "size": len(m),
            "verdict": {
                "ok": ok,
                "reason": "" if ok else f"size {len(m)} below {need}",
            },
        }

    summary = {"kind": "matching", "size": len(m)}
    return io.format_matching(m), summary, verdicts, oracle


def _orientation_inputs(args, algo):
    if args.lam is None:
        raise UsageError(f"{algo} needs --lambda")
    if args.eps is None:
        raise UsageError(f"{algo} needs --eps")


def _run_orientation(instance, args, ledger):
    g = _need_graph(instance, "orientation")
    _orientation_inputs(args, "orientation")
    o = apps.low_outdegree_orientation(g, args.lam, args.eps, ledger)
    verdicts = {"orientation_bounded": apps.validate_orientation(g, o)}

    def oracle():
        a = oracles.arboricity(g)
        ok = args.lam >= a
        return {
            "arboricity": a,
            "lambda": args.lam,
            "verdict": {
                "ok": ok,
                "reason": "" if ok else "lambda below true arboricity",
            },
        }

    tails = tuple(t for t, _ in o.directions)
    summary = {
        "kind": "orientation",
        "bound": o.bound,
        "max_out_degree": max(o.out_degrees, default=0),
    }
    return io.format_orientation(g.edges, tails), summary, verdicts, oracle


def _run_pseudo_forests(instance, args, ledger):
    g = _need_graph(instance, "pseudo-forests")
    _orientation_inputs(args, "pseudo-forests")
    o = apps.low_outdegree_orientation(g, args.lam, args.eps, ledger)
    classes = apps.pseudo_forest_decomposition(g, o)
    verdicts = {"orientation_bounded": apps.validate_orientation(g, o)}
    covered = sorted(eid for cls in classes for eid in cls)
    verdicts["partition_exact"] = Verdict(
        covered == list(range(g.m)),
        "" if covered == list(range(g.m)) else "classes do not partition the edges",
    )
    for idx, cls in enumerate(classes):
        verdicts[f"class_{idx + 1}_pseudo_forest"] = apps.validate_pseudo_forest(
            g, cls
        )

    def oracle():
        a = oracles.arboricity(g)
        ok = args.lam >= a
        return {
            "arboricity": a,
            "lambda": args.lam,
            "verdict": {
                "ok": ok,
                "reason": "" if ok else "lambda below true arboricity",
            },
        }

    assignment = {
        eid: idx + 1 for idx, cls in enumerate(classes) for eid in cls
    }
    summary = {
        "kind": "pseudo-forests",
        "classes": len(classes),
        "class_sizes": [len(c) for c in classes],
    }
    return io.format_coloring(assignment), summary, verdicts, oracle


def _run_arb_edge_color(instance, args, ledger):
    g = _need_graph(instance, "arb-edge-color")
    if args.arboricity is None:
        raise UsageError("arb-edge-color needs --arboricity")
    if args.eps is None:
        raise UsageError("arb-edge-color needs --eps")
    if g.m == 0:
        raise UsageError("arb-edge-color needs at least one edge")
    res = edge_coloring.arboricity_edge_color(g, args.arboricity, args.eps, ledger)
    verdicts = {
        "coloring_proper": validate_edge_coloring(g, res.colors, palette=res.palette)
    }

    def oracle():
        a = oracles.arboricity(g)
        ok = args.arboricity >= a
        return {
            "arboricity": a,
            "bound": args.arboricity,
            "verdict": {
                "ok": ok,
                "reason": "" if ok else "bound below true arboricity",
            },
        }

    summary = {
        "kind": "edge-coloring",
        "palette_bound": res.palette,
        "max_color": max(res.colors.values()),
        "stats": res.stats,
    }
    return io.format_coloring(res.colors), summary, verdicts, oracle


def _cmd_run(args) -> int:
    text = _read(args.infile)
    ledger = RoundLedger()
    if args.algo == "list-edge-color":
        g, solution, summary, verdicts, oracle_fn = _run_list_edge_color(
            text, args, ledger
        )
        instance: Graph | Hypergraph = g
    else:
        instance = _parse_instance(text)
        runner = {
            "maximal-matching": _run_maximal_matching,
            "approx-matching": _run_approx_matching,
            "edge-color": _run_edge_color,
            "rand-edge-color": _run_rand_edge_color,
            "mis": _run_mis,
            "vertex-color": _run_vertex_color,
            "approx-graph-matching": _run_approx_graph_matching,
            "orientation": _run_orientation,
            "pseudo-forests": _run_pseudo_forests,
            "arb-edge-color": _run_arb_edge_color,
        }[args.algo]
        solution, summary, verdicts, oracle_fn = runner(instance, args, ledger)
    if args.out:
        _write(args.out, solution)
    oracle_block = None
    if oracle_fn is not None:
        try:
            oracle_block = oracle_fn()
        except oracles.OverBudgetError:
            if args.oracle:
                raise
            oracle_block = None
    elif args.oracle:
        raise UsageError(f"{args.algo} has no oracle comparison")
    params = {
        "seed": args.seed,
        "eps": str(args.eps) if args.eps is not None else None,
        "lambda": args.lam,
        "arboricity": args.arboricity,
        "slack": str(args.slack) if args.slack is not None else None,
        "oracle_forced": bool(args.oracle),
    }
    report = {
        "schema_version": SCHEMA_VERSION,
        "algorithm": args.algo,
        "instance": _instance_summary(args.infile, instance),
        "parameters": params,
        "solution": summary,
        "verdicts": _verdicts_json(verdicts),
        "oracle": oracle_block,
        "ledger": {"entries": ledger.as_records(), "total": ledger.total},
    }
    failed = [name for name, v in verdicts.items() if not v.ok]
    if oracle_block is not None:
        inner = oracle_block.get("verdict")
        if inner is not None and not inner["ok"]:
            failed.append("oracle")
        soundness = oracle_block.get("reduction_soundness")
        if soundness is not None and not soundness["ok"]:
            failed.append("reduction_soundness")
    if args.json:
        _write(args.json, json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        status = "FAIL" if failed else "ok"
        sys.stdout.write(
            f"{args.algo}: {status}"
            + (f" ({', '.join(failed)})" if failed else "")
            + f" rounds={ledger.total}\n"
        )
    return 1 if failed else 0


def _verify_matching(instance, solution_text, require_maximal) -> Verdict:
    h = _to_hypergraph(instance)
    m = io.parse_matching(solution_text)
    return validate_matching(h, m, require_maximal=require_maximal)


def _verify_independent(instance, solution_text, require_maximal) -> Verdict:
    g = instance
    if not isinstance(g, Graph):
        raise UsageError("independent-set verification needs a gr instance")
    ids = io.parse_id_set(solution_text)
    return validate_independent_set(g, ids, require_maximal=require_maximal)


def _verify_edge_coloring(instance, solution_text) -> Verdict:
    if not isinstance(instance, Graph):
        raise UsageError("edge-coloring verification needs a gr instance")
    colors = io.parse_coloring(solution_text)
    return validate_edge_coloring(instance, colors)


def _verify_vertex_coloring(instance, solution_text) -> Verdict:
    if not isinstance(instance, Graph):
        raise UsageError("vertex-coloring verification needs a gr instance")
    colors = io.parse_coloring(solution_text)
    if sorted(colors) != list(range(instance.n)):
        return Verdict(False, "coloring must assign every node exactly once")
    return validate_vertex_coloring(
        instance, [colors[v] for v in range(instance.n)]
    )


def _verify_orientation(instance, solution_text, args) -> Verdict:
    if not isinstance(instance, Graph):
        raise UsageError("orientation verification needs a gr instance")
    tails = io.parse_orientation(solution_text, instance)
    out_deg = [0] * instance.n
    for tail in tails:
        out_deg[tail] += 1
    if args.lam is not None and args.eps is not None:
        bound = math.ceil((1 + args.eps) * args.lam)
    else:
        bound = max(out_deg, default=0)
    directions = tuple(
        (t, v if t == u else u) for t, (u, v) in zip(tails, instance.edges)
    )
    o = apps.Orientation(
        directions=directions, out_degrees=tuple(out_deg), bound=bound
    )
    return apps.validate_orientation(instance, o)


def _verify_pseudo_forests(instance, solution_text) -> Verdict:
    if not isinstance(instance, Graph):
        raise UsageError("pseudo-forests verification needs a gr instance")
    assignment = io.parse_coloring(solution_text)
    if sorted(assignment) != list(range(instance.m)):
        return Verdict(False, "every edge needs exactly one class")
    classes: dict[int, set[int]] = {}
    for eid, cls in assignment.items():
        classes.setdefault(cls, set()).add(eid)
    for cls in sorted(classes):
        verdict = apps.validate_pseudo_forest(instance, frozenset(classes[cls]))
        if not verdict:
            return Verdict(False, f"class {cls}: {verdict.reason}")
    return Verdict(True)


def _cmd_verify(args) -> int:
    instance_text = _read(args.infile)
    solution_text = _read(args.solution)
    if args.kind == "list-edge-coloring":
        inst = _parse_graph_with_lists(instance_text)
        colors = io.parse_coloring(solution_text)
        verdict = validate_edge_coloring(inst.g, colors, lists=inst.lists)
    else:
        instance = _parse_instance(instance_text)
        if args.kind == "matching":
            verdict = _verify_matching(instance, solution_text, False)
        elif args.kind == "maximal-matching":
            verdict = _verify_matching(instance, solution_text, True)
        elif args.kind == "independent-set":
            verdict = _verify_independent(instance, solution_text, False)
        elif args.kind == "mis":
            verdict = _verify_independent(instance, solution_text, True)
        elif args.kind == "edge-coloring":
            verdict = _verify_edge_coloring(instance, solution_text)
        elif args.kind == "vertex-coloring":
            verdict = _verify_vertex_coloring(instance, solution_text)
        elif args.kind == "orientation":
            verdict = _verify_orientation(instance, solution_text, args)
        else:
            verdict = _verify_pseudo_forests(instance, solution_text)
    if verdict.ok:
        sys.stdout.write("pass\n")
        return 0
    sys.stdout.write(f"fail: {verdict.reason}\n")
    return 1


def _cmd_generate(args) -> int:
    params: dict[str, str] = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"family parameters look like key=value, got {item!r}")
        params[key] = value

    def want_int(key: str) -> int:
        if key not in params:
            raise UsageError(f"{args.family} needs {key}=<int>")
        try:
            return int(params.pop(key))
        except ValueError as exc:
            raise UsageError(f"{key} must be an integer") from exc

    def want_float(key: str) -> float:
        if key not in params:
            raise UsageError(f"{args.family} needs {key}=<float>")
        try:
            return float(params.pop(key))
        except ValueError as exc:
            raise UsageError(f"{key} must be a number") from exc

    try:
        if args.family == "random-hypergraph":
            inst = generate.random_hypergraph(
                want_int("n"), want_int("m"), want_int("r"), args.seed
            )
        elif args.family == "random-graph":
            inst = generate.random_graph(want_int("n"), want_float("p"), args.seed)
        elif args.family == "d-regular":
            inst = generate.d_regular(want_int("n"), want_int("d"), args.seed)
        elif args.family == "star":
            inst = generate.star(want_int("n"))
        elif args.family == "cycle":
            inst = generate.cycle(want_int("n"))
        elif args.family == "path":
            inst = generate.path(want_int("n"))
        elif args.family == "complete":
            inst = generate.complete(want_int("n"))
        else:
            if args.infile is None:
                raise UsageError("line-graph-of needs --in <instance>")
            inst = generate.line_graph_of(_parse_instance(_read(args.infile)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if params:
        raise UsageError(f"unknown parameters for {args.family}: {sorted(params)}")
    if isinstance(inst, Graph):
        _write(args.out, io.format_graph(inst))
    else:
        _write(args.out, io.format_hypergraph(inst))
    return 0


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypermatch",
        description="hypergraph matching pipelines with verified outputs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a deterministic instance")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("params", nargs="*", help="family parameters, key=value")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--in", dest="infile", help="source instance (line-graph-of)")
    gen.add_argument("--out", help="output path (default stdout)")
    gen.set_defaults(func=_cmd_generate)

    run = sub.add_parser("run", help="run an algorithm and report verdicts")
    run.add_argument("--algo", required=True, choices=ALGORITHMS)
    run.add_argument("--in", dest="infile", required=True)
    run.add_argument("--out", help="solution output path")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--eps", type=_fraction)
    run.add_argument("--lambda", dest="lam", type=int)
    run.add_argument("--arboricity", type=int)
    run.add_argument("--slack", type=_fraction)
    run.add_argument("--oracle", action="store_true",
                     help="force the oracle comparison; over budget exits 3")
    run.add_argument("--json", help="write the JSON report here ('-' = stdout)")
    run.set_defaults(func=_cmd_run)

    ver = sub.add_parser("verify", help="re-run a validator on a solution file")
    ver.add_argument("kind", choices=VERIFY_KINDS)
    ver.add_argument("--in", dest="infile", required=True)
    ver.add_argument("solution")
    ver.add_argument("--eps", type=_fraction)
    ver.add_argument("--lambda", dest="lam", type=int)
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, io.ParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except oracles.OverBudgetError as exc:
        sys.stderr.write(f"oracle budget: {exc}\n")
        return 3
    except (
        apps.OrientationBoundError,
        apps.PathBudgetError,
        edge_coloring.PeelingStallError,
    ) as exc:
        sys.stderr.write(f"failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
