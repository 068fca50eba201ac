"""Command-line front end.

Exit status: 0 on success, 1 when a certificate is invalid or an audit /
conjecture check fails, 2 on usage, input or capacity errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import constructions as cons
from .forcing import ForcingError, k_forcing_number, z_sequence_from_forcing
from .graph import FamilySpec, Graph, GraphError, generate
from .graphio import GraphFormat, read_graph, serialize
from .lab import (
    CubeStatus,
    audit_bounds,
    check_cube_conjecture,
    check_product_question,
    family_stream,
    forcing_conjecture_campaign,
    graph6_stream,
    random_stream,
)
from .sequences import GrundySequence, SequenceError, Variant, verify
from .solver import SolverConfig, SolverError, grundy_bounds, grundy_number

FAMILY_HELP = (
    "family spec name:params, one of cycle:n, path:n, complete:n, kbipartite:m,n, "
    "hypercube:d, grid:m,n, gadget:h, trigrid:rows,cols, er:n,p[,seed]"
)


class UsageError(Exception):
    pass


def _emit(args, human: str, data: dict, csv_rows: list[list] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    elif args.format == "csv":
        rows = csv_rows or [list(data.keys()), list(data.values())]
        csv.writer(sys.stdout, lineterminator="\n").writerows(rows)
    else:
        print(human)


def _graph(args) -> tuple[str, Graph]:
    if getattr(args, "family", None) and getattr(args, "graph", None):
        raise UsageError("give exactly one of --family and --graph")
    if getattr(args, "family", None):
        spec = FamilySpec.parse(args.family)
        return str(spec), generate(spec)
    if getattr(args, "graph", None):
        return args.graph, read_graph(args.graph, args.input_format)
    raise UsageError("a graph source is required: --family SPEC or --graph PATH")


def _config(args) -> SolverConfig:
    return SolverConfig(
        memo_limit=args.memo_limit,
        use_degree_bound_pruning=not args.no_bound_pruning,
        allow_Z_below_delta=args.allow_z_below_delta,
        parallel_width=args.jobs,
        max_vertices=args.max_vertices,
    )


def _seq_human(seq: GrundySequence) -> str:
    lines = [f"variant {seq.variant.value}, k={seq.k}, length {len(seq)}"]
    w = seq.witnesses or (None,) * len(seq)
    lines += [f"  {i:>3}: vertex {v}  witness {u}" for i, (v, u) in enumerate(zip(seq.order, w), 1)]
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------

def cmd_solve(args) -> int:
    name, g = _graph(args)
    variant = Variant.parse(args.variant)
    res = grundy_number(g, variant, args.k, _config(args))
    stats = res.stats.to_dict(include_time=False)
    data = {"graph": name, "variant": variant.value, "k": args.k, "value": res.value,
            "witness": res.witness.to_dict(), "stats": stats}
    human = (
        f"{name}: gamma[{variant.value}, k={args.k}] = {res.value}\n"
        f"witness: {' '.join(map(str, res.witness.order))}\n"
        f"states visited {stats['states_visited']}, memo hits {stats['memo_hits']}, "
        f"stopped at degree bound: {'yes' if stats['reached_upper_bound'] else 'no'}"
    )
    rows = [["graph", "variant", "k", "value", "witness"],
            [name, variant.value, args.k, res.value, " ".join(map(str, res.witness.order))]]
    _emit(args, human, data, rows)
    return 0


def cmd_bounds(args) -> int:
    name, g = _graph(args)
    variant = Variant.parse(args.variant)
    b = grundy_bounds(g, variant, args.k, max_vertices=args.max_vertices)
    data = {"graph": name, "variant": variant.value, "k": args.k, "lower": b.lower, "upper": b.upper,
            "exact": b.exact, "lower_source": b.lower_source, "witness": b.witness.to_dict()}
    human = f"{name}: {b.lower} <= gamma[{variant.value}, k={args.k}] <= {b.upper}  (lower from {b.lower_source})"
    if b.exact:
        human += "\nbounds meet: value is exact"
    rows = [["graph", "variant", "k", "lower", "upper", "lower_source"],
            [name, variant.value, args.k, b.lower, b.upper, b.lower_source]]
    _emit(args, human, data, rows)
    return 0


def _load_certificate(path: str) -> GrundySequence:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceError(f"certificate is not valid JSON: {exc}") from None
    if isinstance(obj, dict) and "witness" in obj and "order" not in obj:
        obj = obj["witness"]
    return GrundySequence.from_dict(obj)


def cmd_verify(args) -> int:
    name, g = _graph(args)
    seq = _load_certificate(args.certificate)
    res = verify(g, seq)
    for note in res.warnings:
        print(f"warning: {note}", file=sys.stderr)
    data = {"graph": name, "valid": res.valid, "length": len(seq), "index": res.index,
            "reason": res.reason, "witnesses": list(res.witnesses)}
    human = f"valid {seq.variant.value} {seq.k}-sequence of length {len(seq)}" if res.valid else f"INVALID: {res.reason}"
    _emit(args, human, data)
    return 0 if res.valid else 1


def cmd_witness(args) -> int:
    c = args.construction
    need = {"cycle": ["n"], "grid": ["m", "n"], "hypercube": ["d", "k"], "gadget": ["h"], "forcing": ["k"]}[c]
    missing = [p for p in need if getattr(args, p) is None]
    if missing:
        raise UsageError(f"--construction {c} needs " + ", ".join(f"--{p}" for p in missing))
    if c == "cycle":
        seq = cons.cycle_witness(args.n, Variant.parse(args.variant or "plain"))
        g = generate(FamilySpec.parse(f"cycle:{args.n}"))
    elif c == "grid":
        seq = cons.grid_witness(args.m, args.n)
        g = generate(FamilySpec.parse(f"grid:{args.m},{args.n}"))
    elif c == "hypercube":
        seq = cons.hypercube_L_witness(args.d, args.k)
        g = generate(FamilySpec.parse(f"hypercube:{args.d}"))
    elif c == "gadget":
        seq = cons.gadget_L2_witness(args.h)
        g = generate(FamilySpec.parse(f"gadget:{args.h}"))
    else:
        _, g = _graph(args)
        fr = k_forcing_number(g, args.k)
        seq = z_sequence_from_forcing(g, args.k, fr.trace)
    ok = True
    status = ""
    if args.verify:
        res = verify(g, seq)
        ok = res.valid
        status = "verified: valid" if ok else f"verification FAILED: {res.reason}"
    data = {"construction": c, "certificate": seq.to_dict(), "graph6": serialize(g)}
    if args.verify:
        data["valid"] = ok
    human = _seq_human(seq) + (f"\n{status}" if status else "")
    _emit(args, human, data)
    return 0 if ok else 1


def cmd_forcing(args) -> int:
    name, g = _graph(args)
    fr = k_forcing_number(g, args.k, max_vertices=args.max_vertices)
    data = {"graph": name, "k": args.k, "F_k": fr.F_k, "forcing_set": sorted(fr.witness_set)}
    if args.trace:
        data["trace"] = fr.trace.to_dict()
    human = f"{name}: F_{args.k} = {fr.F_k}, forcing set {sorted(fr.witness_set)}"
    if args.trace:
        human += "\n" + "\n".join(f"  {b} forces {list(w)}" for b, w in fr.trace.waves)
    _emit(args, human, data)
    return 0


def cmd_family(args) -> int:
    spec = FamilySpec.parse(args.family)
    g = generate(spec)
    text = serialize(g, GraphFormat(args.output_format))
    data = {"family": str(spec), "n": g.n, "m": g.num_edges,
            "min_degree": g.min_degree() if g.n else None, "graph": text}
    if args.format == "human":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return 0
    _emit(args, "", data)
    return 0


def _stream(args):
    sources = [s for s in (args.graph, args.family_sweep, args.random) if s]
    if len(sources) != 1:
        raise UsageError("give exactly one of --graph FILE.g6, --family-sweep, --random")
    if args.graph:
        return graph6_stream(args.graph)
    if args.family_sweep:
        return family_stream(s for s in args.family_sweep.split(";") if s.strip())
    parts = args.random.split(",")
    if len(parts) != 4:
        raise UsageError("--random expects COUNT,NMIN,NMAX,P")
    return random_stream(int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3]), seed=args.seed)


def _report_out(args, report) -> int:
    report.write(args.jsonl, args.csv)
    totals = report.totals()
    if args.format == "json":
        print(json.dumps({"campaign": report.campaign, "instances": len(report.records), **totals}, sort_keys=True))
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        print(f"{report.campaign}: {len(report.records)} instances, "
              f"{totals['PASS']} pass, {totals['FAIL']} fail, {totals['SKIPPED']} skipped")
        for rec, chk in report.failures():
            print(f"  FAIL {rec.instance} ({rec.graph6}) {chk.name}: {chk.detail}")
    return 1 if totals["FAIL"] else 0


def cmd_audit(args) -> int:
    ks = [int(x) for x in args.ks.split(",")]
    report = audit_bounds(_stream(args), ks, cfg=SolverConfig(max_vertices=args.max_vertices),
                          jobs=args.jobs, flag_full_L=args.full_l)
    return _report_out(args, report)


def cmd_conjecture(args) -> int:
    if args.kind == "cube":
        if args.d is None or args.k is None:
            raise UsageError("conjecture cube needs --d and --k")
        r = check_cube_conjecture(args.d, args.k)
        human = (f"Q_{r.d}, k={r.k}: formula {r.formula}, value in [{r.lower}, {r.upper}] -> {r.status.value}")
        _emit(args, human, r.to_dict())
        return 1 if r.status is CubeStatus.REFUTED_EXACT else 0
    if args.kind == "product":
        if not (args.left and args.right and args.k):
            raise UsageError("conjecture product needs --left, --right and --k")
        g, h = generate(FamilySpec.parse(args.left)), generate(FamilySpec.parse(args.right))
        r = check_product_question(g, h, args.k, SolverConfig(max_vertices=args.max_vertices))
        human = (f"L-value of product in {list(r.lhs)}, product of factors in {list(r.rhs)}: "
                 f"{r.relation.value} ({r.hypothesis})")
        _emit(args, human, r.to_dict())
        return 0
    if args.k is None:
        raise UsageError("conjecture forcing needs --k")
    if args.stream:
        stream = graph6_stream(args.stream)
    else:
        stream = [_graph(args)]
    report = forcing_conjecture_campaign(stream, args.k, cfg=SolverConfig(max_vertices=args.max_vertices),
                                         jobs=args.jobs)
    return _report_out(args, report)


# -- parser ------------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help=FAMILY_HELP)
    p.add_argument("--graph", help="graph file (.g6 = graph6, otherwise edge list)")
    p.add_argument("--input-format", choices=[f.value for f in GraphFormat], default=None)


def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", required=True, help="plain, total, z or l")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--no-bound-pruning", action="store_true", help="exhaust instead of stopping at the degree bound")
    p.add_argument("--allow-z-below-delta", action="store_true")
    p.add_argument("--memo-limit", type=int, default=SolverConfig.memo_limit)
    p.add_argument("--jobs", type=int, default=1, help="worker processes; results do not depend on it")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kgrundy", description="k-Grundy domination and k-forcing toolkit.",
                                 epilog=FAMILY_HELP)
    ap.add_argument("--format", choices=["human", "json", "csv"], default="human")
    ap.add_argument("--max-vertices", type=int, default=24, help="capacity guard for exact searches")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact value with witness")
    _add_source(p)
    _add_solver(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="lower/upper bounds without exhaustive search")
    _add_source(p)
    p.add_argument("--variant", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check a sequence certificate (JSON; '-' for stdin)")
    _add_source(p)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="explicit constructions")
    p.add_argument("--construction", required=True, choices=["cycle", "grid", "hypercube", "gadget", "forcing"])
    for opt in ("n", "m", "d", "k", "h"):
        p.add_argument(f"--{opt}", type=int)
    p.add_argument("--variant")
    p.add_argument("--verify", action="store_true")
    _add_source(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("forcing", help="exact k-forcing number")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="include the forcing trace")
    p.set_defaults(func=cmd_forcing)

    p = sub.add_parser("family", help="generate and serialize a family member")
    p.add_argument("--family", required=True, help=FAMILY_HELP)
    p.add_argument("--output-format", choices=[f.value for f in GraphFormat], default="g6")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("audit", help="inequality audit over a graph stream")
    p.add_argument("--graph", help="graph6 file, one graph per line")
    p.add_argument("--family-sweep", help="';'-separated family specs")
    p.add_argument("--random", help="COUNT,NMIN,NMAX,P Erdos-Renyi stream")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ks", default="1,2")
    p.add_argument("--full-l", action="store_true", help="flag instances whose L-value equals n")
    p.add_argument("--jsonl")
    p.add_argument("--csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("conjecture", help="forcing, cube and product checks")
    p.add_argument("kind", choices=["forcing", "cube", "product"])
    _add_source(p)
    p.add_argument("--stream", help="graph6 file for a forcing campaign")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--jsonl")
    p.add_argument("--csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, SequenceError, SolverError, ForcingError,
            cons.InapplicableError, ValueError, OSError) as exc:
        print(f"kgrundy {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
