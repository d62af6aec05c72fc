"""Command-line runner: topology, broadcast, alltoall, analytic, compare.

Exit codes: 0 ok, 2 invalid configuration, 3 over budget, 4 invariant violated.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import analytics
from .alltoall import PHASE_SECTORS, run_all_to_all, verify_half_duplex
from .broadcast import InvariantViolation, mean_receive_step, run_one_to_all
from .config import EQUAL_STEP_FAMILY, ConfigError, ExperimentConfig
from .ejint import InvalidModulus, Modulus, weight_distribution
from .report import (
    decimal_str,
    fraction_json,
    link_use_summary,
    rows_from_analytic,
    rows_from_trace,
    step_columns,
    to_csv,
    to_json,
)
from .topology import BudgetExceeded, build_network, closed_form_histogram, distance_histogram

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


def _alpha(text):
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b (e.g. 3,4), got {text!r}") from None
    return (a, b)


def _dims_range(text):
    lo, sep, hi = text.partition("..")
    try:
        return list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n or lo..hi, got {text!r}") from None


def _member(text):
    # a,b:n
    ab, _, n = text.partition(":")
    try:
        return (*_alpha(ab), int(n))
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"expected a,b:n, got {text!r}") from None


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _note(msg: str, args):
    # summaries go to stdout when the data went to a file, else to stderr
    print(msg, file=sys.stdout if args.out else sys.stderr)


def _config(args, mode, algorithm="improved") -> ExperimentConfig:
    return ExperimentConfig(
        alpha=args.alpha, dims=args.dims, algorithm=getattr(args, "algorithm", algorithm),
        mode=mode, source=getattr(args, "source", 0), out=args.out,
        format=getattr(args, "format", "csv"),
    ).validate()


def cmd_topology(args) -> int:
    cfg = _config(args, "topology")
    m = cfg.modulus
    net = build_network(m, cfg.dims)
    bfs = distance_histogram(net)
    closed = closed_form_histogram(m, cfg.dims)
    doc = {
        "alpha": list(cfg.alpha),
        "dims": cfg.dims,
        "norm": m.norm,
        "node_count": net.node_count,
        "diameter": len(bfs) - 1,
        "diameter_per_dimension": m.diameter,
        "degree": net.degree,
        "T": fraction_json(m.T, 6),
        "M": fraction_json(m.M, 6),
        "bfs_histogram": bfs,
        "closed_form_histogram": closed,
        "histogram_match": bfs == closed,
    }
    if cfg.dims == 1:
        doc["weight_distribution"] = [list(p) for p in weight_distribution(m)]
    _emit(to_json(doc), cfg.out)
    return EXIT_OK if doc["histogram_match"] else EXIT_INVARIANT


def _trace_doc(trace) -> dict:
    return {
        "algorithm": trace.algorithm,
        "alpha": [trace.net.modulus.a, trace.net.modulus.b],
        "dims": trace.net.n,
        "node_count": trace.net.node_count,
        "source": trace.source,
        "steps": rows_from_trace(trace),
        "totals": {"senders": trace.total_senders, "receivers": trace.total_receivers},
        "mean_receive_step": fraction_json(mean_receive_step(trace), 6),
        "receive_histogram": trace.receive_histogram(),
        "link_uses": link_use_summary(trace),
    }


def _out_for(out, algorithm, both):
    if out is None or not both:
        return out
    p = Path(out)
    return str(p.with_name(f"{p.stem}.{algorithm}{p.suffix}"))


def cmd_broadcast(args) -> int:
    cfg = _config(args, "one2all")
    net = build_network(cfg.modulus, cfg.dims)
    algos = ("previous", "improved") if cfg.algorithm == "both" else (cfg.algorithm,)
    if args.show_coords:
        _note(f"source {cfg.source} = {net.format_node(cfg.source)}", args)
    for algo in algos:
        trace = run_one_to_all(net, algo, cfg.source)
        if cfg.format == "csv":
            text = to_csv(rows_from_trace(trace), step_columns(algo == "previous"))
        else:
            text = to_json(_trace_doc(trace))
        _emit(text, _out_for(cfg.out, algo, len(algos) > 1))
        mean = mean_receive_step(trace)
        _note(
            f"{algo}: steps={len(trace.steps)} senders={trace.total_senders} "
            f"receivers={trace.total_receivers} mean_receive_step={mean} (~{decimal_str(mean, 4)})",
            args,
        )
    return EXIT_OK


def cmd_alltoall(args) -> int:
    cfg = _config(args, "all2all")
    net = build_network(cfg.modulus, cfg.dims)
    trace = run_all_to_all(net)
    report = verify_half_duplex(trace)
    per_node = trace.messages_per_node
    expected = net.node_count - 1
    doc = {
        "alpha": list(cfg.alpha),
        "dims": cfg.dims,
        "node_count": net.node_count,
        "steps": len(trace.steps),
        "messages_per_node": {"min": int(per_node.min()), "max": int(per_node.max()),
                              "expected": expected},
        "complete": bool((per_node == expected).all()),
        "half_duplex_ok": report.ok,
        "half_duplex_violation": report.violation,
        "phases": [
            {"phase": p, "sectors": list(PHASE_SECTORS[p]),
             "broadcaster_reach": int(trace.phase_reach[p].size),
             "mean_origins_held": float(trace.phase_holdings[p - 1].sum(axis=1).mean() - 1)}
            for p in (1, 2, 3)
        ],
        "per_step": [
            {"phase": s.phase, "step": s.step, "global_step": s.global_step,
             "links": s.links, "deliveries": s.deliveries}
            for s in trace.steps
        ],
    }
    _emit(to_json(doc), cfg.out)
    _note(
        f"all-to-all {cfg.modulus}^({cfg.dims}): {doc['messages_per_node']['min']} messages per node "
        f"(expected {expected}), {doc['steps']} steps, half-duplex {'OK' if report.ok else 'VIOLATED'}",
        args,
    )
    if not (report.ok and doc["complete"]):
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_analytic(args) -> int:
    cfg = _config(args, "analytic")
    m, n = cfg.modulus, cfg.dims
    algos = ("previous", "improved") if cfg.algorithm == "both" else (cfg.algorithm,)
    node_count = m.norm**n
    docs = {}
    for algo in algos:
        rows = analytics.analytic_rows(m, n, algo)
        table = rows_from_analytic(rows, node_count)
        docs[algo] = {
            "steps": table,
            "totals": {"senders": sum(r.senders for r in rows),
                       "receivers": sum(r.receivers for r in rows)},
            "mean_receive_step": fraction_json(analytics.mean_receive_step(rows), 6),
        }
        if cfg.format == "csv":
            _emit(to_csv(table, step_columns(algo == "previous")), _out_for(cfg.out, algo, len(algos) > 1))
    totals = {"alpha": list(cfg.alpha), "dims": n, "node_count": node_count,
              "totals": {a: d["totals"] for a, d in docs.items()}}
    if len(algos) == 2:
        totals["sender_ratio"] = fraction_json(analytics.sender_ratio(m, n))
    if cfg.format == "json":
        _emit(to_json({**totals, "algorithms": docs}), cfg.out)
    else:
        print(to_json(totals), end="", file=sys.stdout if cfg.out else sys.stderr)
    return EXIT_OK


def _member_rows(a, b, n, algo):
    """Per-step (sending, receiving) for one family member, simulated when it fits."""
    m = Modulus(a, b)
    net = build_network(m, n)
    if net.explicit:
        trace = run_one_to_all(net, algo)
        return [(s.sending, s.receiving) for s in trace.steps], "simulation", mean_receive_step(trace)
    rows = analytics.analytic_rows(m, n, algo)
    return [(r.senders, r.receivers) for r in rows], "analytic", analytics.mean_receive_step(rows)


def compare_family(family) -> dict:
    for a, b, n in family:
        if not Modulus(a, b).is_broadcast_form:
            raise ConfigError(f"alpha {a}+{b}ρ needs b = a+1")
    steps = {n * Modulus(a, b).diameter for a, b, n in family}
    if len(steps) != 1:
        raise ConfigError(f"family members need equal step counts, got {sorted(steps)}")
    (nsteps,) = steps
    members, sums = [], {}
    for a, b, n in family:
        entry = {"alpha": [a, b], "dims": n, "node_count": Modulus(a, b).norm**n}
        for algo in ("previous", "improved"):
            rows, how, mean = _member_rows(a, b, n, algo)
            entry[algo] = {"source": how, "mean_receive_step": fraction_json(mean, 6)}
            acc = sums.setdefault(algo, [[0, 0] for _ in range(nsteps)])
            for i, (s, r) in enumerate(rows):
                acc[i][0] += s
                acc[i][1] += r
        members.append(entry)
    k = len(family)
    table = []
    for i in range(nsteps):
        row = {"step": i + 1}
        for algo in ("previous", "improved"):
            s, r = sums[algo][i]
            row[f"{algo}_sending"] = decimal_str(Fraction(s, k), 6)
            row[f"{algo}_receiving"] = decimal_str(Fraction(r, k), 6)
            row[f"{algo}_active"] = decimal_str(Fraction(s + r, k), 6)
        table.append(row)
    return {"steps": nsteps, "members": members, "averages": table}


def cmd_compare(args) -> int:
    if args.table3:
        m = Modulus(*args.alpha)
        rows = analytics.table3(m, args.dims)
        if args.format == "csv":
            out = [{**r, "ratio": decimal_str(r["ratio"])} for r in rows]
            _emit(to_csv(out, ("n", "previous", "improved", "difference", "ratio")), args.out)
        else:
            _emit(to_json({"alpha": list(args.alpha), "rows": rows}), args.out)
        return EXIT_OK
    family = args.family or [tuple(f) for f in EQUAL_STEP_FAMILY]
    doc = compare_family(family)
    if args.format == "csv":
        cols = ["step"] + [f"{a}_{c}" for a in ("previous", "improved")
                           for c in ("sending", "receiving", "active")]
        _emit(to_csv(doc["averages"], cols), args.out)
    else:
        _emit(to_json(doc), args.out)
    for mbr in doc["members"]:
        a, b = mbr["alpha"]
        _note(
            f"{a}+{b}ρ^({mbr['dims']}): {doc['steps']} steps, mean receive step "
            f"previous {mbr['previous']['mean_receive_step']['value']} "
            f"({mbr['previous']['source']}) vs improved {mbr['improved']['mean_receive_step']['value']}",
            args,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=_alpha, default=(3, 4), help="generator a,b (default 3,4)")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("csv", "json"), default="csv")
    dims = argparse.ArgumentParser(add_help=False)
    dims.add_argument("--dims", type=int, default=1)
    algo = argparse.ArgumentParser(add_help=False)
    algo.add_argument("--algorithm", choices=("previous", "improved", "both"), default="improved")

    p = argparse.ArgumentParser(prog="ejnet", description="Eisenstein-Jacobi network broadcast toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("topology", parents=[common, dims], help="size, diameter, distance histogram (JSON)")
    t.set_defaults(func=cmd_topology)

    b = sub.add_parser("broadcast", parents=[common, dims, algo, fmt], help="simulate one-to-all")
    b.add_argument("--source", type=int, default=0, help="dense index of the source node")
    b.add_argument("--show-coords", action="store_true", help="print the source's coordinates")
    b.set_defaults(func=cmd_broadcast)

    a = sub.add_parser("alltoall", parents=[common, dims], help="simulate three-phase all-to-all (JSON)")
    a.set_defaults(func=cmd_alltoall)

    an = sub.add_parser("analytic", parents=[common, dims, algo, fmt], help="closed-form step counts")
    an.set_defaults(func=cmd_analytic)

    c = sub.add_parser("compare", parents=[common, fmt], help="equal-step family averages or Table-3 totals")
    c.add_argument("--dims", type=_dims_range, default=[1, 2, 3, 4, 5, 6], help="n or lo..hi (with --table3)")
    c.add_argument("--table3", action="store_true", help="total senders per dimension count")
    c.add_argument("--family", type=_member, nargs="+", default=None,
                   help="members as a,b:n (default: the 12-step family)")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidModulus, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
