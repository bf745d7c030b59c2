"""Command-line entry point.

One subcommand per pipeline stage.  Sharding uses the parts/from/to
convention throughout: work item i belongs to the shard iff
from <= i mod parts < to.  Every run prints a plain-text manifest
(key=value lines) with input/output digests so reruns can be compared.

Exit codes: 0 success, 2 usage, 3 data/format error, 4 solver timeout.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import bounds as bounds_mod
from . import data as data_mod
from .chirotope import (
    canonical_form,
    chirotope_from_points,
    decode_olm,
    encode_olm,
    parse_point_list,
)
from .embedding import decide_embeddable, encode_embedding, export_dimacs
from .enumeration import ExtensionShard, merge_dedup, run_extension
from .errors import OtkitError, SolverTimeout
from .graphs import Graph, parse_edge_list, parse_graph6, emit_edge_list
from .search import (
    StatMatrix,
    build_stat,
    export_lp,
    filter_phase1,
    min_hitting_set,
    read_stat,
    test_universal,
    verify_conflict_collection,
    write_stat,
)

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_TIMEOUT = 4

# OTKIT_WORKERS caps the work pool; --workers overrides both


def _worker_count(args, n_items: int) -> int:
    if getattr(args, "workers", None):
        w = args.workers
    else:
        w = int(os.environ.get("OTKIT_WORKERS", os.cpu_count() or 1))
    return max(1, min(w, n_items))


def _stat_row(task):
    ot, graphs, budget = task
    from .search import build_stat

    return build_stat([ot], graphs, conflict_budget=budget).bits[0]


def _phase1_verdict(task):
    ot, budget = task
    return bool(filter_phase1([ot], conflict_budget=budget))


def _pool_map(fn, tasks, workers: int):
    """Chunked parallel map preserving input order; sequential for 1 worker."""
    if workers <= 1:
        return [fn(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * workers))))

_DATA_KEYS = ("g", "h", "g+h", "listing1", "listing2", "n3")


# ---------------------------------------------------------------------------
# manifest


class RunManifest:
    def __init__(self, subcommand: str, argv):
        self.t0 = time.monotonic()
        self.entries: list[tuple[str, str]] = [
            ("subcommand", subcommand),
            ("arguments", " ".join(argv)),
        ]

    def add(self, key: str, value) -> None:
        self.entries.append((key, str(value)))

    def digest(self, role: str, path: str) -> None:
        try:
            with open(path, "rb") as fh:
                h = hashlib.sha256(fh.read()).hexdigest()
        except OSError:
            h = "missing"
        self.entries.append((f"{role}_sha256[{os.path.basename(path)}]", h))

    def emit(self, stream=None) -> None:
        self.add("wall_time_s", f"{time.monotonic() - self.t0:.3f}")
        for k, v in self.entries:
            print(f"{k}={v}", file=stream or sys.stdout)


# ---------------------------------------------------------------------------
# input resolution ("data:" URIs refer to the bundled files)


def _resolve_points(spec: str):
    if spec == "data:listing1":
        return data_mod.listing1_points()
    if spec == "data:listing2":
        return data_mod.listing2_points()
    with open(spec) as fh:
        return parse_point_list(fh.read())


def _parse_graph_line(line: str) -> Graph:
    line = line.strip()
    if any(ch.isspace() for ch in line):
        return parse_edge_list(line)
    return parse_graph6(line)


def _resolve_graphs(spec: str) -> list[Graph]:
    low = spec.lower()
    if low in ("data:g", "data:h", "data:g+h"):
        return data_mod.conflict_graphs(low.split(":", 1)[1])
    graphs = []
    with open(spec) as fh:
        for line in fh:
            if line.strip() and not line.startswith(">>"):
                graphs.append(_parse_graph_line(line))
    return graphs


def _resolve_binfile(spec: str) -> str:
    if spec == "data:n3":
        return data_mod.seed_order_type_path()
    return spec


def _load_order_types(spec: str, n: int, shard=None):
    path = _resolve_binfile(spec)
    with open(path, "rb") as fh:
        data = fh.read()
    mats = decode_olm(data, n)
    if shard is not None:
        mats = [m for i, m in enumerate(mats) if shard.selects(i)]
    return path, [m.order_type() for m in mats]


def _add_shard_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--parts", type=int, default=1)
    p.add_argument("--from", dest="from_part", type=int, default=0)
    p.add_argument("--to", dest="to_part", type=int, default=None)


def _shard_of(args) -> tuple[int, int, int]:
    to_part = args.to_part if args.to_part is not None else args.parts
    return args.parts, args.from_part, to_part


# ---------------------------------------------------------------------------
# subcommands


def _cmd_extend(args, manifest):
    path = _resolve_binfile(args.input)
    # positional parts/from/to (matching the historical tool's usage line)
    # take precedence over the --parts/--from/--to flags
    if args.parts_pos is not None:
        parts = args.parts_pos
        from_part = args.from_pos if args.from_pos is not None else 0
        to_part = args.to_pos if args.to_pos is not None else parts
    else:
        parts, from_part, to_part = _shard_of(args)
    shard = ExtensionShard(parts=parts, from_part=from_part, to_part=to_part, input_path=path)
    manifest.digest("input", path)
    processed, produced = run_extension(shard, args.n, force=args.force)
    print(f"total solutions: {produced}/{processed}")
    manifest.add("processed", processed)
    manifest.add("produced", produced)
    manifest.digest("output", shard.output_path)
    return 0


def _cmd_merge_dedup(args, manifest):
    for p in args.inputs:
        manifest.digest("input", p)
    count = merge_dedup(args.inputs, args.n, args.output, force=args.force)
    print(f"merged: {count} order types")
    manifest.add("count", count)
    manifest.digest("output", args.output)
    return 0


def _cmd_filter1(args, manifest):
    parts, from_part, to_part = _shard_of(args)
    shard = ExtensionShard(parts=parts, from_part=from_part, to_part=to_part, input_path="-")
    path, ots = _load_order_types(args.input, 11, shard)
    manifest.digest("input", path)
    verdicts = _pool_map(
        _phase1_verdict,
        [(ot, args.budget) for ot in ots],
        _worker_count(args, len(ots)),
    )
    survivors = [ot for ot, keep in zip(ots, verdicts) if keep]
    records = encode_olm(canonical_form(ot) for ot in survivors)
    with open(args.output, "wb") as fh:
        fh.write(records)
    print(f"survivors: {len(survivors)}/{len(ots)}")
    manifest.add("survivors", len(survivors))
    manifest.digest("output", args.output)
    return 0


def _cmd_test_universal(args, manifest):
    parts, from_part, to_part = _shard_of(args)
    shard = ExtensionShard(parts=parts, from_part=from_part, to_part=to_part, input_path="-")
    path, ots = _load_order_types(args.input, args.n, shard)
    manifest.digest("input", path)
    graphs = _resolve_graphs(args.graphs)
    counters = [0] * len(graphs)
    universal = 0
    for i, ot in enumerate(ots):
        verdict = test_universal(ot, graphs, counters, conflict_budget=args.budget)
        if verdict is None:
            universal += 1
            print(f"{i}: universal")
        else:
            print(f"{i}: fails graph {verdict}")
    manifest.add("universal", universal)
    manifest.add("tested", len(ots))
    return 0


def _cmd_stat(args, manifest):
    parts, from_part, to_part = _shard_of(args)
    shard = ExtensionShard(parts=parts, from_part=from_part, to_part=to_part, input_path="-")
    path, ots = _load_order_types(args.input, args.n, shard)
    manifest.digest("input", path)
    graphs = _resolve_graphs(args.graphs)
    rows = _pool_map(
        _stat_row,
        [(ot, graphs, args.budget) for ot in ots],
        _worker_count(args, len(ots)),
    )
    m = StatMatrix(rows)
    write_stat(m, args.output)
    manifest.add("rows", m.n_rows)
    manifest.add("cols", m.n_cols)
    manifest.digest("output", args.output)
    return 0


def _cmd_mincover(args, manifest):
    m = read_stat(args.stat)
    manifest.digest("input", args.stat)
    if args.lp:
        export_lp(m, args.lp)
        manifest.digest("output", args.lp)
        print(f"lp written: {args.lp}")
    mode = "greedy" if args.greedy else "exact"
    cover = min_hitting_set(m, mode=mode)
    print(f"cover size: {len(cover)} ({mode})")
    print("graphs: " + " ".join(str(j) for j in cover.graph_ids))
    manifest.add("cover_size", len(cover))
    return 0


def _cmd_bounds(args, manifest):
    report = bounds_mod.BoundReport.compute(args.n, alpha_tol=args.alpha_tol)
    for line in report.lines():
        print(line)
    manifest.add("labeled_count", report.labeled_count)
    manifest.add("min_m", report.min_m)
    manifest.add("alpha", f"{report.alpha:.9f}")
    return 0


def _cmd_embed(args, manifest):
    graphs = _resolve_graphs(args.graph)
    if len(graphs) != 1:
        print("embed expects exactly one graph", file=sys.stderr)
        return EXIT_USAGE
    g = graphs[0]
    points = _resolve_points(args.points)
    ot = chirotope_from_points(points)
    if args.dimacs_out:
        export_dimacs(encode_embedding(g, ot), args.dimacs_out)
        manifest.digest("output", args.dimacs_out)
        print(f"dimacs written: {args.dimacs_out}")
        return 0
    witness = decide_embeddable(g, ot, conflict_budget=args.budget)
    if witness is None:
        print("not embeddable")
        manifest.add("embeddable", 0)
    else:
        print("embeddable")
        manifest.add("embeddable", 1)
        if args.witness:
            print(" ".join(f"{v}->{p}" for v, p in sorted(witness.items())))
    return 0


def _cmd_verify_conflict(args, manifest):
    graphs = _resolve_graphs(args.graphs)
    if args.points.startswith("data:") or not args.points.endswith(".bin"):
        ots = [chirotope_from_points(_resolve_points(args.points))]
    else:
        _, ots = _load_order_types(args.points, args.n)
    counterexample = verify_conflict_collection(graphs, ots, conflict_budget=args.budget)
    if counterexample is None:
        print("ok: conflict collection holds")
        manifest.add("conflict", 1)
        return 0
    print(f"counterexample: an order type on {counterexample.n} points embeds all graphs")
    manifest.add("conflict", 0)
    return 0


def _cmd_data(args, manifest):
    if args.name in ("g", "h", "g+h"):
        for g in data_mod.conflict_graphs(args.name):
            print(emit_edge_list(g))
    elif args.name == "listing1":
        print(data_mod.listing1_points())
    elif args.name == "listing2":
        print(data_mod.listing2_points())
    elif args.name == "n3":
        print(data_mod.seed_order_type_path())
    else:
        print(f"unknown data set {args.name!r}", file=sys.stderr)
        return EXIT_USAGE
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="otkit", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("extend", help="extend order types on n points to n+1")
    p.add_argument("n", type=int)
    p.add_argument("input")
    p.add_argument("parts_pos", nargs="?", type=int, default=None, metavar="parts")
    p.add_argument("from_pos", nargs="?", type=int, default=None, metavar="from")
    p.add_argument("to_pos", nargs="?", type=int, default=None, metavar="to")
    _add_shard_flags(p)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("merge-dedup", help="merge shard outputs, removing duplicates")
    p.add_argument("n", type=int)
    p.add_argument("output")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_merge_dedup)

    p = sub.add_parser("filter1", help="structural prefilter on 11-point order types")
    p.add_argument("input")
    p.add_argument("output")
    _add_shard_flags(p)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_filter1)

    p = sub.add_parser("test-universal", help="test order types against a graph list")
    p.add_argument("input")
    p.add_argument("n", type=int)
    p.add_argument("graphs")
    _add_shard_flags(p)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_test_universal)

    p = sub.add_parser("stat", help="full embeddability matrix to a stat file")
    p.add_argument("input")
    p.add_argument("n", type=int)
    p.add_argument("graphs")
    p.add_argument("output")
    _add_shard_flags(p)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_stat)

    p = sub.add_parser("mincover", help="minimum hitting set from a stat file")
    p.add_argument("stat")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--greedy", action="store_true")
    p.add_argument("--lp", metavar="OUT.LP", default=None)
    p.set_defaults(func=_cmd_mincover)

    p = sub.add_parser("bounds", help="counting bounds for n-vertex stacked triangulations")
    p.add_argument("n", type=int)
    p.add_argument("--alpha-tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("embed", help="decide one graph on one point set")
    p.add_argument("graph")
    p.add_argument("points")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--dimacs-out", default=None)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("verify-conflict", help="check that no input order type embeds all graphs")
    p.add_argument("graphs")
    p.add_argument("points")
    p.add_argument("--n", type=int, default=11)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_verify_conflict)

    p = sub.add_parser("data", help="print a bundled data set")
    p.add_argument("name", choices=list(_DATA_KEYS))
    p.set_defaults(func=_cmd_data)

    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = _build_parser()
    args = ap.parse_args(argv)
    manifest = RunManifest(args.cmd, argv)
    try:
        code = args.func(args, manifest)
    except SolverTimeout as exc:
        print(f"solver timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (OtkitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    if code == 0:
        manifest.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
