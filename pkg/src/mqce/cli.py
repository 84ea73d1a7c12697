"""Command-line interface: enum, oracle, filter, gen, bench."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import statistics
import sys
from contextlib import contextmanager
from typing import Iterable, TextIO

import numpy as np

from . import ALGORITHMS, emit_qcs
from .generator import GenSpec, gen_er
from .graph import EdgeListError, Graph, load_edge_list, write_edge_list
from .oracle import DEFAULT_MAX_N, OracleLimitError, all_mqcs, all_qcs
from .predicates import QcParams
from .search import RunStats
from .settrie import filter_maximal

log = logging.getLogger("mqce")


class UsageError(Exception):
    pass


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as f:
            yield f


@contextmanager
def _open_in(path: str | None):
    if path is None or path == "-":
        yield sys.stdin
    else:
        with open(path) as f:
            yield f


def _params(args) -> QcParams:
    try:
        return QcParams.parse(args.gamma, args.theta)
    except (ValueError, TypeError) as e:
        raise UsageError(str(e)) from None


def canonical_lines(sets: Iterable[Iterable[int]]) -> list[str]:
    rows = sorted({tuple(sorted(s)) for s in sets})
    return [" ".join(map(str, r)) for r in rows]


def write_qcs(out: TextIO, g: Graph | None, sets: Iterable[Iterable[int]]) -> None:
    """One set per line, labels ascending, lines in lexicographic integer order."""
    if g is not None:
        sets = ([g.labels[v] for v in s] for s in sets)
    for line in canonical_lines(sets):
        out.write(line + "\n")


def read_qcs(stream: TextIO) -> list[tuple[int, ...]]:
    out = []
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            out.append(tuple(sorted(int(x) for x in text.split())))
        except ValueError:
            raise EdgeListError(lineno, line, "non-integer token") from None
    return out


def _write_stats(path: str, stats: RunStats, timing: bool) -> None:
    d = stats.as_dict() if timing else stats.counters()
    with open(path, "w") as f:
        json.dump(d, f, indent=2)
        f.write("\n")


def _load(path: str) -> Graph:
    with _open_in(path) as f:
        return load_edge_list(f)


# subcommands -----------------------------------------------------------------


def cmd_enum(args) -> int:
    params = _params(args)
    if args.max_round < 1:
        raise UsageError("--max-round must be >= 1")
    g = _load(args.input)
    stats = RunStats()
    sink = emit_qcs(g, params, algo=args.algo, branching=args.branching,
                    max_round=args.max_round, two_hop=args.two_hop, jobs=args.jobs, stats=stats)
    sets = filter_maximal(sink.sets) if args.filter else sink.sets
    with _open_out(args.output) as out:
        write_qcs(out, g, sets)
    if args.stats:
        _write_stats(args.stats, stats, args.timing)
    return 0


def cmd_oracle(args) -> int:
    params = _params(args)
    g = _load(args.input)
    fn = all_qcs if args.all else all_mqcs
    sets = fn(g, params, max_n=args.max_n)
    with _open_out(args.output) as out:
        write_qcs(out, g, sets)
    return 0


def cmd_filter(args) -> int:
    with _open_in(args.input) as f:
        sets = read_qcs(f)
    with _open_out(args.output) as out:
        write_qcs(out, None, filter_maximal(sets))
    return 0


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.n, args.m, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    g = gen_er(spec)
    with _open_out(args.output) as out:
        write_edge_list(g, out)
    return 0


# bench -------------------------------------------------------------------------

DEFAULT_CONFIGS = (
    "se-baseline",
    "fastqc:sym",
    "fastqc:hybrid",
    "dc-fastqc:sym",
    "dc-fastqc:hybrid",
    "dc-fastqc:hybrid:no-two-hop",
)


def parse_config(text: str) -> dict:
    parts = text.split(":")
    algo = parts[0]
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm in config {text!r}")
    branching = parts[1] if len(parts) > 1 else ("se" if algo == "se-baseline" else "hybrid")
    if algo == "se-baseline":
        if branching != "se":
            raise UsageError("se-baseline takes no branching option")
    elif branching not in ("hybrid", "sym"):
        raise UsageError(f"unknown branching in config {text!r}")
    two_hop = True
    for extra in parts[2:]:
        if extra == "no-two-hop" and algo == "dc-fastqc":
            two_hop = False
        else:
            raise UsageError(f"unknown option {extra!r} in config {text!r}")
    return {"name": text, "algo": algo, "branching": branching, "two_hop": two_hop}


def bench_corpus(n_min: int, n_max: int, d_min: float, d_max: float, count: int, seed: int):
    """``count`` ER cases with n and edge density |E|/|V| drawn from the ranges."""
    rng = np.random.Generator(np.random.Philox(seed))
    cases = []
    for i in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        dens = float(rng.uniform(d_min, d_max))
        m = min(int(round(dens * n)), n * (n - 1) // 2)
        cases.append(GenSpec(n, m, seed * 1_000_003 + i))
    return cases


BENCH_FIELDS = ["case", "n", "m", "seed", "gamma", "theta", "config", "algo", "branching",
                "two_hop", "max_round", "mqcs", "branches_created", "pruned_by_condition",
                "pruned_by_t2", "terminal_t1", "refinement_passes", "qcs_emitted", "wall_time_ms"]


def run_bench(cases, params: QcParams, configs: list[dict], max_round: int = 2,
              jobs: int = 1, timing: bool = True) -> list[dict]:
    rows = []
    for ci, spec in enumerate(cases):
        g = gen_er(spec)
        for cfg in configs:
            stats = RunStats()
            branching = "hybrid" if cfg["branching"] == "se" else cfg["branching"]
            sink = emit_qcs(g, params, algo=cfg["algo"], branching=branching, max_round=max_round,
                            two_hop=cfg["two_hop"], jobs=jobs, stats=stats)
            row = {"case": ci, "n": spec.n, "m": spec.m, "seed": spec.seed,
                   "gamma": str(params.gamma), "theta": params.theta, "config": cfg["name"],
                   "algo": cfg["algo"], "branching": cfg["branching"],
                   "two_hop": int(cfg["two_hop"]), "max_round": max_round,
                   "mqcs": len(filter_maximal(sink.sets))}
            row.update(stats.counters())
            row["wall_time_ms"] = round(stats.wall_time_ms, 3) if timing else 0
            rows.append(row)
            log.info("case %d %s: %d branches", ci, cfg["name"], stats.branches_created)
    return rows


def ordering_report(rows: list[dict], chain: list[str]) -> tuple[list[str], bool]:
    """Median branches per config and whether the medians follow ``chain``
    (each no larger than the next).  Per-case inversions are listed."""
    by_cfg: dict[str, dict[int, int]] = {}
    for r in rows:
        by_cfg.setdefault(r["config"], {})[r["case"]] = r["branches_created"]
    lines = []
    medians = {}
    for name, per_case in by_cfg.items():
        medians[name] = statistics.median(per_case.values())
        lines.append(f"median branches_created {name}: {medians[name]:g}")
    present = [c for c in chain if c in medians]
    ok = all(medians[a] <= medians[b] for a, b in zip(present, present[1:]))
    if len(present) > 1:
        lines.append(f"median ordering {' <= '.join(present)}: {'holds' if ok else 'VIOLATED'}")
    for a, b in zip(present, present[1:]):
        for case in sorted(by_cfg[a]):
            if case in by_cfg[b] and by_cfg[a][case] > by_cfg[b][case]:
                lines.append(f"inversion case {case}: {a}={by_cfg[a][case]} > {b}={by_cfg[b][case]}")
    # monolithic and DC runs must agree after filtering
    mq: dict[int, set[int]] = {}
    for r in rows:
        mq.setdefault(r["case"], set()).add(r["mqcs"])
    for case, counts in sorted(mq.items()):
        if len(counts) > 1:
            lines.append(f"MISMATCH case {case}: configs disagree on the MQC count {sorted(counts)}")
    return lines, ok


def cmd_bench(args) -> int:
    params = _params(args)
    if args.n_min < 1 or args.n_max < args.n_min or args.count < 1:
        raise UsageError("need 1 <= n-min <= n-max and count >= 1")
    if args.density_min < 0 or args.density_max < args.density_min:
        raise UsageError("need 0 <= density-min <= density-max")
    configs = [parse_config(c) for c in (args.config or DEFAULT_CONFIGS)]
    cases = bench_corpus(args.n_min, args.n_max, args.density_min, args.density_max,
                         args.count, args.seed)
    rows = run_bench(cases, params, configs, args.max_round, args.jobs, args.timing)
    with _open_out(args.csv) as out:
        w = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    chain = args.order.split(",") if args.order else ["fastqc:hybrid", "fastqc:sym", "se-baseline"]
    lines, _ = ordering_report(rows, chain)
    with _open_out(args.report) as out:
        for line in lines:
            out.write(line + "\n")
    return 0


# parser ------------------------------------------------------------------------


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("-g", "--gamma", required=True, help="fraction threshold in [0.5, 1], e.g. 0.9 or 9/10")
    p.add_argument("-t", "--theta", required=True, type=int, help="minimum QC size")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mqce", description="Maximal quasi-clique enumeration.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enum", help="enumerate maximal QCs of an edge list")
    p.add_argument("input", help="edge list path, or - for stdin")
    _add_params(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="dc-fastqc")
    p.add_argument("--branching", choices=("hybrid", "sym"), default="hybrid")
    p.add_argument("--max-round", type=int, default=2)
    p.add_argument("--no-two-hop", dest="two_hop", action="store_false")
    p.add_argument("--no-filter", dest="filter", action="store_false",
                   help="write raw emissions (a superset of the maximal QCs)")
    p.add_argument("-o", "--output")
    p.add_argument("--stats", help="write run counters as JSON")
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="omit wall_time_ms from the stats file")
    p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes (dc-fastqc only; 0 = all cores)")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("oracle", help="brute-force maximal QCs (small graphs only)")
    p.add_argument("input")
    _add_params(p)
    p.add_argument("--all", action="store_true", help="list every QC of size >= theta")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("filter", help="keep the inclusion-maximal sets of a QC file")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("gen", help="Erdős–Rényi graph with exactly m edges")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="compare configurations on an ER corpus")
    _add_params(p)
    p.add_argument("--n-min", type=int, default=40)
    p.add_argument("--n-max", type=int, default=80)
    p.add_argument("--density-min", type=float, default=5.0, help="|E|/|V| lower bound")
    p.add_argument("--density-max", type=float, default=15.0)
    p.add_argument("--count", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", action="append",
                   help="algo[:branching[:no-two-hop]]; repeatable (default: all six)")
    p.add_argument("--max-round", type=int, default=2)
    p.add_argument("--order", help="comma-separated configs whose medians should be non-decreasing")
    p.add_argument("--csv", help="CSV output path (default stdout)")
    p.add_argument("--report", help="summary output path (default stdout)")
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="write 0 for wall_time_ms")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        ap.error(str(e))
    except (OSError, EdgeListError, OracleLimitError) as e:
        print(f"mqce: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
