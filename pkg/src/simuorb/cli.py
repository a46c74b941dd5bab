"""Command line: ``simuorb {orbits|summary|validate|plot|bench}``.

Exit codes: 0 success, 2 usage error, 3 numerical ambiguity, 4 reference or
oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import kernels, refdata
from .errors import (
    AmbiguousGroupingError,
    InvalidArgumentError,
    InvariantViolationError,
    OracleRangeError,
)
from .orbits import (
    AMBIGUITY_FLOOR,
    DEFAULT_TOLERANCES,
    ArrangementSummary,
    Orbit,
    Region,
    Tolerances,
    analyze,
    summary_from_orbits,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_AMBIGUOUS = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    ns: tuple[int, ...]
    region: str = "all"
    fmt: str = "text"
    out: Optional[str] = None
    threads: int = 1
    tol: Tolerances = DEFAULT_TOLERANCES
    check: bool = False
    highlight_radius: Optional[float] = None


def parse_n(text: str) -> tuple[int, ...]:
    """``7`` or ``3..10`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            values = tuple(range(lo, hi + 1))
        else:
            values = (int(text),)
    except ValueError:
        raise UsageError(f"--n expects an integer or a range a..b, got {text!r}") from None
    if min(values) < 3:
        raise UsageError(f"n must be >= 3, got {min(values)}")
    return values


def default_threads() -> int:
    env = os.environ.get("SIMUORB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"SIMUORB_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _config(args) -> RunConfig:
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be >= 1")
    gap = args.radius_tol if args.radius_tol is not None else DEFAULT_TOLERANCES.gap
    shift = args.shift_tol if args.shift_tol is not None else DEFAULT_TOLERANCES.shift
    if gap <= 0 or shift <= 0:
        raise UsageError("tolerances must be positive")
    tol = Tolerances(gap=gap, shift=shift, ambiguity=min(AMBIGUITY_FLOOR, gap / 10))
    return RunConfig(
        ns=parse_n(args.n),
        region=getattr(args, "region", "all"),
        fmt=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        threads=threads,
        tol=tol,
        check=getattr(args, "check", False),
        highlight_radius=getattr(args, "highlight_radius", None),
    )


# ------------------------------------------------------------------ serialization


def _hist(h: dict) -> dict:
    return {str(k): v for k, v in sorted(h.items())}


def unit_record(n: int) -> dict:
    """The circumscribed circle: n vertices, each on the n - 1 lines leaving it."""
    return {
        "sqrt_radius": 1.0,
        "region": "unit",
        "n_classes": 1,
        "cardinality": n,
        "multiplicity": n - 1,
        "mult_histogram": {str(n - 1): n},
        "classes": [],
    }


def orbit_record(o: Orbit) -> dict:
    return {
        "sqrt_radius": o.sqrt_radius,
        "region": o.region.value,
        "n_classes": o.n_classes,
        "cardinality": o.cardinality,
        "multiplicity": o.multiplicity,
        "mult_histogram": _hist(o.mult_histogram),
        "classes": [
            {
                "anchor": list(c.anchor.as_tuple()),
                "multiplicity": c.multiplicity,
                "shifts": [[t.p, t.q, t.r, rho] for t, rho in c.members],
            }
            for c in o.classes
        ],
    }


def summary_record(s: ArrangementSummary) -> dict:
    return {
        "n": s.n,
        "N_int": s.N_int,
        "N_ext": s.N_ext,
        "N_total": s.N_total,
        "M_int": s.M_int,
        "M_ext": s.M_ext,
        "M_total": s.M_total,
        "a": _hist(s.a),
        "a_tilde": _hist(s.a_tilde),
    }


def dump_json(obj) -> str:
    """Canonical JSON: parsing and re-dumping reproduces the same bytes."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _hist_text(h: dict) -> str:
    return ";".join(f"{k}:{v}" for k, v in sorted(h.items()))


ORBIT_COLUMNS = (
    "n",
    "sqrt_radius",
    "region",
    "n_classes",
    "cardinality",
    "multiplicity",
    "mult_histogram",
    "representatives",
)


def _representatives(o: Orbit) -> str:
    return " ".join("({},{},{})".format(*c.anchor.as_tuple()) for c in o.classes)


def orbit_rows(n: int, orbits, region: str) -> list[dict]:
    """Records in decreasing radius; the vertex circle appears for region 'all'."""
    kept = [(o.sqrt_radius, orbit_record(o), o) for o in orbits if _keep(o, region)]
    if region == "all":
        kept.append((1.0, unit_record(n), None))
    kept.sort(key=lambda item: -item[0])
    return [(rec, o) for _, rec, o in kept]


def _csv_row(n: int, rec: dict, o: Optional[Orbit]) -> list:
    hist = ";".join(f"{k}:{v}" for k, v in sorted(rec["mult_histogram"].items(), key=lambda kv: int(kv[0])))
    return [
        n,
        repr(rec["sqrt_radius"]),
        rec["region"],
        rec["n_classes"],
        rec["cardinality"],
        rec["multiplicity"],
        hist,
        _representatives(o) if o is not None else "",
    ]


SUMMARY_COLUMNS = ("n",) + refdata.COUNT_COLUMNS + tuple(f"a_{k}" for k in refdata.KS) + tuple(
    f"atilde_{k}" for k in refdata.KS
)


def summary_row(s: ArrangementSummary) -> list:
    return (
        [s.n]
        + [getattr(s, c) for c in refdata.COUNT_COLUMNS]
        + [s.a.get(k, 0) for k in refdata.KS]
        + [s.a_tilde.get(k, 0) for k in refdata.KS]
    )


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------- commands


def _keep(o: Orbit, region: str) -> bool:
    if region == "all":
        return True
    if region == "interior":
        return o.region in (Region.INTERIOR, Region.CENTER)
    return o.region is Region.EXTERIOR


def _analyze_one(n, tol, threads, detail):
    timings: dict = {}
    t0 = time.perf_counter()
    orbits = analyze(n, detail=detail, tol=tol, threads=threads, timings=timings)
    timings["total"] = time.perf_counter() - t0
    return orbits, timings


def _run_many(cfg: RunConfig, detail: bool):
    """Analyze every n of the config; results come back in n order."""
    if cfg.threads > 1 and len(cfg.ns) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(_analyze_one, n, cfg.tol, 1, detail) for n in cfg.ns]
            return [f.result() for f in futures]
    return [_analyze_one(n, cfg.tol, cfg.threads, detail) for n in cfg.ns]


def cmd_orbits(cfg: RunConfig) -> int:
    results = _run_many(cfg, detail=True)
    docs, rows, lines = [], [], []
    for n, (orbits, _) in zip(cfg.ns, results):
        records = orbit_rows(n, orbits, cfg.region)
        summary = summary_from_orbits(n, orbits)
        docs.append({"n": n, "orbits": [rec for rec, _ in records], "summary": summary_record(summary)})
        rows.extend(_csv_row(n, rec, o) for rec, o in records)
        lines.append(f"n={n}: {len(records)} orbits")
        for rec, o in records:
            reps = _representatives(o) if o is not None else "(vertices)"
            lines.append(
                f"  {rec['sqrt_radius']:.12f} {rec['region']:9s} nu={rec['n_classes']:<3d} "
                f"points={rec['cardinality']:<6d} mult={_csv_row(n, rec, o)[6]}  {reps}"
            )
    if cfg.fmt == "json":
        text = dump_json(docs[0] if len(docs) == 1 else docs)
    elif cfg.fmt == "csv":
        text = _csv(ORBIT_COLUMNS, rows)
    elif cfg.fmt == "text":
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"orbits does not support --format {cfg.fmt}")
    _emit(cfg, text)
    return EXIT_OK


def cmd_summary(cfg: RunConfig) -> int:
    results = _run_many(cfg, detail=False)
    summaries = [summary_from_orbits(n, orbits) for n, (orbits, _) in zip(cfg.ns, results)]
    if cfg.fmt == "json":
        text = dump_json([summary_record(s) for s in summaries])
    elif cfg.fmt == "csv":
        text = _csv(SUMMARY_COLUMNS, [summary_row(s) for s in summaries])
    elif cfg.fmt == "text":
        head = f"{'n':>4} {'N':>9} {'N_e':>9} {'N_i':>9} {'M':>6} {'M_e':>6} {'M_i':>6}  a_k / a~_k"
        body = [
            f"{s.n:>4} {s.N_total:>9} {s.N_ext:>9} {s.N_int:>9} {s.M_total:>6} {s.M_ext:>6} {s.M_int:>6}  "
            f"{_hist_text(s.a)} / {_hist_text(s.a_tilde)}"
            for s in summaries
        ]
        text = "\n".join([head] + body) + "\n"
    else:
        raise UsageError(f"summary does not support --format {cfg.fmt}")
    _emit(cfg, text)
    if not cfg.check:
        return EXIT_OK
    mismatches = []
    for s in summaries:
        row = refdata.reference(s.n)
        if row is None:
            print(f"warning: no reference row for n={s.n}; check skipped", file=sys.stderr)
            continue
        mismatches.extend(refdata.compare_row(s, row))
        for e in refdata.errata():
            if e.n == s.n:
                print(
                    f"note: n={e.n} {e.column} printed as {e.printed}, checked against {e.corrected} ({e.evidence})",
                    file=sys.stderr,
                )
    for m in mismatches:
        print(f"mismatch: {m}", file=sys.stderr)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_validate(cfg: RunConfig) -> int:
    from .oracle import ORACLE_MAX_N, brute_force, compare

    bad = [n for n in cfg.ns if n > ORACLE_MAX_N]
    if bad:
        raise UsageError(f"oracle range exceeded: n={bad[0]} (supported 3..{ORACLE_MAX_N})")
    failures = 0
    for n, (orbits, _) in zip(cfg.ns, _run_many(cfg, detail=False)):
        summary = summary_from_orbits(n, orbits)
        oracle = brute_force(n)
        report = compare(n, summary, oracle)
        status = "ok" if not report else f"{len(report)} discrepancies"
        print(
            f"n={n}: {status}; points {oracle.summary.N_total}, orbits {oracle.summary.M_total}, "
            f"a={_hist_text(oracle.summary.a) or '-'} a~={_hist_text(oracle.summary.a_tilde) or '-'}"
        )
        for d in report:
            print(f"  {d}")
        failures += bool(report)
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_plot(cfg: RunConfig) -> int:
    from .svg import render

    if len(cfg.ns) != 1:
        raise UsageError("plot takes a single n")
    if cfg.fmt not in ("svg", "text"):
        raise UsageError(f"plot only writes svg, not {cfg.fmt}")
    n = cfg.ns[0]
    orbits, _ = _analyze_one(n, cfg.tol, cfg.threads, detail=True)
    kept = [o for o in orbits if _keep(o, cfg.region)]
    _emit(cfg, render(n, kept, highlight_radius=cfg.highlight_radius))
    return EXIT_OK


def cmd_bench(cfg: RunConfig) -> int:
    records = []
    for n in cfg.ns:
        orbits, t = _analyze_one(n, cfg.tol, cfg.threads, detail=False)
        s = summary_from_orbits(n, orbits)
        gen = t.get("generate_ext", 0.0) + t.get("generate_int", 0.0)
        records.append(
            {
                "n": n,
                "backend": kernels.BACKEND,
                "threads": cfg.threads,
                "points": s.N_total,
                "orbits": s.M_total,
                "time_ext": t.get("generate_ext", 0.0) + t.get("orbits_ext", 0.0),
                "time_int": t.get("generate_int", 0.0) + t.get("orbits_int", 0.0),
                "time_generate": gen,
                "time_total": t["total"],
                "generate_share": gen / t["total"] if t["total"] else 0.0,
                "points_per_second": s.N_total / t["total"] if t["total"] else 0.0,
            }
        )
    if cfg.fmt == "json":
        text = dump_json(records)
    elif cfg.fmt == "text":
        head = f"{'n':>4} {'points':>10} {'Time_ext':>9} {'Time_int':>9} {'Time':>9} {'gen%':>6} {'pts/s':>11}  backend"
        body = [
            f"{r['n']:>4} {r['points']:>10} {r['time_ext']:>9.4f} {r['time_int']:>9.4f} {r['time_total']:>9.4f} "
            f"{100 * r['generate_share']:>6.2f} {r['points_per_second']:>11.0f}  {r['backend']}"
            for r in records
        ]
        text = "\n".join([head] + body) + "\n"
    else:
        raise UsageError(f"bench does not support --format {cfg.fmt}")
    _emit(cfg, text)
    return EXIT_OK


COMMANDS = {
    "orbits": cmd_orbits,
    "summary": cmd_summary,
    "validate": cmd_validate,
    "plot": cmd_plot,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", required=True, help="polygon order: an integer or an inclusive range a..b")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: $SIMUORB_THREADS or all cores)")
    common.add_argument("--radius-tol", type=float, default=None, help="relative gap that separates two orbit radii")
    common.add_argument("--shift-tol", type=float, default=None, help="distance to an integer accepted as a rotation shift")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="simuorb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", parents=[common], help="list every orbit with its classes")
    p.add_argument("--region", choices=("interior", "exterior", "all"), default="all")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")

    p = sub.add_parser("summary", parents=[common], help="per-n point and orbit counts")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--check", action="store_true", help="compare against the embedded reference table")

    sub.add_parser("validate", parents=[common], help="compare against the brute-force oracle")

    p = sub.add_parser("plot", parents=[common], help="draw orbits and points as SVG")
    p.add_argument("--region", choices=("interior", "exterior", "all"), default="all")
    p.add_argument("--format", choices=("svg",), default="svg")
    p.add_argument("--highlight-radius", type=float, default=None, help="colour the point families of this orbit")

    p = sub.add_parser("bench", parents=[common], help="time the pipeline")
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, InvalidArgumentError, OracleRangeError) as exc:
        print(f"simuorb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AmbiguousGroupingError as exc:
        print(f"simuorb: ambiguous radius grouping: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except InvariantViolationError as exc:
        print(f"simuorb: invariant violated: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS


if __name__ == "__main__":
    sys.exit(main())
