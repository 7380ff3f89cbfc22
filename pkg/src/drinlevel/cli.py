"""Command-line driver.

    drinlevel {torsion,equivalence,tangent,isogeny} [--config PATH] [--out PATH]
              [--csv PATH] [--max-card N] [--jobs N]

Without ``--config`` each command runs its built-in default (see config.py).  The JSON output has
a ``payload`` (deterministic: same config, same bytes) and a separate
``timing`` section.  Exit status: 0 all cases pass, 1 some case failed,
2 config or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from ._kernels import BACKEND
from .bounds import BoundExceeded, Bounds
from .config import COMMANDS, Config, ConfigError, load_config
from .experiments import RUNNERS, apply_bounds

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _run_one(args: tuple[str, dict, int, Bounds]) -> tuple[dict, float]:
    command, case, index, bounds = args
    apply_bounds(bounds)
    t0 = time.perf_counter()
    try:
        rec = RUNNERS[command](case, f"cases[{index}]")
    except BoundExceeded as exc:  # raised before a runner could record anything
        rec = {"status": "skipped", "reason": str(exc)}
    return rec, time.perf_counter() - t0


def run_cases(command: str, cfg: Config, jobs: int = 1) -> tuple[list[dict], list[float]]:
    """Records in config order, whatever order the workers finish in."""
    work = [(command, c, i, cfg.bounds) for i, c in enumerate(cfg.cases)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_run_one(w) for w in work]
    return [r for r, _ in results], [t for _, t in results]


def summarize(records: Sequence[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in records:
        counts[r["status"]] += 1
    failed = [i for i, r in enumerate(records) if r["status"] == "fail"]
    return {"cases": len(records), **counts, "failed_cases": failed}


def payload_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, ensure_ascii=False)


def write_csv(path: str, records: Sequence[dict]) -> None:
    """One row per case; nested values are JSON-encoded into their cell."""
    columns: list[str] = ["index"]
    for r in records:
        for key in r:
            if key not in columns:
                columns.append(key)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for i, r in enumerate(records):
            row = [i]
            for key in columns[1:]:
                v = r.get(key, "")
                row.append(json.dumps(v, separators=(",", ":")) if isinstance(v, (dict, list)) else v)
            w.writerow(row)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinlevel", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "torsion": "division polynomials, point counts and module structure of E[pi^n]",
        "equivalence": "enumerate level structures under both definitions and compare",
        "tangent": "deformation classes over l[eps] against |l|^(d-1)",
        "isogeny": "quotient isogenies by E[pi^n] and their defining identity",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", help="JSON config (default: the built-in grid)")
        p.add_argument("--out", help="write the JSON evidence record here")
        p.add_argument("--csv", help="also write one CSV row per case")
        p.add_argument("--max-card", type=int, help="enumeration bound (ring and candidate sizes)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --help
        return int(exc.code or 0)
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config, args.command)
        if args.max_card is not None:
            if args.max_card < 1:
                raise ConfigError("--max-card must be positive")
            cfg.bounds.max_card = args.max_card
        t0 = time.perf_counter()
        records, times = run_cases(args.command, cfg, args.jobs)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    summary = summarize(records)
    payload = {
        "command": args.command,
        "config": cfg.raw,
        "bounds": vars(cfg.bounds),
        "summary": summary,
        "records": records,
    }
    out = {
        "payload": payload,
        "timing": {"total_seconds": round(time.perf_counter() - t0, 4), "backend": BACKEND,
                   "jobs": args.jobs, "per_case_seconds": [round(t, 4) for t in times]},
    }
    text = json.dumps(out, indent=2, ensure_ascii=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.csv:
        write_csv(args.csv, records)

    print(f"{args.command}: {summary['cases']} cases, {summary['pass']} pass, "
          f"{summary['fail']} fail, {summary['skipped']} skipped "
          f"({out['timing']['total_seconds']:.1f}s, {BACKEND} kernels)")
    for i in summary["failed_cases"]:
        r = records[i]
        print(f"  FAIL cases[{i}]: {r.get('base')} e_T = {r.get('e_T')} {r.get('ideal', r.get('pi', ''))}"
              f" witness={r.get('witness')}")
    return EXIT_FAIL if summary["fail"] else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
