#!/usr/bin/env python3
"""Search pseudo-random arrangements for plus-one generated examples with
d > b that are not next to free.  Findings are dumped verbatim as JSON."""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict
from pathlib import Path

from pogarr.surgery import HuntConfig, hunt_counterexample


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--height", type=int, default=4)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, help="write the report as JSON here")
    args = ap.parse_args()

    cfg = HuntConfig(args.n_min, args.n_max, args.height, args.count, args.seed)
    t0 = time.perf_counter()
    report = hunt_counterexample(cfg)
    elapsed = time.perf_counter() - t0

    print(f"config: {cfg}")
    for key, val in sorted(report.stats.items()):
        print(f"  {key:<22} {val}")
    print(f"findings: {len(report.findings)}  ({elapsed:.1f}s)")
    for f in report.findings:
        print(f"  #{f.index} {f.kind} {f.classification}: {f.detail}")
        print(f"     lines: {[l.coords for l in f.lines]}")

    if args.out:
        doc = {
            "config": asdict(cfg),
            "stats": dict(sorted(report.stats.items())),
            "findings": [
                {
                    "index": f.index,
                    "lines": [list(l.coords) for l in f.lines],
                    "classification": f.classification,
                    "kind": f.kind,
                    "detail": f.detail,
                    "l0": list(f.l0.coords) if f.l0 else None,
                    "certificate": f.certificate,
                }
                for f in report.findings
            ],
        }
        args.out.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 1 if report.findings else 0


if __name__ == "__main__":
    raise SystemExit(main())
