#!/usr/bin/env python3
"""Compare splitting-type routes on many lines of the plus-one generated
examples: Ziegler vs Z-incidence vs resolution on members, direct vs Z vs
resolution on generic lines, Z vs resolution on lines through singular points."""
from __future__ import annotations

import argparse
from collections import Counter

from pogarr.arrangement import sample_lines, special_lines
from pogarr.corpus import CORPUS
from pogarr.splitting import (
    multi_exponents,
    pog_splitting_via_Z,
    splitting_direct,
    splitting_from_resolution,
    ziegler_restriction,
)
from pogarr.syzygy import Kind, classify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--generic", type=int, default=100)
    ap.add_argument("--special", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    disagreements = 0
    for name, A in CORPUS.items():
        if classify(A).kind is not Kind.POG:
            continue
        tally = Counter()
        for l in A.lines:
            types = {multi_exponents(ziegler_restriction(A, l)), pog_splitting_via_Z(A, l), splitting_from_resolution(A, l)}
            tally["member" if len(types) == 1 else "member-DISAGREE"] += 1
        for l in sample_lines(A, args.generic, seed=args.seed):
            types = {splitting_direct(A, l), pog_splitting_via_Z(A, l), splitting_from_resolution(A, l)}
            tally["generic" if len(types) == 1 else "generic-DISAGREE"] += 1
        for l in special_lines(A)[: args.special]:
            types = {pog_splitting_via_Z(A, l), splitting_from_resolution(A, l)}
            tally["special" if len(types) == 1 else "special-DISAGREE"] += 1
        disagreements += sum(v for k, v in tally.items() if k.endswith("DISAGREE"))
        print(f"{name:<18} {classify(A)}  {dict(sorted(tally.items()))}")
    print(f"disagreements: {disagreements}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
