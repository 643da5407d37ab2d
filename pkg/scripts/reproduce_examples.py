#!/usr/bin/env python3
"""Recompute the worked examples: classifications, the deletion table,
splitting types on the distinguished lines and next-to-free verdicts."""
from __future__ import annotations

from pogarr.arrangement import ProjLine, h_value
from pogarr.corpus import CORPUS
from pogarr.splitting import splitting_type
from pogarr.surgery import add, delete, ntfree_bruteforce, predict_deletion
from pogarr.syzygy import Kind, classify, jumping_line, z_scheme


def show_pog(name: str) -> None:
    A = CORPUS[name]
    cls = classify(A)
    print(f"{name}: {cls}  hilbert={list(cls.presentation.hilbert)}")
    if cls.kind is Kind.POG:
        l0, g = z_scheme(A)
        st, route = splitting_type(A, l0)
        print(f"  l0 = {l0}  (in A: {l0 in A}, h = {h_value(A, l0)})  g = {g}  splitting on l0 = {st} via {route}")
    if cls.is_pog:
        for l in A.lines:
            p = predict_deletion(A, l)
            actual = classify(delete(A, l))
            print(f"  delete {str(l):<14} h={p.h}  predicted={str(p.predicted or '-'):<16} actual={actual}")
    v = ntfree_bruteforce(A)
    print(f"  next to free: {v.status.value}")
    for l, c in v.plus_witnesses:
        print(f"    A - {l} = {c}")
    for l, c in v.minus_witnesses:
        print(f"    A + {l} = {c}")


def main() -> None:
    for name in ("paper-2.10", "paper-3.6", "paper-3.3-p3q3-A"):
        show_pog(name)
        print()
    B = CORPUS["paper-3.3-p3q3-B"]
    x = ProjLine(1, 0, 0)
    print(f"paper-3.3-p3q3-B: {classify(B)}  splitting on x: {splitting_type(B, x)[0]}")
    print(f"  B - x = {classify(delete(B, x))}, jumping line {jumping_line(delete(B, x))}")
    print(f"paper-3.6 + (0,2,1): {classify(add(CORPUS['paper-3.6'], ProjLine(0, 2, 1)))}")


if __name__ == "__main__":
    main()
