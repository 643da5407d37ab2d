"""Command-line interface.

    pogarr classify    (FILE | --example NAME) [--json]
    pogarr splitting   (FILE | --example NAME) [--line L ...] [--all] [--sample N]
    pogarr ntfree      (FILE | --example NAME) [--method auto|criterion|bruteforce]
    pogarr delete-scan (FILE | --example NAME)
    pogarr hunt        [--n-min] [--n-max] [--height] [--count] [--seed] [--corpus]
    pogarr examples

With --json a single document is written to stdout:
``{"command", "arrangement", "result"}``.  Keys are sorted, rationals are
"num/den" strings, and no timing is included, so repeated runs are
byte-identical.  Timing goes to stderr.

Exit status: 0 success, 1 input error, 2 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .arrangement import (
    Arrangement,
    ParseError,
    ProjLine,
    h_value,
    parse_arrangement_text,
    read_arrangement,
    sample_lines,
    singular_points,
)
from .corpus import CORPUS
from .exactalg import Form
from .splitting import UnsupportedLine, splitting_type
from .surgery import (
    CertificateMismatch,
    HuntConfig,
    NTStatus,
    delete,
    hunt_counterexample,
    ntfree_bruteforce,
    ntfree_decide,
    predict_deletion,
)
from .syzygy import Classification, ClassificationError, Kind, PreconditionError, classify

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    pass


# ------------------------------------------------------------ serialization


def rational(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def form_json(F: Form) -> dict:
    return {
        "degree": F.degree,
        "terms": [[list(e), rational(c)] for e, c in sorted(F.items(), reverse=True)],
        "text": str(F),
    }


def line_json(l: ProjLine) -> dict:
    return {"coords": list(l.coords), "form": str(l)}


def classification_json(cls: Classification) -> dict:
    out = {
        "variant": cls.kind.value,
        "label": str(cls),
        "exponents": list(cls.exponents),
        "level": cls.level,
        "note": cls.note,
    }
    pres = cls.presentation
    if pres is not None:
        out["generator_degrees"] = list(pres.generator_degrees)
        out["hilbert"] = list(pres.hilbert)
        out["k_max"] = pres.k_max
    return out


def arrangement_json(A: Arrangement, source: str) -> dict:
    return {"source": source, "n": A.n, "lines": [line_json(l) for l in A.lines]}


# -------------------------------------------------------------------- input


def parse_line_arg(text: str) -> ProjLine:
    try:
        arr = parse_arrangement_text(text.replace(",", " "))
    except ParseError as exc:
        raise InputError(f"bad line {text!r}: {exc}") from None
    if arr.n != 1:
        raise InputError(f"expected a single line, got {text!r}")
    return arr.lines[0]


def load(args) -> tuple[Arrangement, str]:
    if args.example and args.file:
        raise InputError("give either FILE or --example, not both")
    if args.example:
        if args.example not in CORPUS:
            raise InputError(f"unknown example {args.example!r}; known: {', '.join(CORPUS)}")
        return CORPUS[args.example], f"example:{args.example}"
    if not args.file:
        raise InputError("no input: give FILE or --example NAME")
    try:
        return read_arrangement(args.file), args.file
    except ParseError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    except OSError as exc:
        raise InputError(str(exc)) from None


# ----------------------------------------------------------------- commands


def cmd_classify(args):
    A, source = load(args)
    cls = classify(A)
    result = {"classification": classification_json(cls)}
    lines = [f"classification: {cls}"]
    if cls.presentation is not None:
        lines.append(f"generator degrees: {list(cls.presentation.generator_degrees)}")
        lines.append(f"hilbert (k=0..{cls.presentation.k_max}): {list(cls.presentation.hilbert)}")
    if cls.is_pog:
        rel = cls.presentation.relation
        result["relation"] = {
            "c_a": form_json(rel.c_a),
            "c_b": form_json(rel.c_b),
            "c_d": form_json(rel.c_d),
        }
        l0 = ProjLine(*rel.c_d.vector())
        result["l0"] = line_json(l0)
        result["l0_unique"] = cls.kind is Kind.POG
        result["z_curve_degree"] = rel.c_b.degree
        tag = "" if cls.kind is Kind.POG else " (candidate; not unique when d = b)"
        lines.append(f"l0: {l0}{tag}")
        lines.append(f"deg g: {rel.c_b.degree}")
    if cls.note and cls.kind is Kind.OTHER:
        lines.append(f"note: {cls.note}")
    return A, source, result, lines


def cmd_splitting(args):
    A, source = load(args)
    targets: list[tuple[ProjLine, str]] = []
    for text in args.line or []:
        targets.append((parse_line_arg(text), "given"))
    if args.all:
        targets += [(l, "member") for l in A.lines]
    if args.sample:
        seen = {l for l, _ in targets}
        targets += [(l, "sample") for l in sample_lines(A, args.sample, seed=args.seed, exclude=seen)]
    if not targets:
        targets = [(l, "member") for l in A.lines]
    rows, lines = [], []
    for l, origin in targets:
        row = {"line": line_json(l), "origin": origin, "member": l in A}
        try:
            st, route = splitting_type(A, l)
            row.update(route=route, splitting=[st.alpha, st.beta], error=None)
            lines.append(f"{str(l):<24} {origin:<7} {route:<11} {st}")
        except (UnsupportedLine, PreconditionError) as exc:
            row.update(route=None, splitting=None, error=str(exc))
            lines.append(f"{str(l):<24} {origin:<7} {'-':<11} unsupported: {exc}")
        rows.append(row)
    return A, source, {"rows": rows}, lines


def _witness_json(pairs):
    return [{"line": line_json(l), "certificate": str(c)} for l, c in pairs]


def cmd_ntfree(args):
    A, source = load(args)
    cls = classify(A)
    method = args.method
    if method == "auto":
        method = "criterion" if cls.kind is Kind.POG else "bruteforce"
    try:
        v = ntfree_decide(A) if method == "criterion" else ntfree_bruteforce(A)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    result = {
        "method": method,
        "classification": str(cls),
        "status": v.status.value,
        "witness": line_json(v.witness) if v.witness is not None else None,
        "certificate": str(v.certificate) if v.certificate is not None else None,
        "plus_witnesses": _witness_json(v.plus_witnesses),
        "minus_witnesses": _witness_json(v.minus_witnesses),
        "note": v.note,
    }
    lines = [f"classification: {cls}", f"method: {method}", f"verdict: {v.status.value}"]
    if v.status in (NTStatus.MINUS, NTStatus.PLUS, NTStatus.BOTH):
        lines.append(f"witness: {v.witness}")
        lines.append(f"certificate: {v.certificate}")
    for l, c in v.plus_witnesses:
        lines.append(f"  delete {l} -> {c}")
    for l, c in v.minus_witnesses:
        lines.append(f"  add {l} -> {c}")
    if v.note:
        lines.append(f"note: {v.note}")
    return A, source, result, lines


def cmd_delete_scan(args):
    A, source = load(args)
    if A.n < 2:
        raise InputError("delete-scan needs at least two lines")
    cls = classify(A)
    rows, lines = [], [f"classification: {cls}"]
    for l in A.lines:
        actual = classify(delete(A, l))
        if cls.is_pog:
            p = predict_deletion(A, l)
            predicted = p.predicted
            h = p.h
        else:
            predicted, h = None, h_value(A, l)
        match = None if predicted is None else predicted == actual
        rows.append(
            {
                "line": line_json(l),
                "h": h,
                "predicted": str(predicted) if predicted else None,
                "actual": str(actual),
                "match": match,
            }
        )
        flag = {None: "-", True: "ok", False: "MISMATCH"}[match]
        lines.append(f"{str(l):<24} h={h:<3} predicted={str(predicted or 'Unknown'):<16} actual={str(actual):<16} {flag}")
    if any(r["match"] is False for r in rows):
        raise CertificateMismatch("deletion prediction disagrees with the computed classification:\n" + "\n".join(lines))
    return A, source, {"classification": str(cls), "rows": rows}, lines


def cmd_hunt(args):
    cfg = HuntConfig(n_min=args.n_min, n_max=args.n_max, height=args.height, count=args.count, seed=args.seed)
    if cfg.n_min < 1 or cfg.n_min > cfg.n_max:
        raise InputError("need 1 <= n-min <= n-max")
    corpus = list(CORPUS.values()) if args.corpus else None
    report = hunt_counterexample(cfg, corpus)
    findings = [
        {
            "index": f.index,
            "lines": [line_json(l) for l in f.lines],
            "classification": f.classification,
            "kind": f.kind,
            "detail": f.detail,
            "l0": line_json(f.l0) if f.l0 is not None else None,
            "certificate": f.certificate,
        }
        for f in report.findings
    ]
    result = {
        "config": {
            "n_min": cfg.n_min,
            "n_max": cfg.n_max,
            "height": cfg.height,
            "count": cfg.count,
            "seed": cfg.seed,
            "corpus": bool(args.corpus),
        },
        "stats": dict(sorted(report.stats.items())),
        "findings": findings,
    }
    lines = [f"{k}: {v}" for k, v in sorted(report.stats.items())]
    lines.append(f"findings: {len(findings)}")
    for f in report.findings:
        lines.append(f"  #{f.index} {f.kind}: {f.classification} {f.detail} lines={[l.coords for l in f.lines]}")
    return None, None, result, lines


def cmd_examples(args):
    result = {name: [list(l.coords) for l in A.lines] for name, A in CORPUS.items()}
    lines = [f"{name:<20} {A}" for name, A in CORPUS.items()]
    return None, None, {"examples": result}, lines


# ---------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pogarr", description="Exact computations with projective line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="write one JSON document to stdout")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("file", nargs="?", help="arrangement file: one line per row, 'a b c' or a linear form")
    src.add_argument("--example", metavar="NAME", help="use a built-in example (see 'pogarr examples')")

    sub.add_parser("classify", parents=[common, src], help="Free / NearlyFree / POG / Other")

    sp = sub.add_parser("splitting", parents=[common, src], help="splitting types on lines")
    sp.add_argument("--line", action="append", metavar="L", help="a line, e.g. 'x+4y+z' or '1 4 1' (repeatable)")
    sp.add_argument("--all", action="store_true", help="every line of the arrangement")
    sp.add_argument("--sample", type=int, default=0, metavar="N", help="N pseudo-random lines avoiding Sing(A)")
    sp.add_argument("--seed", type=int, default=0)

    nt = sub.add_parser("ntfree", parents=[common, src], help="next-to-free decision")
    nt.add_argument(
        "--method",
        choices=("auto", "criterion", "bruteforce"),
        default="auto",
        help="criterion: l0-based test (POG with d > b); bruteforce: deletions and candidate additions",
    )

    sub.add_parser("delete-scan", parents=[common, src], help="h, prediction and classification per deletion")

    hp = sub.add_parser("hunt", parents=[common], help="search for POG arrangements that are not next to free")
    defaults = HuntConfig()
    hp.add_argument("--n-min", type=int, default=defaults.n_min)
    hp.add_argument("--n-max", type=int, default=defaults.n_max)
    hp.add_argument("--height", type=int, default=defaults.height, help="coefficient bound")
    hp.add_argument("--count", type=int, default=defaults.count)
    hp.add_argument("--seed", type=int, default=defaults.seed)
    hp.add_argument("--corpus", action="store_true", help="scan the built-in examples instead of sampling")

    sub.add_parser("examples", parents=[common], help="list built-in examples")
    return p


COMMANDS = {
    "classify": cmd_classify,
    "splitting": cmd_splitting,
    "ntfree": cmd_ntfree,
    "delete-scan": cmd_delete_scan,
    "hunt": cmd_hunt,
    "examples": cmd_examples,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        A, source, result, lines = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (CertificateMismatch, ClassificationError) as exc:
        print(f"internal inconsistency: {exc}", file=err)
        return EXIT_INTERNAL
    elapsed = time.perf_counter() - t0

    if args.json:
        doc = {
            "command": args.command,
            "arrangement": arrangement_json(A, source) if A is not None else None,
            "result": result,
        }
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        if A is not None:
            print(f"arrangement: {source}, n = {A.n}, {len(singular_points(A)) if A.n > 1 else 0} singular points", file=out)
        for line in lines:
            print(line, file=out)
    print(f"[{args.command}] {elapsed:.2f}s", file=err)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
