"""Deleting and adding lines: deletion predictions for plus-one generated
arrangements, next-to-free decisions, dichotomy checks and the search for
plus-one generated arrangements that are not next to free.

Every verdict drawn from a numerical criterion is re-checked by performing the
surgery and classifying the result.
"""
from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field

from .arrangement import (
    Arrangement,
    ProjLine,
    h_value,
    random_line,
    sample_lines,
    singular_points,
    special_lines,
    t_value,
)
from .splitting import SplittingType, multi_exponents, splitting_type, ziegler_restriction
from .syzygy import (
    Classification,
    ClassificationError,
    Kind,
    PreconditionError,
    classify,
    jumping_line,
)

__all__ = [
    "CertificateMismatch",
    "delete",
    "add",
    "DeletionPrediction",
    "predict_deletion",
    "allowed_h_values",
    "allowed_h_check",
    "addition_splitting_check",
    "NTStatus",
    "NTFreeVerdict",
    "nt_criterion",
    "ntfree_decide",
    "ntfree_bruteforce",
    "minus_candidates",
    "abe_dichotomy_check",
    "HuntConfig",
    "Finding",
    "HuntReport",
    "hunt_counterexample",
]


class CertificateMismatch(RuntimeError):
    """A criterion-based verdict disagrees with the recomputed classification."""


def delete(A: Arrangement, l: ProjLine) -> Arrangement:
    if l not in A:
        raise ValueError(f"{l} is not a line of the arrangement")
    return Arrangement(tuple(m for m in A.lines if m != l))


def add(A: Arrangement, H: ProjLine) -> Arrangement:
    if H in A:
        raise ValueError(f"{H} is already a line of the arrangement")
    return Arrangement((*A.lines, H))


# --------------------------------------------------------------- deletion


@dataclass(frozen=True)
class DeletionPrediction:
    line: ProjLine
    h: int
    predicted: Classification | None  # None: no prediction for this h
    rule: str = ""


def _require_pog(A: Arrangement) -> Classification:
    cls = classify(A)
    if not cls.is_pog:
        raise PreconditionError(f"arrangement is {cls}, not plus-one generated")
    return cls


def predict_deletion(A: Arrangement, l: ProjLine) -> DeletionPrediction:
    a, b, d = _require_pog(A).abd
    if l not in A:
        raise ValueError(f"{l} is not a line of the arrangement")
    h = h_value(A, l)
    if h == d + 1:
        return DeletionPrediction(l, h, Classification.free(a - 1, b - 1), "h=d+1")
    if h == a + 1 and a < d:
        return DeletionPrediction(l, h, Classification.pog(a, b - 1, d - 1), "h=a+1")
    if h == b + 1 and d > b:
        return DeletionPrediction(l, h, Classification.pog(a - 1, b, d - 1), "h=b+1")
    return DeletionPrediction(l, h, None, "none")


def allowed_h_values(a: int, b: int, d: int, h: int) -> bool:
    return h < a or h in (a, a + 1, b, b + 1, d + 1)


def allowed_h_check(A: Arrangement) -> list[tuple[ProjLine, int]]:
    """Lines of a POG arrangement whose h is outside the allowed list (expected: none)."""
    a, b, d = _require_pog(A).abd
    return [(l, h) for l in A.lines if not allowed_h_values(a, b, d, h := h_value(A, l))]


# --------------------------------------------------------------- addition


def addition_splitting_check(A: Arrangement, H: ProjLine, l: ProjLine) -> bool:
    """Whether the splitting type on l grows by one in exactly one component
    when H is added to A."""
    if H in A:
        raise ValueError(f"{H} is already a line of the arrangement")
    if l == H:
        raise ValueError("l = H is exempt: the increment pattern does not hold on the added line")
    B = add(A, H)
    old, _ = splitting_type(A, l)
    new, _ = splitting_type(B, l)
    return new in (SplittingType(old.alpha + 1, old.beta), SplittingType(old.alpha, old.beta + 1))


# --------------------------------------------------------------- NT-free


class NTStatus(enum.Enum):
    MINUS = "NTFreeMinus"
    PLUS = "NTFreePlus"
    BOTH = "NTFreePlusAndMinus"
    NOT = "NotNTFree"
    INDETERMINATE = "Indeterminate"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class NTFreeVerdict:
    status: NTStatus
    witness: ProjLine | None = None
    certificate: Classification | None = None
    plus_witnesses: tuple[tuple[ProjLine, Classification], ...] = ()
    minus_witnesses: tuple[tuple[ProjLine, Classification], ...] = ()
    note: str = ""


def nt_criterion(n: int, d: int, h: int, l0_in_A: bool) -> bool:
    """Numerical next-to-free test for POG with d > b, given h = h(l0)."""
    return h == d + 1 if l0_in_A else d == n - h


def ntfree_decide(A: Arrangement) -> NTFreeVerdict:
    """Decide next-to-freeness of a POG arrangement with d > b from l0 alone,
    then confirm by classifying A with l0 added or removed."""
    cls = _require_pog(A)
    a, b, d = cls.abd
    if d <= b:
        raise PreconditionError(f"{cls}: needs level d > b")
    l0 = jumping_line(A)
    h = h_value(A, l0)
    holds = nt_criterion(A.n, d, h, l0 in A)
    if l0 in A:
        cert = classify(delete(A, l0))
        expected = Classification.free(a - 1, b - 1)
        status = NTStatus.PLUS
        criterion = f"h(l0) = {h}, d + 1 = {d + 1}"
        plus = ((l0, cert),) if holds else ()
        minus = ()
    else:
        cert = classify(add(A, l0))
        expected = Classification.free(a, b)
        status = NTStatus.MINUS
        criterion = f"|A| - h(l0) = {A.n - h}, d = {d}"
        plus = ()
        minus = ((l0, cert),) if holds else ()
    if holds and cert != expected:
        raise CertificateMismatch(f"{criterion} predicts {expected} but surgery gives {cert}")
    if not holds and cert.is_free:
        raise CertificateMismatch(f"{criterion} predicts not free but surgery gives {cert}")
    if holds:
        return NTFreeVerdict(status, l0, cert, plus, minus, criterion)
    return NTFreeVerdict(NTStatus.NOT, l0, cert, note=criterion)


def _could_be_free(B: Arrangement, H: ProjLine) -> bool:
    """Cheap necessary condition for freeness of B.

    If B is free with exponents (e1, e2), its characteristic polynomial
    factors as (t - 1)(t - e1)(t - e2), so e1*e2 = b2 - n + 1 with
    b2 = sum(m_p - 1), and the Ziegler restriction onto H has exponents
    (e1, e2).
    """
    e1, e2 = multi_exponents(ziegler_restriction(B, H))
    b2 = sum(sp.multiplicity - 1 for sp in singular_points(B))
    return e1 * e2 == b2 - B.n + 1


def minus_candidates(A: Arrangement) -> list[ProjLine]:
    """Lines through at least two singular points, plus the relation line V(c_d)."""
    cands = special_lines(A)
    cls = classify(A)
    if cls.is_pog:
        l0 = ProjLine(*cls.presentation.relation.c_d.vector())
        if l0 not in A and l0 not in cands:
            cands.append(l0)
    return cands


def ntfree_bruteforce(A: Arrangement) -> NTFreeVerdict:
    """Plus side exactly (every deletion is classified); minus side over
    ``minus_candidates`` only, so a miss there is reported as Indeterminate."""
    cls = classify(A)
    if cls.is_free:
        return NTFreeVerdict(NTStatus.NOT_APPLICABLE, note="input is free")
    if not cls.is_pog:
        return NTFreeVerdict(
            NTStatus.NOT, note=f"{cls}: next-to-free arrangements are free or plus-one generated"
        )
    plus = []
    if A.n > 1:
        for l in A.lines:
            c = classify(delete(A, l))
            if c.is_free:
                plus.append((l, c))
    minus = []
    for H in minus_candidates(A):
        B = add(A, H)
        if not _could_be_free(B, H):
            continue
        c = classify(B)
        if c.is_free:
            minus.append((H, c))
    if plus and minus:
        status = NTStatus.BOTH
    elif plus:
        status = NTStatus.PLUS
    elif minus:
        status = NTStatus.MINUS
    else:
        return NTFreeVerdict(
            NTStatus.INDETERMINATE,
            note="no deletion is free and no candidate addition is free; the minus side is not exhaustive",
        )
    witness, cert = (plus or minus)[0]
    return NTFreeVerdict(status, witness, cert, tuple(plus), tuple(minus))


def abe_dichotomy_check(A: Arrangement, additions: int = 20, seed: int = 0) -> list[tuple[str, ProjLine, Classification]]:
    """For free A: every deletion and every sampled addition is free or POG.

    Returns the violations (expected: none).  Half of the added lines pass
    through two singular points of A, the rest are pseudo-random.
    """
    cls = classify(A)
    if not cls.is_free:
        raise PreconditionError(f"arrangement is {cls}, not free")
    bad = []
    if A.n > 1:
        for l in A.lines:
            c = classify(delete(A, l))
            if not (c.is_free or c.is_pog):
                bad.append(("delete", l, c))
    rng = random.Random(seed)
    special = special_lines(A)
    rng.shuffle(special)
    chosen = special[: additions // 2]
    chosen += sample_lines(A, additions - len(chosen), seed=seed, height=4, avoid_singular=False, exclude=chosen)
    for H in chosen:
        c = classify(add(A, H))
        if not (c.is_free or c.is_pog):
            bad.append(("add", H, c))
    return bad


# ------------------------------------------------------------------- hunt


@dataclass(frozen=True)
class HuntConfig:
    n_min: int = 4
    n_max: int = 6
    height: int = 3
    count: int = 100
    seed: int = 0


@dataclass
class Finding:
    index: int
    lines: tuple[ProjLine, ...]
    classification: str
    kind: str  # "not-nt-free", "allowed-h", "t-mismatch" or "classification-error"
    detail: str
    l0: ProjLine | None = None
    certificate: str | None = None


@dataclass
class HuntReport:
    config: HuntConfig
    stats: Counter = field(default_factory=Counter)
    findings: list[Finding] = field(default_factory=list)


def _sample_arrangement(cfg: HuntConfig, index: int) -> Arrangement:
    rng = random.Random(f"hunt:{cfg.seed}:{index}")
    n = rng.randint(cfg.n_min, cfg.n_max)
    lines: list[ProjLine] = []
    while len(lines) < n:
        l = random_line(rng, cfg.height)
        if l not in lines:
            lines.append(l)
    return Arrangement(tuple(lines))


def hunt_counterexample(cfg: HuntConfig, corpus: list[Arrangement] | None = None) -> HuntReport:
    """Look for POG arrangements with d > b that are not next to free.

    Scans ``corpus`` if given, otherwise ``cfg.count`` pseudo-random
    arrangements seeded per index.  Every POG instance with d > b is also
    checked against the allowed-h list and t = n - h - 1.
    """
    report = HuntReport(cfg)
    if corpus is not None:
        samples = list(enumerate(corpus))
    else:
        samples = [(i, _sample_arrangement(cfg, i)) for i in range(cfg.count)]
    for i, A in samples:
        report.stats["samples"] += 1
        try:
            cls = classify(A)
        except ClassificationError as exc:
            report.stats["classification-errors"] += 1
            report.findings.append(Finding(i, A.lines, "?", "classification-error", str(exc)))
            continue
        report.stats[cls.kind.value] += 1
        if cls.kind is not Kind.POG:
            continue
        a, b, d = cls.abd
        for l in A.lines:
            h = h_value(A, l)
            if t_value(A, l) != A.n - h - 1:
                report.findings.append(Finding(i, A.lines, str(cls), "t-mismatch", f"line {l}"))
            if not allowed_h_values(a, b, d, h):
                report.findings.append(Finding(i, A.lines, str(cls), "allowed-h", f"line {l} has h = {h}"))
        l0 = jumping_line(A)
        report.stats["l0-in-A" if l0 in A else "l0-not-in-A"] += 1
        verdict = ntfree_decide(A)
        if verdict.status is NTStatus.NOT:
            report.stats["not-nt-free"] += 1
            report.findings.append(
                Finding(i, A.lines, str(cls), "not-nt-free", verdict.note, l0, str(verdict.certificate))
            )
        else:
            report.stats["nt-free"] += 1
    return report
