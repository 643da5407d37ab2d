"""Projective line arrangements over Q: parsing, normalisation and incidences."""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .exactalg import TernaryForm

__all__ = [
    "ProjLine",
    "ProjPoint",
    "Arrangement",
    "SingularPoint",
    "ParseError",
    "parse_linear_form",
    "parse_product",
    "parse_arrangement_text",
    "read_arrangement",
    "defining_polynomial",
    "intersect",
    "join",
    "singular_points",
    "h_value",
    "t_value",
    "avoids_singular_points",
    "random_line",
    "sample_lines",
    "special_lines",
]


class ParseError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def _normalize(coords: Sequence) -> tuple[int, int, int]:
    vals = [Fraction(v) for v in coords]
    if len(vals) != 3:
        raise ValueError("expected three homogeneous coordinates")
    if not any(vals):
        raise ValueError("all coordinates are zero")
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = math.gcd(*ints)
    if next(v for v in ints if v) < 0:
        g = -g
    return tuple(v // g for v in ints)  # type: ignore[return-value]


@dataclass(frozen=True, order=True)
class _Triple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = _normalize((self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c))

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


class ProjLine(_Triple):
    """Line a*x + b*y + c*z = 0 stored by its primitive integer coefficients,
    first nonzero coefficient positive."""

    def contains(self, p: "ProjPoint") -> bool:
        return self.a * p.a + self.b * p.b + self.c * p.c == 0

    def form(self) -> TernaryForm:
        return TernaryForm.linear(self.a, self.b, self.c)

    def __str__(self):
        return str(self.form())

    def __repr__(self):
        return f"ProjLine({self.a}, {self.b}, {self.c})"


class ProjPoint(_Triple):
    """Point (a : b : c) with the same normalisation as ProjLine."""

    def __repr__(self):
        return f"ProjPoint({self.a}, {self.b}, {self.c})"

    def __str__(self):
        return f"({self.a}:{self.b}:{self.c})"


def _cross(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    if l1 == l2:
        raise ValueError(f"lines coincide: {l1!r}")
    return ProjPoint(*_cross(tuple(l1), tuple(l2)))


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    if p == q:
        raise ValueError(f"points coincide: {p!r}")
    return ProjLine(*_cross(tuple(p), tuple(q)))


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(.))")


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is not None and not tok.isspace():
            out.append(tok)
        pos = m.end()
    return out


def _parse_linear_coeffs(text: str) -> list[Fraction]:
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty expression")
    coeffs = {"x": Fraction(0), "y": Fraction(0), "z": Fraction(0)}
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def number() -> Fraction:
        nonlocal i
        if peek() == "(":
            i += 1
            val = number()
            if peek() != ")":
                raise ParseError(f"expected ')' in {text!r}")
            i += 1
            return val
        tok = peek()
        if tok is None or not tok.isdigit():
            raise ParseError(f"expected a number in {text!r}")
        i += 1
        val = Fraction(int(tok))
        if peek() == "/" and i + 1 < len(toks) and toks[i + 1].isdigit():
            den = int(toks[i + 1])
            if den == 0:
                raise ParseError("division by zero")
            i += 2
            val /= den
        return val

    first = True
    while i < len(toks):
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if toks[i] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at {peek()!r} in {text!r}")
        first = False
        coef = Fraction(1)
        if peek() is not None and (peek().isdigit() or peek() == "("):
            coef = number()
            if peek() == "*":
                i += 1
        var = peek()
        if var not in coeffs:
            if var is None or var in ("+", "-"):
                raise ParseError(f"constant term in {text!r}")
            raise ParseError(f"unexpected {var!r} in {text!r}")
        i += 1
        if peek() == "/":
            i += 1
            if peek() is None or not peek().isdigit():
                raise ParseError(f"expected a denominator in {text!r}")
            den = int(toks[i])
            if den == 0:
                raise ParseError("division by zero")
            coef /= den
            i += 1
        if peek() in ("x", "y", "z", "^", "*", "("):
            raise ParseError(f"nonlinear term in {text!r}")
        coeffs[var] += sign * coef
    vals = [coeffs["x"], coeffs["y"], coeffs["z"]]
    if not any(vals):
        raise ParseError(f"zero linear form {text!r}")
    return vals


def parse_linear_form(text: str) -> ProjLine:
    """Parse e.g. ``"x+4y+z"``, ``"y + z/2"``, ``"2x - 3*y"`` into a normalised line."""
    return ProjLine(*_parse_linear_coeffs(text))


def parse_product(text: str) -> list[ProjLine]:
    """Split a product such as ``"xyz(x+y)(y+z)=0"`` into its linear factors."""
    text = text.replace(" ", "")
    if text.endswith("=0"):
        text = text[:-2]
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "xyz":
            out.append(ProjLine(*(1 if v == ch else 0 for v in "xyz")))
            i += 1
        elif ch == "(":
            j = text.find(")", i)
            if j < 0:
                raise ParseError(f"unbalanced parenthesis in {text!r}")
            out.append(parse_linear_form(text[i + 1 : j]))
            i = j + 1
        elif ch == "*":
            i += 1
        else:
            raise ParseError(f"unexpected {ch!r} in product {text!r}")
    return out


# ------------------------------------------------------------- arrangements


@dataclass(frozen=True)
class Arrangement:
    """Finite set of distinct lines, kept in input order."""

    lines: tuple[ProjLine, ...]

    def __post_init__(self):
        lines = tuple(self.lines)
        if not lines:
            raise ValueError("an arrangement needs at least one line")
        if len(set(lines)) != len(lines):
            seen = set()
            dup = next(l for l in lines if l in seen or seen.add(l))
            raise ValueError(f"duplicate line {dup}")
        object.__setattr__(self, "lines", lines)

    @classmethod
    def of(cls, *items) -> "Arrangement":
        """Build from ProjLines, coefficient triples or linear-form strings."""
        lines = []
        for it in items:
            if isinstance(it, ProjLine):
                lines.append(it)
            elif isinstance(it, str):
                lines.append(parse_linear_form(it))
            else:
                lines.append(ProjLine(*it))
        return cls(tuple(lines))

    @classmethod
    def from_product(cls, text: str) -> "Arrangement":
        return cls(tuple(parse_product(text)))

    @property
    def n(self) -> int:
        return len(self.lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __contains__(self, line) -> bool:
        return line in self.lines

    def same_lines(self, other: "Arrangement") -> bool:
        return set(self.lines) == set(other.lines)

    def __str__(self):
        return "".join(f"({l})" for l in self.lines)


@dataclass(frozen=True)
class SingularPoint:
    point: ProjPoint
    incident_lines: tuple[ProjLine, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident_lines)


def parse_arrangement_text(text: str) -> Arrangement:
    """One line per row: ``a b c`` (integers or rationals) or a linear form.

    ``#`` starts a comment; blank rows are skipped.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        row = raw.split("#", 1)[0].strip()
        if not row:
            continue
        parts = row.split()
        try:
            if len(parts) == 3 and all(re.fullmatch(r"[+-]?\d+(/\d+)?", p) for p in parts):
                line = ProjLine(*(Fraction(p) for p in parts))
            else:
                line = parse_linear_form(row)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), lineno) from None
        if line in lines:
            raise ParseError(f"duplicate line {line}", lineno)
        lines.append(line)
    if not lines:
        raise ParseError("no lines in input")
    return Arrangement(tuple(lines))


def read_arrangement(path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement_text(fh.read())


# --------------------------------------------------------------- incidences


@lru_cache(maxsize=4096)
def defining_polynomial(A: Arrangement) -> TernaryForm:
    f = TernaryForm.constant(1)
    for l in A.lines:
        f = f * l.form()
    return f


@lru_cache(maxsize=4096)
def singular_points(A: Arrangement) -> tuple[SingularPoint, ...]:
    """All intersection points, grouped, in order of first appearance."""
    groups: dict[ProjPoint, list[ProjLine]] = {}
    for l1, l2 in combinations(A.lines, 2):
        p = intersect(l1, l2)
        members = groups.setdefault(p, [])
        for l in (l1, l2):
            if l not in members:
                members.append(l)
    pts = tuple(SingularPoint(p, tuple(ls)) for p, ls in groups.items())
    assert sum(math.comb(sp.multiplicity, 2) for sp in pts) == math.comb(A.n, 2)
    return pts


def h_value(A: Arrangement, l: ProjLine) -> int:
    """Number of distinct points of l on the other lines of A."""
    others = [m for m in A.lines if m != l]
    if l in A and not others:
        raise ValueError("h is undefined for a single-line arrangement")
    return len({intersect(l, m) for m in others})


def t_value(A: Arrangement, l: ProjLine) -> int:
    """Sum of (m_p - 2) over the singular points of A on l, for l in A."""
    if l not in A:
        raise ValueError(f"{l} is not a line of the arrangement")
    t = sum(sp.multiplicity - 2 for sp in singular_points(A) if l in sp.incident_lines)
    assert t == A.n - h_value(A, l) - 1
    return t


def avoids_singular_points(A: Arrangement, l: ProjLine) -> bool:
    return not any(l.contains(sp.point) for sp in singular_points(A))


# ------------------------------------------------------------------ sampling


def random_line(rng: random.Random, height: int) -> ProjLine:
    while True:
        c = [rng.randint(-height, height) for _ in range(3)]
        if any(c):
            return ProjLine(*c)


def sample_lines(
    A: Arrangement,
    count: int,
    seed: int = 0,
    height: int = 6,
    avoid_singular: bool = True,
    exclude: Iterable[ProjLine] = (),
) -> list[ProjLine]:
    """Deterministic pseudo-random lines not in A (optionally off Sing(A))."""
    rng = random.Random(seed)
    banned = set(A.lines) | set(exclude)
    out: list[ProjLine] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * (count + 1):
            raise RuntimeError("could not sample enough lines; raise the height")
        l = random_line(rng, height)
        if l in banned or l in out:
            continue
        if avoid_singular and not avoids_singular_points(A, l):
            continue
        out.append(l)
    return out


def special_lines(A: Arrangement) -> list[ProjLine]:
    """Lines not in A passing through at least two singular points of A."""
    pts = [sp.point for sp in singular_points(A)]
    out: list[ProjLine] = []
    seen = set(A.lines)
    for p, q in combinations(pts, 2):
        l = join(p, q)
        if l not in seen:
            seen.add(l)
            out.append(l)
    return out
