"""Exact rational arithmetic: homogeneous forms in two or three variables and
dense linear algebra over Q.

Scalars are ``fractions.Fraction`` (plain ``int`` is accepted wherever a
rational is expected).  Matrices are eliminated with integer row operations
and per-row gcd normalisation, so no floating point is involved anywhere.

``rank_mod_p`` is a fast auxiliary: the rank over F_p never exceeds the rank
over Q, so it only ever serves as a one-sided bound that callers close with
exact data.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Fraction",
    "Form",
    "TernaryForm",
    "BinaryForm",
    "ExactMatrix",
    "EchelonBasis",
    "monomial_basis",
    "monomial_index",
    "multiplication_matrix",
    "rref",
    "rank",
    "rank_mod_p",
    "kernel_basis",
    "kernel_integer_basis",
    "primitive_integer_vector",
    "line_parametrization",
    "restrict_to_line",
    "have_common_root",
]

VARNAMES = {2: ("s", "t"), 3: ("x", "y", "z")}


# ---------------------------------------------------------------- monomials


@lru_cache(maxsize=None)
def monomial_basis(degree: int, nvars: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of the given degree in graded-lex order (x > y > z, s > t)."""
    if degree < 0:
        return ()
    if nvars == 2:
        return tuple((degree - j, j) for j in range(degree + 1))
    if nvars == 3:
        return tuple(
            (i, j, degree - i - j)
            for i in range(degree, -1, -1)
            for j in range(degree - i, -1, -1)
        )
    raise ValueError(f"nvars must be 2 or 3, got {nvars}")


@lru_cache(maxsize=None)
def monomial_index(degree: int, nvars: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_basis(degree, nvars))}


def _as_rational(c) -> Fraction | int:
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        f = Fraction(c)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


# -------------------------------------------------------------------- forms


class Form:
    """Homogeneous polynomial with exact rational coefficients.

    Immutable.  Zero coefficients are never stored; the zero form still
    carries a degree.
    """

    NVARS = 0
    __slots__ = ("degree", "_coeffs", "_hash")

    def __init__(self, degree: int, coeffs: Mapping[tuple[int, ...], object] | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != self.NVARS or sum(e) != degree or min(e) < 0:
                raise ValueError(f"exponent {e} does not belong to degree {degree}")
            c = _as_rational(c)
            if c:
                clean[e] = c
        self.degree = degree
        self._coeffs = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, degree: int):
        return cls(degree)

    @classmethod
    def constant(cls, c):
        return cls(0, {(0,) * cls.NVARS: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1):
        return cls(sum(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, *coeffs):
        if len(coeffs) != cls.NVARS:
            raise ValueError(f"need {cls.NVARS} coefficients")
        basis = monomial_basis(1, cls.NVARS)
        return cls(1, dict(zip(basis, coeffs)))

    @classmethod
    def from_vector(cls, degree: int, vec: Sequence):
        basis = monomial_basis(degree, cls.NVARS)
        if len(vec) != len(basis):
            raise ValueError("vector length does not match the monomial basis")
        return cls(degree, dict(zip(basis, vec)))

    # accessors
    @property
    def coeffs(self) -> dict[tuple[int, ...], Fraction | int]:
        return dict(self._coeffs)

    def coefficient(self, exps: Sequence[int]):
        return self._coeffs.get(tuple(exps), 0)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def vector(self) -> list:
        return [self._coeffs.get(m, 0) for m in monomial_basis(self.degree, self.NVARS)]

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Form) or other.NVARS != self.NVARS:
            return NotImplemented
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if other.degree != self.degree:
            # a zero summand of another degree is tolerated
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return type(self)(self.degree, out)

    def __neg__(self):
        return type(self)(self.degree, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return type(self)(self.degree, {e: c * other for e, c in self._coeffs.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ea, ca in self._coeffs.items():
            for eb, cb in other._coeffs.items():
                e = tuple(u + v for u, v in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return type(self)(self.degree + other.degree, out)

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = type(self).constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Form) or other.NVARS != self.NVARS:
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            # zero forms of any degree compare equal
            deg = self.degree if self._coeffs else -1
            self._hash = hash((self.NVARS, deg, frozenset(self._coeffs.items())))
        return self._hash

    def __call__(self, *point):
        if len(point) == 1 and not isinstance(point[0], Rational):
            point = tuple(point[0])
        if len(point) != self.NVARS:
            raise ValueError(f"expected {self.NVARS} coordinates")
        total = 0
        for e, c in self._coeffs.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= v**k
            total += term
        return total

    def diff(self, var: int):
        if self.degree == 0:
            return type(self)(0)
        out = {}
        for e, c in self._coeffs.items():
            if e[var]:
                e2 = list(e)
                e2[var] -= 1
                out[tuple(e2)] = c * e[var]
        return type(self)(self.degree - 1, out)

    def primitive(self):
        """Scale to coprime integer coefficients; the leading (graded-lex first)
        coefficient is made positive."""
        if self.is_zero():
            return self
        vec = primitive_integer_vector(self.vector())
        return type(self).from_vector(self.degree, vec)

    def __repr__(self):
        return f"{type(self).__name__}({self.degree}, {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        names = VARNAMES[self.NVARS]
        parts = []
        for m in monomial_basis(self.degree, self.NVARS):
            c = self._coeffs.get(m)
            if not c:
                continue
            mon = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mon:
                body = str(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{mag}*{mon}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


class TernaryForm(Form):
    NVARS = 3
    __slots__ = ()


class BinaryForm(Form):
    NVARS = 2
    __slots__ = ()


# ------------------------------------------------------------------ vectors


def primitive_integer_vector(vec: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers with first nonzero entry > 0."""
    vec = [Fraction(v) for v in vec]
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        return ints
    lead = next(v for v in ints if v)
    if lead < 0:
        g = -g
    return [v // g for v in ints]


def _integer_row(row: Sequence) -> list[int]:
    if all(isinstance(v, int) for v in row):
        return list(row)
    den = 1
    for v in row:
        d = Fraction(v).denominator
        den = den * d // math.gcd(den, d)
    return [int(Fraction(v) * den) for v in row]


# ----------------------------------------------------------------- matrices


class ExactMatrix:
    """Dense matrix of exact rationals (entries are ``int`` or ``Fraction``)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        entries = [tuple(_as_rational(v) for v in r) for r in entries]
        if cols is None:
            if not entries:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = tuple(entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "ExactMatrix":
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def hstack(cls, *blocks: "ExactMatrix") -> "ExactMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("row counts differ")
        return cls(
            [sum((b.entries[i] for b in blocks), ()) for i in range(rows)],
            sum(b.cols for b in blocks),
        )

    @classmethod
    def vstack(cls, *blocks: "ExactMatrix") -> "ExactMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("column counts differ")
        return cls([r for b in blocks for r in b.entries], cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, vec: Sequence):
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * b for a, b in zip(row, vec) if a) for row in self.entries]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _eliminate(rows: list[list[int]], ncols: int, full: bool) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gaussian elimination on integer rows (modified in place).

    Rows are kept primitive after every update.  With ``full`` the pivot
    columns are also cleared above each pivot (reduced echelon form up to
    row scaling).  Returns the nonzero echelon rows and their pivot columns.
    """
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        p = None
        for i in range(rank, len(rows)):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        pr = rows[rank]
        pv = pr[c]
        targets = range(len(rows)) if full else range(rank + 1, len(rows))
        for i in targets:
            if i == rank:
                continue
            r = rows[i]
            v = r[c]
            if not v:
                continue
            g = math.gcd(pv, v)
            a, b = pv // g, v // g
            nr = [a * x - b * y for x, y in zip(r, pr)]
            g = math.gcd(*nr)
            if g > 1:
                nr = [x // g for x in nr]
            rows[i] = nr
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def rref(M: ExactMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q: (nonzero rows, pivot columns)."""
    rows, pivots = _eliminate([_integer_row(r) for r in M.entries], M.cols, full=True)
    out = []
    for r, c in zip(rows, pivots):
        pv = r[c]
        out.append([Fraction(v, pv) for v in r])
    return out, pivots


def rank(M: ExactMatrix) -> int:
    rows, _ = _eliminate([_integer_row(r) for r in M.entries], M.cols, full=False)
    return len(rows)


PRIME = 2_147_483_647


def rank_mod_p(M: ExactMatrix, p: int = PRIME) -> int:
    """Rank of M reduced mod p (a lower bound for the rational rank).

    p must be below 2**31 so products fit in int64.  Entries with a
    denominator divisible by p raise ZeroDivisionError.
    """
    if not 2 <= p < 2**31:
        raise ValueError("prime must be in [2, 2**31)")
    if M.rows == 0 or M.cols == 0:
        return 0
    data = np.empty((M.rows, M.cols), dtype=np.int64)
    for i, row in enumerate(M.entries):
        for j, x in enumerate(row):
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
                x = x.numerator * pow(x.denominator, -1, p)
            data[i, j] = x % p
    r = 0
    for c in range(M.cols):
        nz = np.nonzero(data[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            data[[r, piv]] = data[[piv, r]]
        inv = pow(int(data[r, c]), -1, p)
        data[r] = (data[r] * inv) % p
        below = data[r + 1 :]
        factors = below[:, c].copy()
        mask = factors != 0
        if mask.any():
            below[mask] = (below[mask] - np.outer(factors[mask], data[r]) % p) % p
        r += 1
        if r == M.rows:
            break
    return r


def kernel_basis(M: ExactMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right nullspace.

    One vector per free column j (in increasing order): 1 at j, 0 at the
    other free columns, and minus the reduced-echelon entries at the pivots.
    """
    rows, pivots = _eliminate([_integer_row(r) for r in M.entries], M.cols, full=True)
    pivset = set(pivots)
    basis = []
    for j in range(M.cols):
        if j in pivset:
            continue
        v = [Fraction(0)] * M.cols
        v[j] = Fraction(1)
        for r, c in zip(rows, pivots):
            if r[j]:
                v[c] = Fraction(-r[j], r[c])
        basis.append(tuple(v))
    return basis


def kernel_integer_basis(M: ExactMatrix) -> tuple[list[list[int]], list[int]]:
    """Kernel basis scaled to integer vectors, plus the free columns.

    The j-th vector restricted to the free columns is a positive multiple of
    the j-th unit vector, so these columns serve as coordinates on the kernel.
    """
    rows, pivots = _eliminate([_integer_row(r) for r in M.entries], M.cols, full=True)
    pivset = set(pivots)
    free = [j for j in range(M.cols) if j not in pivset]
    basis = []
    for j in free:
        v = [Fraction(0)] * M.cols
        v[j] = Fraction(1)
        for r, c in zip(rows, pivots):
            if r[j]:
                v[c] = Fraction(-r[j], r[c])
        basis.append(primitive_integer_vector(v))
    return basis, free


class EchelonBasis:
    """Incrementally grown echelon basis of a subspace of Q^dim."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, list[int]] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: Sequence) -> list[int]:
        v = _integer_row(vec)
        for c in sorted(self._rows):
            if v[c]:
                pr = self._rows[c]
                g = math.gcd(pr[c], v[c])
                a, b = pr[c] // g, v[c] // g
                v = [a * x - b * y for x, y in zip(v, pr)]
                g = math.gcd(*v)
                if g > 1:
                    v = [x // g for x in v]
        return v

    def insert(self, vec: Sequence) -> bool:
        """Add ``vec`` to the span; False if it was already contained."""
        if len(vec) != self.dim:
            raise ValueError("dimension mismatch")
        v = self.reduce(vec)
        if not any(v):
            return False
        c = next(i for i, x in enumerate(v) if x)
        for k, row in list(self._rows.items()):
            if row[c]:
                g = math.gcd(v[c], row[c])
                a, b = v[c] // g, row[c] // g
                nr = [a * x - b * y for x, y in zip(row, v)]
                g = math.gcd(*nr)
                self._rows[k] = [x // g for x in nr] if g > 1 else nr
        self._rows[c] = v
        return True

    def __contains__(self, vec) -> bool:
        return not any(self.reduce(vec))


# ------------------------------------------------------- multiplication maps


def multiplication_matrix(g: Form, k: int) -> ExactMatrix:
    """Matrix of h -> g*h from degree-k forms to degree k+deg(g) forms."""
    if k < 0:
        raise ValueError("k must be non-negative")
    nv = g.NVARS
    src = monomial_basis(k, nv)
    tgt = monomial_index(k + g.degree, nv)
    rows = [[0] * len(src) for _ in range(len(tgt))]
    for j, m in enumerate(src):
        for e, c in g.items():
            rows[tgt[tuple(u + v for u, v in zip(e, m))]][j] += c
    return ExactMatrix(rows, len(src))


# -------------------------------------------------------- lines and restriction


def line_parametrization(line: Sequence[int]) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Two integer points spanning the line a*x + b*y + c*z = 0.

    Let i be the index of the first nonzero coefficient and j < k the other two
    indices.  The first point has coordinate j equal to coef[i], coordinate i
    equal to -coef[j] and coordinate k zero; the second point swaps the roles
    of j and k.  Each point is divided by the gcd of its entries, sign kept.
    The restriction of a form F is then F(s*P1 + t*P2).
    """
    coef = tuple(int(v) for v in line)
    if len(coef) != 3 or not any(coef):
        raise ValueError("a line needs three coefficients, not all zero")
    i = next(n for n, v in enumerate(coef) if v)
    j, k = [n for n in range(3) if n != i]
    pts = []
    for free, other in ((j, k), (k, j)):
        p = [0, 0, 0]
        p[free] = coef[i]
        p[i] = -coef[free]
        p[other] = 0
        g = math.gcd(*p)
        pts.append(tuple(v // g for v in p))
    return pts[0], pts[1]


def restrict_to_line(F: TernaryForm, line: Sequence[int]) -> BinaryForm:
    """Substitute the canonical parametrization of ``line`` into ``F``."""
    p1, p2 = line_parametrization(line)
    lin = [BinaryForm.linear(p1[v], p2[v]) for v in range(3)]
    powers = [[BinaryForm.constant(1)] for _ in range(3)]
    for v in range(3):
        for _ in range(F.degree):
            powers[v].append(powers[v][-1] * lin[v])
    out = BinaryForm.zero(F.degree)
    for e, c in F.items():
        out = out + powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * c
    return out


def have_common_root(u: BinaryForm, v: BinaryForm) -> bool:
    """Whether two binary forms share a zero on P^1 (Sylvester resultant test).

    A zero form vanishes everywhere; a nonzero constant vanishes nowhere.
    """
    if u.is_zero() or v.is_zero():
        return True
    p, q = u.degree, v.degree
    if p == 0 or q == 0:
        return False
    # (A, B) -> A*u + B*v with deg A = q-1, deg B = p-1 is square of size p+q;
    # it is invertible exactly when u and v are coprime.
    M = ExactMatrix.hstack(multiplication_matrix(u, q - 1), multiplication_matrix(v, p - 1))
    return rank(M) < p + q
