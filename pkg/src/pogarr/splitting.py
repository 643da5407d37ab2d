"""Splitting types of the syzygy bundle of an arrangement on lines.

A splitting type (alpha, beta), alpha <= beta, means the restriction to the
line is O(-alpha) + O(-beta); always alpha + beta = n - 1.  Several
independent routes are provided:

``ziegler``     lines of A: exponents of the Ziegler multiarrangement on l.
``direct``      lines off A avoiding Sing(A): syzygies of the restricted
                partial derivatives, which are coprime binary forms there.
``resolution``  any line, free or plus-one generated A: kernel of the
                transposed minimal presentation restricted to l.
``z``           any line, POG with d > b: the three-case formula driven by
                the position of l relative to l0 and the scheme Z.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrangement import (
    Arrangement,
    ProjLine,
    ProjPoint,
    avoids_singular_points,
    intersect,
    singular_points,
)
from .exactalg import (
    BinaryForm,
    ExactMatrix,
    monomial_basis,
    multiplication_matrix,
    primitive_integer_vector,
    rank,
    restrict_to_line,
)
from .syzygy import (
    ClassificationError,
    PreconditionError,
    classify,
    jacobian,
    jumping_line,
    restricted_relation,
    z_scheme,
)

__all__ = [
    "SplittingType",
    "Multiarrangement1D",
    "UnsupportedLine",
    "ziegler_restriction",
    "multi_exponents",
    "multi_derivation_dimension",
    "splitting_direct",
    "splitting_on_line",
    "splitting_from_resolution",
    "pog_splitting_via_Z",
    "meets_Z",
    "splitting_type",
]


class UnsupportedLine(ValueError):
    """No sound route computes the splitting type on this line."""


@dataclass(frozen=True, order=True)
class SplittingType:
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha > self.beta:
            lo, hi = self.beta, self.alpha
            object.__setattr__(self, "alpha", lo)
            object.__setattr__(self, "beta", hi)

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def __str__(self):
        return f"({self.alpha},{self.beta})"


@dataclass(frozen=True)
class Multiarrangement1D:
    """Points of a line with multiplicities; each point is also given as the
    binary linear form vanishing on it in the line's canonical parametrization."""

    line: ProjLine
    points: tuple[ProjPoint, ...]
    forms: tuple[BinaryForm, ...]
    multiplicities: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.multiplicities)


# ----------------------------------------------------------------- ziegler


def ziegler_restriction(A: Arrangement, l: ProjLine) -> Multiarrangement1D:
    if l not in A:
        raise ValueError(f"{l} is not a line of the arrangement")
    if A.n < 2:
        raise ValueError("Ziegler restriction needs at least two lines")
    pts, forms, mults = [], [], []
    for sp in singular_points(A):
        if l not in sp.incident_lines:
            continue
        other = next(m for m in sp.incident_lines if m != l)
        form = restrict_to_line(other.form(), l)
        pts.append(sp.point)
        forms.append(BinaryForm.from_vector(1, primitive_integer_vector(form.vector())))
        mults.append(sp.multiplicity - 1)
    M = Multiarrangement1D(l, tuple(pts), tuple(forms), tuple(mults))
    assert M.total == A.n - 1
    return M


def _substitute(mono_deg: int, p, q) -> list[list]:
    """Rows: for each s^(k-i) t^i, the coefficients of (lam*p + mu*q) substituted,
    indexed by lam^(k-j) mu^j."""
    lin_s = BinaryForm.linear(p[0], q[0])
    lin_t = BinaryForm.linear(p[1], q[1])
    out = []
    for (i_s, i_t) in monomial_basis(mono_deg, 2):
        out.append((lin_s**i_s * lin_t**i_t).vector())
    return out


def _divisibility_rows(form: BinaryForm, mult: int, k: int) -> list[list]:
    """Linear conditions on (theta_1, theta_2) of degree k meaning
    form^mult divides c1*theta_1 + c2*theta_2, where form = c1*s + c2*t."""
    c1, c2 = form.coefficient((1, 0)), form.coefficient((0, 1))
    root = (-c2, c1)
    comp = (1, 0) if root[1] != 0 else (0, 1)
    # F(lam*root + mu*comp) is divisible by mu^mult iff form^mult | F
    sub = _substitute(k, root, comp)
    rows = []
    for j in range(min(mult, k + 1)):
        rows.append([c1 * sub[i][j] for i in range(k + 1)] + [c2 * sub[i][j] for i in range(k + 1)])
    return rows


def multi_derivation_dimension(M: Multiarrangement1D, k: int) -> int:
    """dim of the degree-k derivations of the multiarrangement."""
    if k < 0:
        return 0
    rows = []
    for form, m in zip(M.forms, M.multiplicities):
        rows.extend(_divisibility_rows(form, m, k))
    ncols = 2 * (k + 1)
    if not rows:
        return ncols
    return ncols - rank(ExactMatrix(rows, ncols))


def _check_rank2_dims(dims: dict[int, int], e1: int, e2: int, what: str) -> None:
    for k, dim in dims.items():
        want = max(0, k - e1 + 1) + max(0, k - e2 + 1)
        if dim != want:
            raise ClassificationError(f"{what}: dimension {dim} in degree {k}, expected {want} for exponents ({e1},{e2})")


def multi_exponents(M: Multiarrangement1D) -> SplittingType:
    total = M.total
    if total < 1:
        raise ValueError("multiarrangement must have positive total multiplicity")
    dims = {}
    e1 = None
    for k in range(total + 1):
        dims[k] = multi_derivation_dimension(M, k)
        if e1 is None and dims[k]:
            e1 = k
    if e1 is None:
        raise ClassificationError("no derivations up to the total multiplicity")
    e2 = total - e1
    _check_rank2_dims(dims, e1, e2, "multiarrangement")
    return SplittingType(e1, e2)


# ------------------------------------------------------------ direct route


def _binary_syzygy_dimension(forms, k: int) -> int:
    if k < 0:
        return 0
    M = ExactMatrix.hstack(*(multiplication_matrix(g, k) for g in forms))
    return M.cols - rank(M)


def splitting_direct(A: Arrangement, l: ProjLine) -> SplittingType:
    """Least degree of a syzygy among the partials restricted to l.

    Valid for l off A and off Sing(A), where the restricted partials have no
    common zero.
    """
    if l in A or not avoids_singular_points(A, l):
        raise UnsupportedLine(f"direct restriction needs a line off A avoiding Sing(A): {l}")
    n = A.n
    restricted = [restrict_to_line(g, l) for g in jacobian(A)]
    dims = {}
    alpha = None
    for k in range(n):
        dims[k] = _binary_syzygy_dimension(restricted, k)
        if alpha is None and dims[k]:
            alpha = k
    if alpha is None:
        raise ClassificationError(f"no restricted syzygy below degree {n} on {l}")
    beta = n - 1 - alpha
    _check_rank2_dims(dims, alpha, beta, f"restricted syzygies on {l}")
    return SplittingType(alpha, beta)


def splitting_on_line(A: Arrangement, l: ProjLine) -> SplittingType:
    """Ziegler exponents for l in A; direct restriction for l avoiding Sing(A)."""
    if l in A:
        return multi_exponents(ziegler_restriction(A, l))
    if avoids_singular_points(A, l):
        return splitting_direct(A, l)
    raise UnsupportedLine(
        f"{l} is not in the arrangement and passes through a singular point; "
        "use pog_splitting_via_Z (plus-one generated input) instead"
    )


# -------------------------------------------------------- resolution route


def splitting_from_resolution(A: Arrangement, l: ProjLine) -> SplittingType:
    """Splitting type read off the minimal presentation restricted to l.

    For POG A the dual bundle on l is the kernel of
    O(a) + O(b) + O(d) -> O(d + 1) given by the restricted relation; its
    sections in twist j are triples of binary forms of degrees
    (j + a, j + b, j + d) annihilated by the relation.
    """
    cls = classify(A)
    if cls.is_free:
        return SplittingType(*cls.exponents)
    if not cls.is_pog:
        raise UnsupportedLine(f"no presentation-based route for {cls}")
    n = A.n
    pres = cls.presentation
    gdeg = pres.generator_degrees
    u = restricted_relation(A, l)
    top = gdeg[2]
    dims = {}
    beta = None
    for j in range(-top, 1):
        cols = []
        for form, e in zip(u, gdeg):
            if j + e >= 0:
                cols.append(multiplication_matrix(form, j + e))
        if not cols:
            dims[j] = 0
            continue
        M = ExactMatrix.hstack(*cols)
        dims[j] = M.cols - rank(M)
        if beta is None and dims[j]:
            beta = -j
    if beta is None:
        raise ClassificationError(f"restricted presentation has no kernel on {l}")
    alpha = n - 1 - beta
    for j, dim in dims.items():
        want = max(0, j + alpha + 1) + max(0, j + beta + 1)
        if dim != want:
            raise ClassificationError(f"restricted presentation on {l}: dimension {dim} in twist {j}, expected {want}")
    return SplittingType(alpha, beta)


# ----------------------------------------------------------------- Z route


def _z_data(A: Arrangement):
    cls = classify(A)
    if not cls.is_pog or cls.level <= cls.exponents[1]:
        raise PreconditionError(f"needs a plus-one generated arrangement with d > b, got {cls}")
    l0, g = z_scheme(A)
    return cls.abd, l0, g


def meets_Z(A: Arrangement, l: ProjLine) -> int:
    """1 if l (≠ l0) passes through a point of Z, else 0."""
    (a, b, d), l0, g = _z_data(A)
    if l == l0:
        raise ValueError(f"l is l0 itself: it contains all of Z (length {d + 1 - b})")
    p = intersect(l, l0)
    return 1 if g(tuple(p)) == 0 else 0


def pog_splitting_via_Z(A: Arrangement, l: ProjLine) -> SplittingType:
    (a, b, d), l0, g = _z_data(A)
    if l == l0:
        return SplittingType(a + b - d - 1, d)
    if meets_Z(A, l):
        return SplittingType(a - 1, b)
    return SplittingType(a, b - 1)


# --------------------------------------------------------------- dispatcher


@lru_cache(maxsize=65536)
def splitting_type(A: Arrangement, l: ProjLine) -> tuple[SplittingType, str]:
    """Splitting type with the route used: ziegler, direct, free, z or resolution."""
    if l in A:
        return multi_exponents(ziegler_restriction(A, l)), "ziegler"
    if avoids_singular_points(A, l):
        return splitting_direct(A, l), "direct"
    cls = classify(A)
    if cls.is_free:
        return SplittingType(*cls.exponents), "free"
    if cls.is_pog and cls.level > cls.exponents[1]:
        return pog_splitting_via_Z(A, l), "z"
    if cls.is_pog:
        return splitting_from_resolution(A, l), "resolution"
    raise UnsupportedLine(f"{l} passes through a singular point of an arrangement classified {cls}")
