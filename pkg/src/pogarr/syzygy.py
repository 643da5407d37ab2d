"""Jacobian syzygies of a line arrangement and its free / plus-one generated
classification.

A degree-k syzygy is a triple (P, Q, R) of degree-k forms with
P*f_x + Q*f_y + R*f_z = 0, where f is the defining polynomial.  The module of
all syzygies is built degree by degree as kernels of exact block
multiplication matrices; minimal generators are picked as a complement of the
span of multiples of the generators already found.

Classification certificates:

* Free(a, b): two generators with a + b = n - 1 whose cross product is a
  nonzero constant multiple of the gradient (so they generate a free module
  of the right first Chern class).
* POG(a, b, d): three generators, a + b = n, a one-dimensional space of
  relations in degree d + 1 with nonzero linear coefficient on the degree-d
  generator, and the three relation coefficients without common zero (so the
  presentation is a resolution by a subbundle).  NearlyFree when d == b.

In both cases the Hilbert function of the syzygy module is also compared to
the closed form in every computed degree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arrangement import Arrangement, ProjLine, defining_polynomial
from .exactalg import (
    BinaryForm,
    EchelonBasis,
    ExactMatrix,
    TernaryForm,
    have_common_root,
    kernel_basis,
    kernel_integer_basis,
    monomial_basis,
    monomial_index,
    multiplication_matrix,
    primitive_integer_vector,
    rank,
    rank_mod_p,
    restrict_to_line,
)

__all__ = [
    "ClassificationError",
    "PreconditionError",
    "SyzygyVector",
    "RelationVector",
    "ARPresentation",
    "Kind",
    "Classification",
    "jacobian",
    "syzygy_matrix",
    "ar_dimension",
    "minimal_generators",
    "classify",
    "pog_relation",
    "jumping_line",
    "z_scheme",
    "tri",
    "hilbert_free",
    "hilbert_pog",
]


class ClassificationError(RuntimeError):
    """Computed data contradicts the shape it appears to have (k_max too small
    or a bug).  Carries a diagnostic message."""


class PreconditionError(ValueError):
    pass


def tri(m: int) -> int:
    """Number of ternary monomials of degree m (0 for m < 0)."""
    return (m + 1) * (m + 2) // 2 if m >= 0 else 0


def hilbert_free(a: int, b: int, k: int) -> int:
    return tri(k - a) + tri(k - b)


def hilbert_pog(a: int, b: int, d: int, k: int) -> int:
    return tri(k - a) + tri(k - b) + tri(k - d) - tri(k - d - 1)


# ------------------------------------------------------------------- types


@dataclass(frozen=True)
class SyzygyVector:
    degree: int
    components: tuple[TernaryForm, TernaryForm, TernaryForm]

    @classmethod
    def from_vector(cls, k: int, vec) -> "SyzygyVector":
        m = tri(k)
        return cls(k, tuple(TernaryForm.from_vector(k, vec[i * m : (i + 1) * m]) for i in range(3)))

    def vector(self) -> list:
        return [c for comp in self.components for c in comp.vector()]

    def __getitem__(self, i: int) -> TernaryForm:
        return self.components[i]

    def __mul__(self, g: TernaryForm) -> "SyzygyVector":
        return SyzygyVector(self.degree + g.degree, tuple(c * g for c in self.components))

    def evaluate_against(self, grad) -> TernaryForm:
        return sum((c * g for c, g in zip(self.components, grad)), TernaryForm.zero(0))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class RelationVector:
    """Coefficients (c_a, c_b, c_d) with c_a*r_a + c_b*r_b + c_d*r_d = 0."""

    coefficients: tuple[TernaryForm, TernaryForm, TernaryForm]

    @property
    def c_a(self) -> TernaryForm:
        return self.coefficients[0]

    @property
    def c_b(self) -> TernaryForm:
        return self.coefficients[1]

    @property
    def c_d(self) -> TernaryForm:
        return self.coefficients[2]


@dataclass(frozen=True)
class ARPresentation:
    generator_degrees: tuple[int, ...]
    generators: tuple[SyzygyVector, ...]
    hilbert: tuple[int, ...]
    k_max: int
    relation: RelationVector | None = None


class Kind(enum.Enum):
    FREE = "Free"
    NEARLY_FREE = "NearlyFree"
    POG = "POG"
    OTHER = "Other"


@dataclass(frozen=True)
class Classification:
    """Free(a,b) | NearlyFree(a,b) | POG(a,b,d) | Other(generator degrees).

    Equality compares variant, exponents and level only.
    """

    kind: Kind
    exponents: tuple[int, ...]
    level: int | None = None
    presentation: ARPresentation | None = field(default=None, compare=False, repr=False)
    note: str = field(default="", compare=False)

    @classmethod
    def free(cls, a: int, b: int, **kw) -> "Classification":
        a, b = sorted((a, b))
        return cls(Kind.FREE, (a, b), None, **kw)

    @classmethod
    def pog(cls, a: int, b: int, d: int, **kw) -> "Classification":
        a, b = sorted((a, b))
        if d < b:
            raise ValueError(f"level {d} below exponent {b}")
        if d == b:
            return cls(Kind.NEARLY_FREE, (a, b), d, **kw)
        return cls(Kind.POG, (a, b), d, **kw)

    @classmethod
    def other(cls, degrees, **kw) -> "Classification":
        return cls(Kind.OTHER, tuple(sorted(degrees)), None, **kw)

    @property
    def is_free(self) -> bool:
        return self.kind is Kind.FREE

    @property
    def is_pog(self) -> bool:
        """True for plus-one generated inputs, nearly free included."""
        return self.kind in (Kind.POG, Kind.NEARLY_FREE)

    @property
    def abd(self) -> tuple[int, int, int]:
        if not self.is_pog:
            raise PreconditionError(f"{self} is not plus-one generated")
        return self.exponents[0], self.exponents[1], self.level

    def __str__(self):
        if self.kind is Kind.POG:
            return f"POG({self.exponents[0]},{self.exponents[1]},{self.level})"
        return f"{self.kind.value}({','.join(map(str, self.exponents))})"


# ---------------------------------------------------------------- syzygies


@lru_cache(maxsize=4096)
def jacobian(A: Arrangement) -> tuple[TernaryForm, TernaryForm, TernaryForm]:
    f = defining_polynomial(A)
    return (f.diff(0), f.diff(1), f.diff(2))


def syzygy_matrix(A: Arrangement, k: int) -> ExactMatrix:
    """[mult(f_x) | mult(f_y) | mult(f_z)] from (degree-k forms)^3."""
    return ExactMatrix.hstack(*(multiplication_matrix(g, k) for g in jacobian(A)))


def ar_dimension(A: Arrangement, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    M = syzygy_matrix(A, k)
    return M.cols - rank(M)


def _shifted(g: SyzygyVector, mono: tuple[int, int, int], k: int) -> list[int]:
    """Coefficient vector of mono * g in degree k."""
    idx = monomial_index(k, 3)
    m = len(idx)
    vec = [0] * (3 * m)
    for i, comp in enumerate(g.components):
        for e, c in comp.items():
            vec[i * m + idx[(e[0] + mono[0], e[1] + mono[1], e[2] + mono[2])]] = c
    return vec


def _span_of_multiples(gens, k: int, stop_at: int) -> EchelonBasis:
    span = EchelonBasis(3 * tri(k))
    for g in gens:
        for mono in monomial_basis(k - g.degree, 3):
            if len(span) >= stop_at:
                return span
            span.insert(_shifted(g, mono, k))
    return span


@lru_cache(maxsize=1024)
def minimal_generators(A: Arrangement, k_max: int | None = None) -> ARPresentation:
    """Minimal generators of the syzygy module in degrees 0..k_max (default n).

    In each degree the multiples of earlier generators span a subspace of the
    kernel.  If its dimension already equals cols - rank_mod_p (an upper
    bound for the nullity) the degree is settled without new generators;
    otherwise the exact kernel is computed and extended from that span.
    """
    if k_max is None:
        k_max = A.n
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    gens: list[SyzygyVector] = []
    hilbert = []
    for k in range(k_max + 1):
        M = syzygy_matrix(A, k)
        upper = M.cols - rank_mod_p(M)
        span = _span_of_multiples(gens, k, upper)
        if len(span) == upper:
            hilbert.append(upper)
            continue
        basis, _ = kernel_integer_basis(M)
        if len(basis) > upper:
            raise ClassificationError(f"degree {k}: exact nullity {len(basis)} exceeds the modular bound {upper}")
        hilbert.append(len(basis))
        for v in basis:
            if len(span) == len(basis):
                break
            if span.insert(v):
                gens.append(SyzygyVector.from_vector(k, v))
    return ARPresentation(
        generator_degrees=tuple(g.degree for g in gens),
        generators=tuple(gens),
        hilbert=tuple(hilbert),
        k_max=k_max,
    )


# ---------------------------------------------------------- classification


def _cross(u: SyzygyVector, v: SyzygyVector) -> tuple[TernaryForm, ...]:
    (p1, q1, r1), (p2, q2, r2) = u.components, v.components
    return (q1 * r2 - r1 * q2, r1 * p2 - p1 * r2, p1 * q2 - q1 * p2)


def _proportional_constant(forms, targets):
    """c with forms == c * targets (componentwise), or None."""
    c = None
    for f, t in zip(forms, targets):
        for e, v in t.items():
            ratio = Fraction(f.coefficient(e)) / v
            if c is None:
                c = ratio
            elif ratio != c:
                return None
    if c is None or c == 0:
        return None
    for f, t in zip(forms, targets):
        if f != t * c:
            return None
    return c


def _solve_relation(gens: tuple[SyzygyVector, SyzygyVector, SyzygyVector], top: int):
    """Basis of {(c_0, c_1, c_2) : sum c_i * gens[i] == 0, deg c_i = top - deg gens[i]}."""
    degs = [top - g.degree for g in gens]
    blocks = []
    for comp in range(3):
        blocks.append(
            ExactMatrix.hstack(*(multiplication_matrix(g[comp], dg) for g, dg in zip(gens, degs)))
        )
    M = ExactMatrix.vstack(*blocks)
    out = []
    for v in kernel_basis(M):
        forms, pos = [], 0
        for dg in degs:
            m = tri(dg)
            forms.append(TernaryForm.from_vector(dg, v[pos : pos + m]))
            pos += m
        out.append(tuple(forms))
    return out


def _check_hilbert(pres: ARPresentation, expected, label: str) -> None:
    for k, h in enumerate(pres.hilbert):
        if h != expected(k):
            raise ClassificationError(
                f"{label}: dim AR_{k} = {h} but the closed form gives {expected(k)}"
            )


@lru_cache(maxsize=4096)
def classify(A: Arrangement, k_max: int | None = None) -> Classification:
    n = A.n
    pres = minimal_generators(A, k_max)
    degs = pres.generator_degrees
    note = f"generator degrees computed up to degree {pres.k_max}"

    if len(degs) == 2 and sum(degs) == n - 1:
        ra, rb = pres.generators
        c = _proportional_constant(_cross(ra, rb), jacobian(A))
        if c is not None:
            a, b = degs
            _check_hilbert(pres, lambda k: hilbert_free(a, b, k), f"Free({a},{b})")
            return Classification.free(a, b, presentation=pres)

    if len(degs) == 3 and degs[0] + degs[1] == n:
        a, b, d = degs
        label = f"POG({a},{b},{d})"
        if not (b <= d and d + 1 <= a + b):
            raise ClassificationError(f"{label}: violates b <= d and d + 1 <= a + b")
        if d + 1 > pres.k_max:
            raise ClassificationError(f"{label}: relation degree {d + 1} exceeds k_max")
        gens = pres.generators
        sols = _solve_relation(gens, d + 1)
        if len(sols) != 1:
            raise ClassificationError(f"{label}: relation space in degree {d + 1} has dimension {len(sols)}")
        c_a, c_b, c_d = sols[0]
        if c_d.is_zero():
            raise ClassificationError(f"{label}: relation has zero coefficient on the degree-{d} generator")
        scale = _normalising_scale(c_d)
        c_a, c_b, c_d = c_a * scale, c_b * scale, c_d * scale
        l0 = ProjLine(*c_d.vector())
        ua, ub = restrict_to_line(c_a, l0), restrict_to_line(c_b, l0)
        if ub.is_zero() and a == b and not ua.is_zero():
            # the other degree-a generator gives a section with finite Z
            gens = (gens[1], gens[0], gens[2])
            c_a, c_b = c_b, c_a
            ua, ub = ub, ua
        if have_common_root(ua, ub):
            raise ClassificationError(f"{label}: relation coefficients have a common zero")
        _check_hilbert(pres, lambda k: hilbert_pog(a, b, d, k), label)
        pres = ARPresentation(
            generator_degrees=tuple(g.degree for g in gens),
            generators=gens,
            hilbert=pres.hilbert,
            k_max=pres.k_max,
            relation=RelationVector((c_a, c_b, c_d)),
        )
        return Classification.pog(a, b, d, presentation=pres)

    top = [dg for dg in degs if dg == pres.k_max]
    if top:
        note += f"; degree-{pres.k_max} generators are provisional"
    return Classification.other(degs, presentation=pres, note=note)


def _normalising_scale(c_d: TernaryForm) -> Fraction:
    vec = c_d.vector()
    prim = primitive_integer_vector(vec)
    j = next(i for i, v in enumerate(vec) if v)
    return Fraction(prim[j]) / Fraction(vec[j])


# ----------------------------------------------------- relation, l0 and Z


def _require_pog(A: Arrangement, strict: bool) -> Classification:
    cls = classify(A)
    if not cls.is_pog:
        raise PreconditionError(f"arrangement is {cls}, not plus-one generated")
    if strict and cls.kind is Kind.NEARLY_FREE:
        raise PreconditionError(f"{cls}: the jumping line is not unique for nearly free arrangements (d = b)")
    return cls


def pog_relation(A: Arrangement) -> RelationVector:
    """The (unique up to scalar) relation, scaled so c_d is a primitive line."""
    cls = _require_pog(A, strict=False)
    return cls.presentation.relation


def jumping_line(A: Arrangement) -> ProjLine:
    """The line l0 = V(c_d); requires level d > b."""
    _require_pog(A, strict=True)
    return ProjLine(*pog_relation(A).c_d.vector())


def z_scheme(A: Arrangement) -> tuple[ProjLine, TernaryForm]:
    """(l0, g) with Z = l0 ∩ V(g), g of degree d + 1 - b."""
    cls = _require_pog(A, strict=True)
    a, b, d = cls.abd
    rel = pog_relation(A)
    l0 = jumping_line(A)
    g = rel.c_b
    on_line = restrict_to_line(g, l0)
    if on_line.is_zero():
        raise ClassificationError("degenerate Z: c_d divides c_b")
    if g.degree != d + 1 - b:
        raise ClassificationError(f"curve through Z has degree {g.degree}, expected {d + 1 - b}")
    return l0, g


def restricted_relation(A: Arrangement, l) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
    rel = pog_relation(A)
    return tuple(restrict_to_line(c, l) for c in rel.coefficients)
