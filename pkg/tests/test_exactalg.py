from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pogarr.arrangement import ProjLine
from pogarr.exactalg import (
    BinaryForm,
    EchelonBasis,
    ExactMatrix,
    TernaryForm,
    have_common_root,
    kernel_basis,
    line_parametrization,
    monomial_basis,
    multiplication_matrix,
    rank,
    rank_mod_p,
    restrict_to_line,
)

X, Y, Z = (TernaryForm.linear(*v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

small = st.integers(-5, 5)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def ternary(degree):
    n = len(monomial_basis(degree, 3))
    return st.lists(small, min_size=n, max_size=n).map(lambda v: TernaryForm.from_vector(degree, v))


# ------------------------------------------------------------ linear algebra


def test_kernel_identity_is_empty():
    assert kernel_basis(ExactMatrix([[1, 0], [0, 1]])) == []


def test_kernel_of_zero_matrix_is_everything():
    assert len(kernel_basis(ExactMatrix.zeros(2, 3))) == 3


def test_kernel_hand_example():
    (v,) = kernel_basis(ExactMatrix([[1, 1, 0], [0, 1, 1]]))
    # canonical vector: free column set to 1
    assert v == (1, -1, 1)


def test_kernel_rational_entries():
    M = ExactMatrix([[Fraction(1, 2), Fraction(1, 3)]])
    (v,) = kernel_basis(M)
    assert M @ v == [0]
    assert v == (Fraction(-2, 3), 1)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    M = ExactMatrix(rows)
    basis = kernel_basis(M)
    assert rank(M) + len(basis) == M.cols
    for v in basis:
        assert all(x == 0 for x in M @ v)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(ExactMatrix(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_kernel_is_deterministic_and_independent(rows):
    M = ExactMatrix(rows)
    b1, b2 = kernel_basis(M), kernel_basis(ExactMatrix(rows))
    assert b1 == b2
    if b1:
        assert sympy.Matrix(b1).rank() == len(b1)


def test_echelon_basis_membership():
    E = EchelonBasis(3)
    assert E.insert([1, 2, 3])
    assert not E.insert([2, 4, 6])
    assert [3, 6, 9] in E
    assert E.insert([0, 1, 0])
    assert [1, 5, 3] in E and [0, 0, 1] not in E
    assert len(E) == 2


# ------------------------------------------------------------------- forms


@pytest.mark.parametrize("degree,nvars,length", [(1, 3, 3), (2, 2, 3), (5, 3, 21), (0, 3, 1), (4, 2, 5)])
def test_monomial_basis_sizes(degree, nvars, length):
    assert len(monomial_basis(degree, nvars)) == length


def test_monomial_basis_order():
    assert monomial_basis(1, 3) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert monomial_basis(2, 3)[:3] == ((2, 0, 0), (1, 1, 0), (1, 0, 1))
    assert monomial_basis(2, 2) == ((2, 0), (1, 1), (0, 2))


def test_multiplication_by_x():
    M = multiplication_matrix(X, 0)
    assert (M.rows, M.cols) == (3, 1)
    assert [M[i, 0] for i in range(3)] == [1, 0, 0]


def test_multiplication_by_zero():
    M = multiplication_matrix(TernaryForm.zero(2), 1)
    assert (M.rows, M.cols) == (10, 3)
    assert rank(M) == 0


def test_multiplication_by_yz():
    M = multiplication_matrix(Y * Z, 1)
    assert (M.rows, M.cols) == (10, 3)
    entries = [M[i, j] for i in range(10) for j in range(3)]
    assert sorted(entries) == [0] * 27 + [1] * 3
    # each column is the product yz * monomial
    for j, mono in enumerate(monomial_basis(1, 3)):
        prod = Y * Z * TernaryForm.monomial(mono)
        assert [M[i, j] for i in range(10)] == prod.vector()


@settings(max_examples=30, deadline=None)
@given(ternary(2), st.integers(0, 3))
def test_multiplication_by_nonzero_is_injective(g, k):
    if g.is_zero():
        return
    assert kernel_basis(multiplication_matrix(g, k)) == []


def test_form_arithmetic_against_sympy():
    x, y, z = sympy.symbols("x y z")
    F = (X + 4 * Y + Z) * (Y + Z) * X
    expected = sympy.Poly(sympy.expand((x + 4 * y + z) * (y + z) * x), x, y, z)
    for mono, c in expected.terms():
        assert F.coefficient(mono) == c
    assert len(list(F.items())) == len(expected.terms())


def test_diff_and_evaluation():
    F = X * Y * Z
    assert F.diff(0) == Y * Z
    assert F(1, 2, 3) == 6
    assert (X + Fraction(1, 2) * Y)(2, 1, 0) == Fraction(5, 2)


# ------------------------------------------------------------- restriction


def test_restrict_examples():
    assert restrict_to_line(X, ProjLine(1, 0, 0)).is_zero()
    r = restrict_to_line(Y, ProjLine(1, 0, 0))
    assert r.degree == 1 and not r.is_zero()
    assert restrict_to_line(X * Y * Z, ProjLine(0, 0, 1)).is_zero()


@pytest.mark.parametrize("line", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 4, 1), (2, -3, 5), (0, 2, 1)])
def test_parametrization_lies_on_line(line):
    p1, p2 = line_parametrization(line)
    for p in (p1, p2):
        assert sum(a * b for a, b in zip(line, p)) == 0
    # distinct projective points
    cross = (p1[1] * p2[2] - p1[2] * p2[1], p1[2] * p2[0] - p1[0] * p2[2], p1[0] * p2[1] - p1[1] * p2[0])
    assert any(cross)


lines = st.tuples(small, small, small).filter(any)


@settings(max_examples=50, deadline=None)
@given(ternary(2), ternary(1), lines)
def test_restriction_is_a_ring_homomorphism(F, G, line):
    assert restrict_to_line(F * G, line) == restrict_to_line(F, line) * restrict_to_line(G, line)


@settings(max_examples=50, deadline=None)
@given(ternary(2), ternary(2), lines)
def test_restriction_is_additive(F, G, line):
    assert restrict_to_line(F + G, line) == restrict_to_line(F, line) + restrict_to_line(G, line)


@settings(max_examples=50, deadline=None)
@given(ternary(2), lines)
def test_restriction_vanishes_iff_line_divides(F, line):
    L = TernaryForm.linear(*line)
    assert restrict_to_line(L * F, line).is_zero()
    if not F.is_zero():
        x, y, z = sympy.symbols("x y z")
        fx = sum(c * x**e[0] * y**e[1] * z**e[2] for e, c in F.items())
        lx = line[0] * x + line[1] * y + line[2] * z
        # a single linear form is a Groebner basis, so remainder 0 means divisible
        is_factor = sympy.div(fx, lx, x, y, z)[1] == 0
        assert restrict_to_line(F, line).is_zero() == is_factor


def test_common_root():
    s, t = BinaryForm.linear(1, 0), BinaryForm.linear(0, 1)
    assert have_common_root(s * t, s * (s + t))
    assert not have_common_root(s * t, s * s + t * t)
    assert not have_common_root(BinaryForm.constant(3), s)
    assert have_common_root(BinaryForm.zero(1), s)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 7, 2_147_483_647]))
def test_modular_rank_is_a_lower_bound(rows, p):
    M = ExactMatrix(rows)
    assert rank_mod_p(M, p) <= rank(M)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_modular_rank_large_prime_matches_sympy(rows):
    # entries are tiny, so no minor is divisible by the large prime
    assert rank_mod_p(ExactMatrix(rows)) == sympy.Matrix(rows).rank()


def test_modular_rank_can_drop():
    M = ExactMatrix([[1, 1], [1, 4]])
    assert rank(M) == 2 and rank_mod_p(M, 3) == 1


def test_modular_rank_rationals():
    M = ExactMatrix([[Fraction(1, 2), 1], [1, 2]])
    assert rank_mod_p(M) == 1
