import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pogarr.arrangement import (
    Arrangement,
    ParseError,
    ProjLine,
    ProjPoint,
    avoids_singular_points,
    defining_polynomial,
    h_value,
    intersect,
    parse_arrangement_text,
    parse_linear_form,
    parse_product,
    read_arrangement,
    sample_lines,
    singular_points,
    special_lines,
    t_value,
)
from pogarr.corpus import CORPUS, two_point_family
from pogarr.exactalg import TernaryForm


@pytest.mark.parametrize(
    "text,coords",
    [
        ("x+4y+z", (1, 4, 1)),
        ("y+z/2", (0, 2, 1)),
        ("y + z/2", (0, 2, 1)),
        ("-x", (1, 0, 0)),
        ("2x - 3y", (2, -3, 0)),
        ("2*x - 3*y", (2, -3, 0)),
        ("(1/2)x + (1/3)y", (3, 2, 0)),
        ("-2x-2y", (1, 1, 0)),
    ],
)
def test_parse_linear_form(text, coords):
    assert parse_linear_form(text).coords == coords


@pytest.mark.parametrize("text", ["x+1", "xy", "x^2", "0x", "x+", "", "w"])
def test_parse_linear_form_rejects(text):
    with pytest.raises(ParseError):
        parse_linear_form(text)


def test_scalings_dedup():
    assert ProjLine(2, 8, 2) == ProjLine(1, 4, 1) == ProjLine(-3, -12, -3)
    assert parse_linear_form("3x+12y+3z") == parse_linear_form("x+4y+z")


def test_zero_line_rejected():
    with pytest.raises(ValueError):
        ProjLine(0, 0, 0)


def test_parse_product():
    lines = parse_product("xyz(x+y)(x-y)(x+4y+z)(y+z)=0")
    assert len(lines) == 7 and lines[5] == ProjLine(1, 4, 1)
    assert Arrangement.from_product("xyz(x+y)(x-y)(x+4y+z)(y+z)") == CORPUS["paper-2.10"]


def test_file_format(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("# triangle plus one\n\n1 0 0\n0 1 0  # y\nz\nx + y + z\n1/2 1/2 1/2\n")
    with pytest.raises(ParseError) as exc:
        read_arrangement(p)
    assert exc.value.lineno == 7
    p.write_text("x\n0 1 0\nz\n")
    assert read_arrangement(p) == Arrangement.of("x", "y", "z")


def test_file_error_has_line_number():
    with pytest.raises(ParseError) as exc:
        parse_arrangement_text("x\ny\nx^2\n")
    assert exc.value.lineno == 3


def test_defining_polynomial():
    X, Y, Z = (TernaryForm.linear(*v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert defining_polynomial(Arrangement.of("x", "y", "z")) == X * Y * Z
    assert defining_polynomial(Arrangement.of("x")) == X
    f = defining_polynomial(CORPUS["paper-2.10"])
    assert f.degree == 7
    assert f == X * Y * Z * (X + Y) * (X - Y) * (X + 4 * Y + Z) * (Y + Z)


def test_intersect():
    assert intersect(ProjLine(1, 0, 0), ProjLine(0, 1, 0)) == ProjPoint(0, 0, 1)
    assert intersect(ProjLine(1, 0, 0), ProjLine(0, 0, 1)) == ProjPoint(0, 1, 0)
    assert intersect(ProjLine(1, 4, 1), ProjLine(0, 1, 1)) == ProjPoint(3, -1, 1)
    with pytest.raises(ValueError):
        intersect(ProjLine(1, 0, 0), ProjLine(2, 0, 0))


def test_singular_points_triangle_and_pencil():
    sp = singular_points(Arrangement.of("x", "y", "z"))
    assert len(sp) == 3 and all(p.multiplicity == 2 for p in sp)
    sp = singular_points(CORPUS["pencil-4"])
    assert len(sp) == 1 and sp[0].multiplicity == 4


def test_singular_points_two_point_family():
    _, B = two_point_family(3, 3)
    mults = sorted(p.multiplicity for p in singular_points(B))
    assert mults == [2] * 9 + [4, 4]
    big = {p.point for p in singular_points(B) if p.multiplicity > 2}
    assert big == {ProjPoint(0, 0, 1), ProjPoint(0, 1, 0)}


def test_h_and_t_worked_example():
    A = CORPUS["paper-2.10"]
    assert h_value(A, ProjLine(1, 4, 1)) == 6
    assert t_value(A, ProjLine(1, 4, 1)) == 0
    assert h_value(A, ProjLine(0, 1, 0)) == 3
    assert t_value(A, ProjLine(0, 1, 0)) == 3
    T = Arrangement.of("x", "y", "z")
    assert h_value(T, ProjLine(1, 0, 0)) == 2 and t_value(T, ProjLine(1, 0, 0)) == 0


def test_h_for_line_outside():
    A, _ = two_point_family(3, 3)
    assert h_value(A, ProjLine(1, 0, 0)) == 2
    with pytest.raises(ValueError):
        t_value(A, ProjLine(1, 0, 0))


@pytest.mark.parametrize("name", list(CORPUS))
def test_incidence_identities(name):
    A = CORPUS[name]
    sp = singular_points(A)
    assert sum(comb(p.multiplicity, 2) for p in sp) == comb(A.n, 2)
    for l in A.lines:
        assert t_value(A, l) == A.n - h_value(A, l) - 1


def test_sample_lines_deterministic_and_generic():
    A = CORPUS["paper-2.10"]
    s1 = sample_lines(A, 25, seed=3)
    assert s1 == sample_lines(A, 25, seed=3)
    assert len(set(s1)) == 25
    assert all(l not in A and avoids_singular_points(A, l) for l in s1)


def test_special_lines_pass_through_two_singular_points():
    A = CORPUS["paper-3.6"]
    pts = [p.point for p in singular_points(A)]
    for l in special_lines(A):
        assert l not in A
        assert sum(l.contains(p) for p in pts) >= 2
    assert ProjLine(0, 2, 1) in special_lines(A)


def test_duplicates_rejected():
    with pytest.raises(ValueError):
        Arrangement.of("x", "2x")


@settings(max_examples=20, deadline=None)
@given(st.randoms(use_true_random=False))
def test_shuffle_invariance_of_incidence(rnd):
    A = CORPUS["paper-2.10"]
    lines = list(A.lines)
    rnd.shuffle(lines)
    B = Arrangement(tuple(lines))
    assert {p.point: p.multiplicity for p in singular_points(A)} == {p.point: p.multiplicity for p in singular_points(B)}
    assert defining_polynomial(A) == defining_polynomial(B)
    assert B.same_lines(A)
