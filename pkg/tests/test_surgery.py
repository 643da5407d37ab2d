import pytest

from pogarr import surgery
from pogarr.arrangement import Arrangement, ProjLine, h_value, sample_lines, t_value
from pogarr.corpus import CORPUS
from pogarr.surgery import (
    CertificateMismatch,
    HuntConfig,
    NTStatus,
    abe_dichotomy_check,
    add,
    addition_splitting_check,
    allowed_h_check,
    allowed_h_values,
    delete,
    hunt_counterexample,
    minus_candidates,
    nt_criterion,
    ntfree_bruteforce,
    ntfree_decide,
    predict_deletion,
)
from pogarr.syzygy import Classification, Kind, PreconditionError, classify

EX = CORPUS["paper-2.10"]
NF = CORPUS["paper-3.6"]
A33, B33 = CORPUS["paper-3.3-p3q3-A"], CORPUS["paper-3.3-p3q3-B"]
TRI = CORPUS["triangle"]
L = ProjLine


def test_delete_add():
    xy = Arrangement.of("x", "y")
    assert delete(TRI, L(0, 0, 1)) == xy
    assert add(xy, L(0, 0, 1)) == TRI
    assert delete(add(xy, L(1, 1, 1)), L(1, 1, 1)) == xy
    with pytest.raises(ValueError):
        delete(xy, L(0, 0, 1))
    with pytest.raises(ValueError):
        add(xy, L(2, 0, 0))


@pytest.mark.parametrize(
    "line,h,predicted",
    [
        (L(1, 4, 1), 6, Classification.free(2, 3)),
        (L(1, 0, 0), 4, Classification.pog(3, 3, 4)),
        (L(1, 1, 0), 4, Classification.pog(3, 3, 4)),
        (L(1, -1, 0), 4, Classification.pog(3, 3, 4)),
        (L(0, 0, 1), 5, Classification.pog(2, 4, 4)),
        (L(0, 1, 1), 5, Classification.pog(2, 4, 4)),
        (L(0, 1, 0), 3, None),
    ],
)
def test_predict_deletion_worked_example(line, h, predicted):
    p = predict_deletion(EX, line)
    assert p.h == h and p.predicted == predicted
    actual = classify(delete(EX, line))
    if predicted is None:
        assert actual.kind is Kind.OTHER
    else:
        assert actual == predicted


@pytest.mark.parametrize("name", ["paper-2.10", "paper-3.6", "paper-3.3-p3q3-A"])
def test_prediction_soundness(name):
    A = CORPUS[name]
    for l in A.lines:
        p = predict_deletion(A, l)
        if p.predicted is not None:
            assert classify(delete(A, l)) == p.predicted


def test_predict_requires_pog():
    with pytest.raises(PreconditionError):
        predict_deletion(TRI, L(1, 0, 0))


@pytest.mark.parametrize("name", ["paper-2.10", "paper-3.6", "paper-3.3-p3q3-A"])
def test_allowed_h(name):
    assert allowed_h_check(CORPUS[name]) == []


def test_allowed_h_values():
    a, b, d = 3, 4, 5
    assert [h for h in range(10) if allowed_h_values(a, b, d, h)] == [0, 1, 2, 3, 4, 5, 6]
    assert [h for h in range(12) if allowed_h_values(3, 5, 7, h)] == [0, 1, 2, 3, 4, 5, 6, 8]


def test_addition_splitting_triangle():
    H = L(1, 1, 1)
    for l in sample_lines(add(TRI, H), 5, seed=1):
        assert addition_splitting_check(TRI, H, l)


def test_addition_splitting_member_line():
    # l in A: Ziegler exponents still grow in one component
    for l in A33.lines:
        assert addition_splitting_check(A33, L(1, 0, 0), l)


def test_addition_splitting_refuses_added_line():
    with pytest.raises(ValueError):
        addition_splitting_check(A33, L(1, 0, 0), L(1, 0, 0))


def test_nt_criterion_logic():
    assert nt_criterion(7, 5, 6, True)
    assert not nt_criterion(7, 5, 4, True)  # l0 in A, h < d + 1: not NT-free
    assert nt_criterion(6, 4, 2, False)
    assert not nt_criterion(6, 4, 3, False)


def test_ntfree_decide_worked_example():
    v = ntfree_decide(EX)
    assert v.status is NTStatus.PLUS
    assert v.witness == L(1, 4, 1)
    assert v.certificate == Classification.free(2, 3)
    assert h_value(EX, v.witness) == 6


def test_ntfree_decide_two_point_family():
    v = ntfree_decide(A33)
    assert v.status is NTStatus.MINUS
    assert v.witness == L(1, 0, 0)
    assert v.certificate == Classification.free(3, 3)
    assert add(A33, v.witness).same_lines(B33)


def test_ntfree_decide_preconditions():
    with pytest.raises(PreconditionError):
        ntfree_decide(NF)
    with pytest.raises(PreconditionError):
        ntfree_decide(TRI)


def test_ntfree_decide_detects_mismatch(monkeypatch):
    real = surgery.classify

    def lying(A):
        if A.n == EX.n - 1:
            return Classification.other((3, 3, 3, 3))
        return real(A)

    monkeypatch.setattr(surgery, "classify", lying)
    with pytest.raises(CertificateMismatch):
        ntfree_decide(EX)


def test_bruteforce_nearly_free_example():
    v = ntfree_bruteforce(NF)
    assert v.status is NTStatus.BOTH
    plus = dict(v.plus_witnesses)
    minus = dict(v.minus_witnesses)
    assert plus[L(1, 0, 0)] == Classification.free(2, 2)
    assert minus[L(0, 2, 1)] == Classification.free(3, 3)


def test_bruteforce_worked_example():
    v = ntfree_bruteforce(EX)
    assert v.status is NTStatus.PLUS
    assert v.witness == L(1, 4, 1)
    assert [l for l, _ in v.plus_witnesses] == [L(1, 4, 1)]


def test_bruteforce_free_and_other():
    assert ntfree_bruteforce(TRI).status is NTStatus.NOT_APPLICABLE
    assert "input is free" in ntfree_bruteforce(TRI).note
    other = delete(EX, L(0, 1, 0))
    assert ntfree_bruteforce(other).status is NTStatus.NOT


def test_no_free_deletion_when_l0_outside():
    for l in A33.lines:
        assert not classify(delete(A33, l)).is_free


def test_no_free_addition_when_l0_inside():
    for H in minus_candidates(EX):
        assert not classify(add(EX, H)).is_free


@pytest.mark.parametrize("name", ["paper-2.10", "paper-3.3-p3q3-A"])
def test_decide_matches_bruteforce_plus_side(name):
    A = CORPUS[name]
    decided = ntfree_decide(A)
    brute = ntfree_bruteforce(A)
    assert (decided.status is NTStatus.PLUS) == bool(brute.plus_witnesses)


@pytest.mark.parametrize("name", ["triangle", "pencil-4", "near-pencil-5", "paper-3.3-p3q3-B"])
def test_abe_dichotomy(name):
    assert abe_dichotomy_check(CORPUS[name], additions=8) == []


def test_abe_dichotomy_two_point_deletion():
    assert classify(delete(B33, L(1, 0, 0))) == Classification.pog(3, 3, 4)


def test_abe_dichotomy_requires_free():
    with pytest.raises(PreconditionError):
        abe_dichotomy_check(EX)


def test_hunt_empty_and_corpus():
    assert hunt_counterexample(HuntConfig(count=0)).findings == []
    report = hunt_counterexample(HuntConfig(), corpus=list(CORPUS.values()))
    assert report.findings == []
    assert report.stats["samples"] == len(CORPUS)
    assert report.stats["nt-free"] == 2


def test_hunt_deterministic():
    cfg = HuntConfig(n_min=4, n_max=5, count=15, seed=7)
    r1, r2 = hunt_counterexample(cfg), hunt_counterexample(cfg)
    assert r1.stats == r2.stats and r1.findings == r2.findings
    assert r1.stats["samples"] == 15


def test_hunt_reports_t_and_h_consistency():
    for A in CORPUS.values():
        for l in A.lines:
            assert t_value(A, l) == A.n - h_value(A, l) - 1
