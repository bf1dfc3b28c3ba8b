import pytest

from bruhatsmooth.coxeter import enumerate_group, multiply, is_involution, longest_element, parabolic_subsets
from bruhatsmooth.errors import CapExceeded, PreconditionViolated
from bruhatsmooth.smoothness import DegreeDefect, validate_rhombus
from bruhatsmooth.verifier import (
    ProofWitness, classify_involution, involutions, is_parabolic_longest, proof_witness,
    verify_theorem,
)

from helpers import element, system
from oracles import perm_involution_count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_involution_count_matches_permutations(n):
    assert len(involutions(system(f"A{n}"))) == perm_involution_count(n + 1)


@pytest.mark.parametrize("label", ["B3", "D4", "G2"])
def test_involutions_by_brute_force(label):
    W = system(label)
    assert involutions(W) == [w for w in enumerate_group(W) if is_involution(w)]


@pytest.mark.parametrize("label", ["A3", "B3", "D4"])
def test_parabolic_longest_by_subsets(label):
    W = system(label)
    expected = {longest_element(W, J) for J in parabolic_subsets(W)}
    assert {v for v in involutions(W) if is_parabolic_longest(v)} == expected
    assert len(expected) == 2 ** W.rank


def test_proof_witness_preconditions():
    A3 = system("A3")
    with pytest.raises(PreconditionViolated):
        proof_witness(element(A3, "12"))
    with pytest.raises(PreconditionViolated):
        proof_witness(element(A3, "121"))
    with pytest.raises(PreconditionViolated):
        proof_witness(element(system("C2"), "121"))


def test_a3_singular_involutions():
    A3 = system("A3")
    singular = [v for v in involutions(A3) if not is_parabolic_longest(v)]
    assert sorted(v.label for v in singular) == ["12321", "2132"]
    assert proof_witness(element(A3, "2132")) == DegreeDefect(A3.identity, 5, 4)
    assert proof_witness(element(A3, "12321")) == DegreeDefect(A3.identity, 6, 5)


@pytest.mark.parametrize("label", ["D4", "D5"])
def test_rhombus_witnesses_validate(label):
    W = system(label)
    seen = 0
    for v in involutions(W):
        if is_parabolic_longest(v):
            continue
        w = proof_witness(v)
        if isinstance(w, ProofWitness):
            r = w.rhombus
            assert validate_rhombus(r, v)
            s = W.generator(w.s)
            t = w.t.element
            assert r.x == multiply(s, t) and r.v == multiply(t, s)
            assert r.u == multiply(multiply(s, t), s)
            assert w.s not in v.left_descents and w.s in v.word
            seen += 1
        else:
            assert w.degree > v.length
    assert seen == {"D4": 1, "D5": 2}[label]


def test_classify():
    verdict = classify_involution(element(system("A3"), "2132"))
    assert not verdict.is_parabolic_longest and not verdict.certificate.rationally_smooth
    assert verdict.support == {1, 2, 3}


def test_census_a3():
    report = verify_theorem("A3")
    assert report.involution_count == 10
    assert (len(report.smooth), len(report.singular)) == (8, 2)
    assert report.equivalence_holds and report.degree_defects == 2


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "D4"])
def test_simply_laced_sweeps(label):
    report = verify_theorem(label)
    assert report.equivalence_holds
    assert len(report.smooth) == 2 ** system(label).rank


def test_c2_boundary():
    report = verify_theorem("C2")
    assert report.mismatches == ["121", "212"]
    assert not report.equivalence_holds
    doc = report.to_dict(timing=False)
    assert doc["verdict_kind"] == "rationally_smooth" and "note" in doc and "elapsed_ms" not in doc


@pytest.mark.parametrize("label", ["B3", "G2"])
def test_multiply_laced_sweeps_do_not_raise(label):
    report = verify_theorem(label)
    assert report.mismatches


def test_parallel_sweep_matches():
    a = verify_theorem("D4", jobs=2).to_dict(timing=False)
    assert a == verify_theorem("D4").to_dict(timing=False)


def test_long_run_gate():
    with pytest.raises(CapExceeded):
        verify_theorem("D6")
