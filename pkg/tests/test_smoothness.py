import json

import pytest
from hypothesis import given, settings, strategies as st

from bruhatsmooth.coxeter import enumerate_group
from bruhatsmooth.smoothness import (
    BrokenRhombus, DegreeDefect, RegularGraph, certificate_to_dict, cross_validate,
    find_broken_rhombi, rationally_smooth_br, rationally_smooth_cp, validate_rhombus,
)

from helpers import element, system


def test_regular_example():
    cert = rationally_smooth_cp(system("A2").longest())
    assert cert.rationally_smooth and cert.smooth
    assert cert.evidence == RegularGraph(3) and cert.interval_size == 6


def test_d4_defect():
    w = element(system("D4"), "21342")
    cert = rationally_smooth_cp(w)
    assert not cert.rationally_smooth and cert.smooth is False
    assert cert.evidence == DegreeDefect(w.system.identity, 7, 5)


def test_d4_first_rhombus():
    D4 = system("D4")
    w = element(D4, "21342")
    r = find_broken_rhombi(w)[0]
    assert (r.x, r.u, r.v) == (element(D4, "23"), element(D4, "2"), element(D4, "12"))
    assert element(D4, "123") in r.witnesses_y
    assert validate_rhombus(r, w)
    assert rationally_smooth_br(w).evidence == r


def test_d4_all_rhombi_validate():
    w = element(system("D4"), "21342")
    rhombi = find_broken_rhombi(w, "all")
    assert len(rhombi) == 6
    assert len({(r.x, r.u, r.v) for r in rhombi}) == 6
    assert all(validate_rhombus(r, w) for r in rhombi)
    literal = find_broken_rhombi(w, "all", equal_length=False)
    assert len(literal) == 12
    assert all(validate_rhombus(r, w, equal_length=False) for r in literal)


def test_validate_rejects_tampering():
    D4 = system("D4")
    w = element(D4, "21342")
    r = find_broken_rhombi(w)[0]
    assert not validate_rhombus(BrokenRhombus(r.x, r.u, r.v, r.witnesses_y[:1]), w)
    assert not validate_rhombus(BrokenRhombus(r.x, D4.identity, r.v, r.witnesses_y), w)
    assert not validate_rhombus(r, D4.longest())


def test_c2_literal_definition_misfires():
    w = element(system("C2"), "121")
    assert rationally_smooth_cp(w).rationally_smooth
    assert rationally_smooth_br(w).rationally_smooth
    assert not rationally_smooth_br(w, equal_length=False).rationally_smooth
    assert rationally_smooth_cp(w).smooth is None


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "D4", "G2"])
def test_cross_validation(label):
    report = cross_validate(system(label))
    assert report.checked == system(label).order
    assert report.disagreements == []


def test_cross_validation_counts():
    # rationally smooth elements of S4: the 1324/2143-avoiding permutations
    assert cross_validate(system("A3")).rationally_smooth == 22
    assert cross_validate(system("B2")).rationally_smooth == 8


def test_cross_validation_parallel():
    a = cross_validate(system("A3"), jobs=2).to_dict()
    assert a == cross_validate(system("A3")).to_dict()


@pytest.mark.parametrize("label", ["A3", "D4"])
def test_literal_definition_agrees_in_simply_laced(label):
    for w in enumerate_group(system(label)):
        assert rationally_smooth_br(w, equal_length=False).rationally_smooth == rationally_smooth_cp(w).rationally_smooth


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A4", "B3", "C3", "D4", "G2"]), st.lists(st.integers(1, 4), max_size=12))
def test_every_rhombus_validates(label, word):
    W = system(label)
    w = W.element([(s - 1) % W.rank + 1 for s in word])
    rhombi = find_broken_rhombi(w, "all")
    assert bool(rhombi) != rationally_smooth_cp(w).rationally_smooth
    for r in rhombi:
        assert validate_rhombus(r, w)
        assert r.x.length == r.v.length == r.u.length + 1 or r.u.length < r.x.length


def test_certificate_json():
    w = element(system("D4"), "21342")
    doc = certificate_to_dict(rationally_smooth_cp(w), find_broken_rhombi(w, "all"))
    assert doc["defect"] == {"vertex": "e", "degree": 7}
    assert doc["rhombus"]["x"] == "23" and len(doc["rhombi"]) == 6
    assert doc["smooth"] is False
    json.dumps(doc)
    doc = certificate_to_dict(rationally_smooth_cp(element(system("B2"), "121")))
    assert doc["regular"] and "smooth" not in doc
