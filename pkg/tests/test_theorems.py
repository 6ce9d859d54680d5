import json

import pytest

import oracle
from wdrd import constructions as C
from wdrd.graph import GraphError, girth, new_digraph
from wdrd.isomorphism import are_isomorphic
from wdrd.schemes import wdrd_check
from wdrd.theorems import (
    HypothesisError,
    base_graph,
    complete_graph_classes,
    expected_digraphs,
    verify_product_proposition,
    verify_theorem,
)

T = C.cayley((3,), [1])
K4_ORIENTED = C.cayley((4,), [1, 2])


def test_base_graph():
    assert base_graph("hamming", {"d": 2, "q": 3}) == C.hamming(2, 3)
    assert base_graph("folded_cube", {"n": 5}) == C.folded_cube(5)
    assert base_graph("doob", {"d1": 1, "d2": 0}) == C.shrikhande()
    with pytest.raises(GraphError):
        base_graph("petersen", {})


def test_complete_graph_classes():
    assert [are_isomorphic(g, T) is not None for g in complete_graph_classes(3)] == [True]
    assert [are_isomorphic(g, K4_ORIENTED) is not None for g in complete_graph_classes(4)] == [True]
    assert complete_graph_classes(5) == ()
    six = complete_graph_classes(6)
    assert len(six) == 2 and all(girth(g) == 2 for g in six)
    assert wdrd_check(six[0]) != wdrd_check(six[1])
    assert complete_graph_classes(7)[0] == C.paley_tournament(7)
    assert complete_graph_classes(8) == ()


def test_expected_lists():
    names = lambda fam, **p: [n for n, _ in expected_digraphs(fam, p)]
    assert names("hamming", d=2, q=3) == ["K3-class0 x K3-class0"]
    assert names("hamming", d=3, q=4) == []  # girth-2 factors only go up to two
    assert len(names("hamming", d=2, q=6)) == 2
    assert names("hamming", d=4, q=2) == []
    assert names("folded_cube", n=4) == [] and names("folded_cube", n=5) == []
    assert names("doob", d1=1, d2=1) == []
    (_, g), = expected_digraphs("hamming", {"d": 2, "q": 3})
    assert g == C.cartesian_product(T, T)


@pytest.mark.parametrize("family,params", [
    ("hamming", {"d": 2, "q": 2}),
    ("hamming", {"d": 3, "q": 2}),
    ("hamming", {"d": 1, "q": 3}),
    ("hamming", {"d": 1, "q": 4}),
    ("hamming", {"d": 1, "q": 5}),
    ("folded_cube", {"n": 3}),
])
def test_small_cases_pass_with_necessity(family, params):
    v = verify_theorem(family, params, budget_secs=None)
    assert v.mode == "necessity" and v.complete
    assert v.passed, v.discrepancies
    assert len([m for m in v.matches if m.startswith("necessity")]) == len(v.expected)
    json.dumps(v.to_json())


def test_necessity_finds_unlisted_class_on_h23():
    v = verify_theorem("hamming", {"d": 2, "q": 3}, prune=["line-local"])
    assert v.mode == "necessity" and v.complete and not v.passed
    assert v.matches == ["sufficiency: K3-class0 x K3-class0", "necessity: K3-class0 x K3-class0"]
    (msg,) = v.discrepancies
    assert "unexpected class" in msg and "(2, 3)" in msg
    extra = [s for s in v.report.commutative_classes()
             if are_isomorphic(s.digraph, C.cartesian_product(T, T)) is None]
    (sol,) = extra
    k3_t = C.cayley((3, 3), [(1, 0), (2, 0), (0, 1)])
    assert are_isomorphic(sol.digraph, k3_t) is not None
    assert oracle.tensor(k3_t.n, oracle.arcs_of(k3_t)) is not None


def test_necessity_finds_class_on_folded_4_cube():
    v = verify_theorem("folded_cube", {"n": 4}, prune=["regular-degrees"])
    assert v.complete and not v.passed and v.expected == []
    (sol,) = v.report.commutative_classes()
    assert are_isomorphic(sol.digraph, C.cayley((4, 2), [(1, 0), (1, 1)])) is not None
    assert sol.tensor.labels == [(0, 0), (1, 3), (2, 2), (3, 1), (4, 4)]


def test_large_bases_are_sufficiency_only():
    v = verify_theorem("doob", {"d1": 1, "d2": 0})
    assert v.mode == "sufficiency-only" and v.passed and v.report is None
    assert "3^48" in v.notes[0]
    assert verify_theorem("folded_cube", {"n": 5}).mode == "sufficiency-only"
    assert verify_theorem("hamming", {"d": 2, "q": 4}, necessity=False).passed


def test_wrong_expectations_are_reported():
    v = verify_theorem("hamming", {"d": 2, "q": 2}, expected=[], budget_secs=None)
    assert not v.passed and "unexpected class" in v.discrepancies[0]
    v = verify_theorem("hamming", {"d": 2, "q": 2}, expected=[C.hamming(2, 2)], necessity=False)
    assert not v.passed and "undirected" in v.discrepancies[0]
    v = verify_theorem("hamming", {"d": 2, "q": 2}, expected=[("C3", T)], necessity=False)
    assert not v.passed and "not isomorphic to the base" in v.discrepancies[0]
    bad = new_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 3)])
    v = verify_theorem("hamming", {"d": 2, "q": 2}, expected=[bad], necessity=False)
    assert "not weakly distance-regular" in v.discrepancies[0]


def test_budget_exhaustion_is_incomplete():
    v = verify_theorem("hamming", {"d": 3, "q": 2}, budget_leaves=5)
    assert not v.complete and any("budget" in n for n in v.notes)
    # a missing expected class is not blamed on an unfinished search
    assert v.passed


def test_product_proposition():
    pv = verify_product_proposition(K4_ORIENTED, K4_ORIENTED)
    assert pv.passed and pv.pairs_checked == 256 and not pv.failures
    assert pv.tensor == wdrd_check(C.cartesian_product(K4_ORIENTED, K4_ORIENTED))
    six = complete_graph_classes(6)
    assert verify_product_proposition(six[0], six[0]).passed


def test_product_hypotheses():
    with pytest.raises(HypothesisError, match="girth 3"):
        verify_product_proposition(T, T)
    with pytest.raises(HypothesisError, match="semicomplete"):
        verify_product_proposition(C.cayley((4,), [1]), K4_ORIENTED)
    with pytest.raises(HypothesisError, match="weakly"):
        verify_product_proposition(new_digraph(3, [(0, 1), (1, 2), (0, 2)]), K4_ORIENTED)
    six = complete_graph_classes(6)
    with pytest.raises(HypothesisError, match="different"):
        verify_product_proposition(six[0], six[1])
