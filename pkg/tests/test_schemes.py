import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from wdrd import constructions as C
from wdrd.graph import Digraph, new_digraph, two_way_distance, underlying_graph
from wdrd.schemes import (
    IntersectionArray,
    IntersectionTensor,
    RegularityWitness,
    RelationPartition,
    SchemeError,
    count_at,
    drg_check,
    is_commutative,
    lemma21_violations,
    relation_partition,
    scheme_axioms_check,
    semicomplete_wdrd_profile,
    verify_structural_lemmas,
    wdrd_check,
)

T = C.cayley((3,), [1])
CYCLE4 = C.cayley((4,), [1])
K4_ORIENTED = C.cayley((4,), [1, 2])
DOOB_ORIENTED = C.cayley((4, 4), C.DOOB_ORIENTED_CONNECTION)


def partition_of(g):
    return relation_partition(two_way_distance(g))


def test_relation_partition_examples():
    assert partition_of(CYCLE4).labels == [(0, 0), (1, 3), (2, 2), (3, 1)]
    assert partition_of(K4_ORIENTED).labels == [(0, 0), (1, 1), (1, 2), (2, 1)]
    assert partition_of(C.hamming(2, 3)).labels == [(0, 0), (1, 1), (2, 2)]


def test_relation_partition_invariants():
    part = partition_of(DOOB_ORIENTED)
    assert part.classes[(0, 0)] == [(x, x) for x in range(16)]
    for (x, y), (a, b) in part.rel.items():
        assert part.rel[y, x] == (b, a)
    assert sum(len(c) for c in part.classes.values()) == 256


def test_triangle_tensor():
    t = wdrd_check(T)
    assert t[(1, 2), (2, 1), (2, 1)] == 1
    assert is_commutative(t) is True


def test_non_regular_orientation_witness():
    g = new_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 3)])
    w = wdrd_check(g)
    assert isinstance(w, RegularityWitness) and not w
    assert w.kind == "non-constant-intersection"
    assert w.triple == ((0, 0), (1, 1), (1, 1))
    assert w.pairs == ((0, 0), (1, 1)) and w.values == (1, 0)
    # recount at the witness with the direct scan
    for pair, v in zip(w.pairs, w.values):
        assert count_at(g, pair, w.triple[1], w.triple[2]) == v


def test_not_strongly_connected_witness():
    w = wdrd_check(new_digraph(3, [(0, 1), (1, 2)]))
    assert w.kind == "not-strongly-connected" and w.pairs == ((1, 0),)


def test_doob_orientation_is_wdrd():
    t = wdrd_check(DOOB_ORIENTED)
    assert isinstance(t, IntersectionTensor) and is_commutative(t) is True


def test_commutativity():
    assert is_commutative(wdrd_check(C.hamming(2, 3))) is True
    labels = [(0, 0), (1, 2), (2, 1)]
    p = np.zeros((3, 3, 3), dtype=np.int64)
    p[0, 1, 2] = 1
    w = is_commutative(IntersectionTensor(labels, p))
    assert w.kind == "non-commutative" and w.triple == ((0, 0), (1, 2), (2, 1)) and w.values == (1, 0)


def small_wdrds():
    return [T, CYCLE4, K4_ORIENTED, C.cayley((4, 2), [(1, 0), (0, 1)]), DOOB_ORIENTED,
            C.cartesian_product(K4_ORIENTED, K4_ORIENTED), C.cartesian_product(T, T),
            C.paley_tournament(7), C.hamming(2, 3), C.shrikhande(), C.folded_cube(5)]


@pytest.mark.parametrize("g", small_wdrds(), ids=lambda g: repr(g))
def test_tensor_matches_oracle_and_identities(g):
    t = wdrd_check(g)
    ref = oracle.tensor(g.n, oracle.arcs_of(g))
    assert ref is not None
    labels, p = ref
    assert t.labels == labels
    for h, i, j in itertools.product(labels, repeat=3):
        assert t[h, i, j] == p[h, i, j]
    assert lemma21_violations(t) == []
    assert t.n == g.n
    for lab in t.labels:
        assert t.k[lab] == t[(0, 0), lab, (lab[1], lab[0])]
        for i, j in itertools.product(t.labels, repeat=2):
            assert t[lab, i, j] <= min(t.k[i], t.k[(j[1], j[0])])


@pytest.mark.parametrize("g", small_wdrds(), ids=lambda g: repr(g))
def test_axioms_cross_validate(g):
    t = wdrd_check(g)
    rep = scheme_axioms_check(partition_of(g))
    assert rep.ok, rep.witnesses
    assert len(rep.constants) == len(t.labels) ** 3
    for (h, i, j), v in rep.constants.items():
        assert t[h, i, j] == v


def test_axioms_detect_merged_diagonal():
    part = partition_of(T)
    rel = {pair: ((1, 2) if lab == (0, 0) else lab) for pair, lab in part.rel.items()}
    rep = scheme_axioms_check(RelationPartition(3, rel))
    assert not rep.passed["i"]


def test_axioms_detect_broken_transpose_and_constancy():
    g = new_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 3)])
    rep = scheme_axioms_check(partition_of(g))
    assert rep.passed["i"] and rep.passed["ii"] and rep.passed["iii"]
    assert not rep.passed["iv"] and not rep.constants
    rel = dict(partition_of(CYCLE4).rel)
    rel[0, 1] = (9, 9)
    rep = scheme_axioms_check(RelationPartition(4, rel))
    assert not rep.passed["iii"]


def test_hamming_scheme_symmetric():
    part = partition_of(C.hamming(2, 3))
    rep = scheme_axioms_check(part)
    assert rep.ok
    assert all(a == b for a, b in part.labels)


def test_drg_check_examples():
    assert drg_check(C.hamming(3, 2)) == IntersectionArray(3, (3, 2, 1), (1, 2, 3), (0, 0, 0, 0))
    arr = drg_check(C.shrikhande())
    assert (arr.b, arr.c, arr.a) == ((6, 3), (1, 2), (0, 2, 4))
    w = drg_check(CYCLE4)
    assert w.kind == "not-symmetric"


def test_drg_check_rejects_path():
    path = new_digraph(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    w = drg_check(path)
    assert w.kind == "non-constant-bi-ci" and w.triple == ("b", 0)


@st.composite
def undirected_graphs(draw):
    n = draw(st.integers(2, 7))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    adj = np.zeros((n, n), dtype=bool)
    for u, v in chosen:
        adj[u, v] = adj[v, u] = True
    return Digraph(adj)


@settings(max_examples=200, deadline=None)
@given(undirected_graphs())
def test_undirected_wdrd_iff_drg(g):
    t, arr = wdrd_check(g), drg_check(g)
    assert bool(isinstance(t, IntersectionTensor)) == bool(isinstance(arr, IntersectionArray))
    if isinstance(arr, IntersectionArray):
        for i in range(arr.d + 1):
            assert t.get((i, i), (1, 1), (i, i)) == arr.a[i]
            if i < arr.d:
                assert t[(i, i), (1, 1), (i + 1, i + 1)] == arr.b[i]
            if i > 0:
                assert t[(i, i), (1, 1), (i - 1, i - 1)] == arr.c[i - 1]


@st.composite
def cayley_digraphs(draw):
    n = draw(st.integers(2, 10))
    conn = draw(st.lists(st.integers(1, n - 1), min_size=1, unique=True))
    return C.cayley((n,), conn)


@settings(max_examples=150, deadline=None)
@given(st.one_of(cayley_digraphs(), undirected_graphs()))
def test_wdrd_check_agrees_with_oracle(g):
    t = wdrd_check(g)
    ref = oracle.tensor(g.n, oracle.arcs_of(g))
    assert isinstance(t, IntersectionTensor) == (ref is not None)
    if ref is not None:
        assert t.labels == ref[0]
        assert all(t[key] == v for key, v in ref[1].items())
        assert lemma21_violations(t) == []
    else:
        assert wdrd_check(g) == t  # deterministic first witness
        if t.kind == "non-constant-intersection":
            for pair, v in zip(t.pairs, t.values):
                assert count_at(g, pair, t.triple[1], t.triple[2]) == v


def test_semicomplete_profiles():
    p = semicomplete_wdrd_profile(T)
    assert p.ok and p.girth == 3 and p.labels == [(0, 0), (1, 2), (2, 1)]
    p = semicomplete_wdrd_profile(K4_ORIENTED)
    assert p.ok and p.girth == 2 and p.labels == [(0, 0), (1, 1), (1, 2), (2, 1)]
    p = semicomplete_wdrd_profile(C.paley_tournament(7))
    assert p.ok and p.which == "girth-3" and p.diameter == 2
    with pytest.raises(SchemeError):
        semicomplete_wdrd_profile(C.complete_graph(4))
    with pytest.raises(SchemeError):
        semicomplete_wdrd_profile(CYCLE4)


def test_structural_lemmas_doob_orientation():
    res = verify_structural_lemmas(wdrd_check(DOOB_ORIENTED), drg_check(C.shrikhande()))
    assert res["s=t"].status == "pass" and res["s=t"].detail == [(3, 1)]
    assert wdrd_check(DOOB_ORIENTED)[(2, 2), (1, 2), (1, 2)] == 1
    assert res["a1=2"].status == "pass"


def test_structural_lemmas_gates():
    res = verify_structural_lemmas(wdrd_check(C.cartesian_product(T, T)), drg_check(C.hamming(2, 3)))
    assert res["a1=2"].status == "not applicable"
    res = verify_structural_lemmas(wdrd_check(C.hamming(2, 2)), drg_check(C.hamming(2, 2)))
    assert res["s=t"].status == "pass" and res["s=t"].detail == [(2, 2)]
    res = verify_structural_lemmas(wdrd_check(C.hamming(1, 4)), drg_check(C.hamming(1, 4)))
    assert res["s=t"].status == "not applicable"


def test_structural_lemma_failure_is_reported():
    # doctor a tensor so p^{(2,2)}_{(1,2),(1,2)} = 2, which the c2 = 2 lemma forbids
    t = wdrd_check(DOOB_ORIENTED)
    p = t.p.copy()
    i22, i12 = t.index[(2, 2)], t.index[(1, 2)]
    p[i22, i12, i12] = 2
    res = verify_structural_lemmas(IntersectionTensor(t.labels, p), drg_check(C.shrikhande()))
    assert res["s=t"].status == "fail"


def test_structural_lemmas_require_commutative():
    labels = [(0, 0), (1, 2), (2, 1)]
    p = np.zeros((3, 3, 3), dtype=np.int64)
    p[0, 1, 2] = 1
    with pytest.raises(SchemeError):
        verify_structural_lemmas(IntersectionTensor(labels, p), drg_check(C.hamming(1, 3)))


def test_tensor_json_shape_and_stability():
    t = wdrd_check(K4_ORIENTED)
    data = t.to_json()
    assert list(data) == ["labels", "valencies", "p", "commutative"]
    assert data["labels"] == sorted(data["labels"])
    keys = [(e["h"], e["i"], e["j"]) for e in data["p"]]
    assert keys == sorted(keys) and all(e["value"] > 0 for e in data["p"])
    assert data["valencies"] == {"0,0": 1, "1,1": 1, "1,2": 1, "2,1": 1}
    assert json.dumps(data) == json.dumps(wdrd_check(K4_ORIENTED).to_json())
