"""Compare orientation searches with the known classifications.

For Hamming, folded-cube and Doob bases, :func:`verify_theorem` checks that
the expected digraphs really are commutative weakly distance-regular
orientations of the base (sufficiency). When the base is small enough it
also runs the exhaustive search and compares class sets (necessity).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import constructions as C
from .graph import Digraph, GraphError, girth, is_semicomplete, is_undirected, two_way_distance, underlying_graph
from .isomorphism import are_isomorphic, dedup_isomorphic
from .schemes import IntersectionTensor, is_commutative, semicomplete_wdrd_profile, wdrd_check
from .search import OrientationSearchConfig, classify_orientations

NECESSITY_MAX_EDGES = 18
FACTOR_SEARCH_MAX_Q = 6
FAMILIES = ("hamming", "folded_cube", "doob")


class HypothesisError(GraphError):
    pass


@dataclass
class Verdict:
    family: str
    params: dict
    mode: str  # "necessity" or "sufficiency-only"
    passed: bool
    complete: bool = True
    expected: list = field(default_factory=list)
    matches: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    report: object = None

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "params": dict(self.params),
            "mode": self.mode,
            "passed": self.passed,
            "complete": self.complete,
            "expected": list(self.expected),
            "matches": list(self.matches),
            "discrepancies": list(self.discrepancies),
            "notes": list(self.notes),
        }
        if self.report is not None:
            out["search"] = self.report.to_json()
        return out


def base_graph(family: str, params: dict) -> Digraph:
    if family == "hamming":
        return C.hamming(params["d"], params["q"])
    if family == "folded_cube":
        return C.folded_cube(params["n"])
    if family == "doob":
        return C.doob(params["d1"], params["d2"])
    raise GraphError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _is_proper_commutative_wdrd(g: Digraph):
    t = wdrd_check(g)
    if not isinstance(t, IntersectionTensor):
        return None, f"not weakly distance-regular ({t.kind})"
    if is_commutative(t) is not True:
        return None, "not commutative"
    if is_undirected(g):
        return None, "undirected (no one-way arc)"
    return t, None


@lru_cache(maxsize=None)
def complete_graph_classes(q: int) -> tuple:
    """Proper commutative WDRD classes on K_q.

    Found by exhaustive search for q <= 6; beyond that only the Paley
    tournament is known to this module, so the list may be incomplete.
    """
    if q <= FACTOR_SEARCH_MAX_Q:
        rep = classify_orientations(OrientationSearchConfig(C.complete_graph(q), ["regular-degrees"]))
        return tuple(s.digraph for s in rep.commutative_classes())
    try:
        return (C.paley_tournament(q),)
    except GraphError:
        return ()


def _product_classes(q: int, d: int):
    """Products allowed by the Hamming classification, built from K_q classes."""
    factors = list(complete_graph_classes(q))
    info = [(f, girth(f), wdrd_check(f)) for f in factors]
    out = []
    for combo in itertools.combinations_with_replacement(range(len(info)), d):
        girths = {info[i][1] for i in combo}
        tensors = {info[i][2] for i in combo}
        if len(tensors) != 1 or len(girths) != 1:
            continue
        g = girths.pop()
        if g == 2 and d > 2:
            continue
        name = " x ".join(f"K{q}-class{i}" for i in combo)
        out.append((name, C.product_all([factors[i] for i in combo])))
    keep = dedup_isomorphic([g for _, g in out])
    return [out[i] for i in keep]


def expected_digraphs(family: str, params: dict) -> list[tuple[str, Digraph]]:
    """The classification's list for a base, as (name, digraph) pairs."""
    if family == "hamming":
        d, q = params["d"], params["q"]
        if q == 2:
            if d == 2:
                return [("Cay(Z4,{1})", C.cayley((4,), [1]))]
            if d == 3:
                return [("Cay(Z4xZ2,{(1,0),(0,1)})", C.cayley((4, 2), [(1, 0), (0, 1)]))]
            return []
        return _product_classes(q, d)
    if family == "folded_cube":
        if params["n"] == 3:
            # folded_cube(3) is K4 = H(1,4); read through the Hamming list
            return [("Cay(Z4,{1,2})", C.cayley((4,), [1, 2]))]
        return []
    if family == "doob":
        if (params["d1"], params["d2"]) == (1, 0):
            return [("Cay(Z4xZ4,{(1,0),(0,1),(-1,-1)})", C.cayley((4, 4), C.DOOB_ORIENTED_CONNECTION))]
        return []
    raise GraphError(f"unknown family {family!r}")


def verify_theorem(family: str, params: dict, expected=None, prune=(), jobs=1,
                   budget_leaves=2 ** 31, budget_secs=600.0, necessity=None) -> Verdict:
    """Check sufficiency always, and necessity when the search is feasible.

    ``expected`` is a list of digraphs or (name, digraph) pairs; by default
    the classification's own list is used. ``necessity`` forces (True) or
    skips (False) the exhaustive search; by default it runs when the base
    has at most ``NECESSITY_MAX_EDGES`` edges.
    """
    base = base_graph(family, params)
    if expected is None:
        expected = expected_digraphs(family, params)
    expected = [e if isinstance(e, tuple) else (f"expected{i}", e) for i, e in enumerate(expected)]
    edges = len(base.edges())
    if necessity is None:
        necessity = edges <= NECESSITY_MAX_EDGES
    verdict = Verdict(family, dict(params), "necessity" if necessity else "sufficiency-only", True,
                      expected=[name for name, _ in expected])
    if not necessity:
        verdict.notes.append(f"exhaustive search infeasible: 3^{edges} orientations")
    if family == "hamming" and params["q"] > FACTOR_SEARCH_MAX_Q:
        verdict.notes.append(f"K{params['q']} factor list is not exhaustive")

    for name, g in expected:
        _, why = _is_proper_commutative_wdrd(g)
        if why is None and are_isomorphic(underlying_graph(g), base) is None:
            why = "underlying graph is not isomorphic to the base"
        if why is None:
            verdict.matches.append(f"sufficiency: {name}")
        else:
            verdict.discrepancies.append(f"expected digraph {name} fails: {why}")

    if necessity:
        cfg = OrientationSearchConfig(base, prune, jobs=jobs, budget_leaves=budget_leaves,
                                      budget_secs=budget_secs, name=f"{family}{tuple(params.values())}")
        rep = classify_orientations(cfg)
        verdict.report = rep
        verdict.complete = rep.complete
        found = rep.commutative_classes()
        if not rep.complete:
            verdict.notes.append("search budget exhausted; necessity not established")
        unmatched = list(range(len(expected)))
        for s in found:
            hit = next((i for i in unmatched if are_isomorphic(s.digraph, expected[i][1]) is not None), None)
            if hit is None:
                verdict.discrepancies.append(
                    f"search found an unexpected class: orientation {s.states} with labels {s.tensor.labels}")
            else:
                unmatched.remove(hit)
                verdict.matches.append(f"necessity: {expected[hit][0]}")
            if is_semicomplete(s.digraph):
                prof = semicomplete_wdrd_profile(s.digraph)
                if not prof.ok:
                    verdict.discrepancies.append(f"semicomplete profile fails for {s.states}: {prof.failures}")
        if rep.complete:
            for i in unmatched:
                verdict.discrepancies.append(f"expected class {expected[i][0]} not found by search")
    verdict.passed = not verdict.discrepancies
    return verdict


@dataclass
class ProductVerdict:
    passed: bool
    tensor: IntersectionTensor | None
    pairs_checked: int
    failures: list


def verify_product_proposition(delta: Digraph, delta2: Digraph) -> ProductVerdict:
    """The product of two girth-2 semicomplete WDRDs with equal intersection
    numbers is weakly distance-regular, with additive two-way distance."""
    tensors = []
    for name, g in (("delta", delta), ("delta2", delta2)):
        if not is_semicomplete(g):
            raise HypothesisError(f"{name} is not semicomplete")
        t = wdrd_check(g)
        if not isinstance(t, IntersectionTensor):
            raise HypothesisError(f"{name} is not weakly distance-regular ({t.kind})")
        if girth(g) != 2:
            raise HypothesisError(f"{name} has girth {girth(g)}, not 2")
        tensors.append(t)
    if tensors[0] != tensors[1]:
        raise HypothesisError("delta and delta2 have different intersection numbers")
    prod = C.cartesian_product(delta, delta2)
    failures = []
    t = wdrd_check(prod)
    if not isinstance(t, IntersectionTensor):
        failures.append(f"product is not weakly distance-regular ({t.kind})")
        t = None
    td, td2, tp = two_way_distance(delta), two_way_distance(delta2), two_way_distance(prod)
    m = delta2.n
    checked = 0
    for x, y in itertools.product(range(delta.n), repeat=2):
        a = td[x, y]
        for x2, y2 in itertools.product(range(m), repeat=2):
            b = td2[x2, y2]
            got = tp[x * m + x2, y * m + y2]
            checked += 1
            if got != (a[0] + b[0], a[1] + b[1]):
                failures.append(f"additivity fails at ({x},{x2}),({y},{y2}): {got} != {a}+{b}")
    return ProductVerdict(not failures, t, checked, failures)
