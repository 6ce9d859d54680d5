"""Relation partitions, intersection tensors and regularity checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .graph import (
    Digraph,
    GraphError,
    NotStronglyConnected,
    TwoWayDistanceTable,
    girth,
    is_complete,
    is_semicomplete,
    is_undirected,
    two_way_distance,
)


class SchemeError(GraphError):
    pass


@dataclass(frozen=True)
class RegularityWitness:
    """Why a regularity check failed.

    ``pairs`` are the two ordered pairs whose counts differ (a single pair
    for not-strongly-connected / not-symmetric), ``triple`` the label triple
    (or distance index) being counted, ``values`` the differing counts.
    """

    kind: str
    pairs: tuple = ()
    triple: tuple = ()
    values: tuple = ()

    def __bool__(self):
        # a witness is a failed check; keeps `if wdrd_check(g):` honest
        return False


@dataclass
class RelationPartition:
    """A partition of V x V into labelled classes.

    Built from a two-way distance table or directly from a ``rel`` map, so
    that broken partitions can be fed to :func:`scheme_axioms_check`.
    """

    n: int
    rel: dict
    labels: list = field(init=False)
    classes: dict = field(init=False)

    def __post_init__(self):
        classes = {}
        for pair in sorted(self.rel):
            classes.setdefault(self.rel[pair], []).append(pair)
        self.labels = sorted(classes)
        self.classes = {lab: classes[lab] for lab in self.labels}


def relation_partition(t: TwoWayDistanceTable) -> RelationPartition:
    n = t.n
    return RelationPartition(n, {(x, y): t[x, y] for x in range(n) for y in range(n)})


def star(label):
    a, b = label
    return (b, a)


class IntersectionTensor:
    """Intersection numbers ``p[h, i, j]`` indexed by position in ``labels``.

    ``t[h, i, j]`` takes label tuples and raises KeyError for labels that do
    not occur; ``t.get`` returns 0 for them instead.
    """

    def __init__(self, labels, p):
        self.labels = [tuple(int(c) for c in lab) for lab in labels]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        p = np.array(p, dtype=np.int64)
        L = len(self.labels)
        if p.shape != (L, L, L):
            raise SchemeError(f"tensor shape {p.shape} does not match {L} labels")
        p.setflags(write=False)
        self.p = p
        self.star = [self.index.get(star(lab), -1) for lab in self.labels]
        zero = self.index.get((0, 0))
        self.k = {}
        for i, lab in enumerate(self.labels):
            self.k[lab] = int(p[zero, i, self.star[i]]) if zero is not None and self.star[i] >= 0 else 0

    @property
    def n(self) -> int:
        return sum(self.k.values())

    def __getitem__(self, key):
        h, i, j = key
        return int(self.p[self.index[tuple(h)], self.index[tuple(i)], self.index[tuple(j)]])

    def get(self, h, i, j) -> int:
        try:
            return self[h, i, j]
        except KeyError:
            return 0

    def __eq__(self, other):
        return (isinstance(other, IntersectionTensor) and self.labels == other.labels
                and np.array_equal(self.p, other.p))

    def __hash__(self):
        return hash((tuple(self.labels), self.p.tobytes()))

    def __repr__(self):
        return f"IntersectionTensor(labels={self.labels})"

    def nonzero(self):
        """Sorted ``(h, i, j, value)`` for every nonzero entry."""
        hs, is_, js = np.nonzero(self.p)
        L = self.labels
        return [(L[h], L[i], L[j], int(self.p[h, i, j]))
                for h, i, j in zip(hs.tolist(), is_.tolist(), js.tolist())]

    def to_json(self, commutative=None) -> dict:
        if commutative is None:
            commutative = is_commutative(self) is True
        return {
            "labels": [list(lab) for lab in self.labels],
            "valencies": {f"{a},{b}": self.k[(a, b)] for a, b in self.labels},
            "p": [{"h": list(h), "i": list(i), "j": list(j), "value": v}
                  for h, i, j, v in self.nonzero()],
            "commutative": bool(commutative),
        }


def tensor_of(t: TwoWayDistanceTable):
    """Count the tensor from a table; returns (tensor, witness-or-None)."""
    labels, lab = t.label_matrix()
    p, bad = kernels.count_tensor(lab, len(labels))
    tensor = IntersectionTensor(labels, p)
    if bad is None:
        return tensor, None
    h, i, j, pair0, pair1, v0, v1 = bad
    w = RegularityWitness(
        "non-constant-intersection",
        pairs=(tuple(pair0), tuple(pair1)),
        triple=(labels[h], labels[i], labels[j]),
        values=(int(v0), int(v1)),
    )
    return tensor, w


def wdrd_check(g: Digraph):
    """The intersection tensor of ``g`` if it is weakly distance-regular,
    else a :class:`RegularityWitness` (lexicographically first violation)."""
    try:
        t = two_way_distance(g)
    except NotStronglyConnected as exc:
        return RegularityWitness("not-strongly-connected", pairs=(exc.pair,))
    tensor, w = tensor_of(t)
    return tensor if w is None else w


def count_at(g: Digraph, pair, i, j) -> int:
    """|{z : d~(x,z) = i, d~(z,y) = j}| by direct scan; used to replay witnesses."""
    x, y = pair
    t = two_way_distance(g)
    return sum(1 for z in range(g.n) if t[x, z] == tuple(i) and t[z, y] == tuple(j))


def is_commutative(t: IntersectionTensor):
    """True, or a witness naming the first triple with p^h_ij != p^h_ji."""
    diff = t.p != t.p.transpose(0, 2, 1)
    if not diff.any():
        return True
    h, i, j = (int(c) for c in np.argwhere(diff)[0])
    L = t.labels
    return RegularityWitness(
        "non-commutative", triple=(L[h], L[i], L[j]),
        values=(int(t.p[h, i, j]), int(t.p[h, j, i])),
    )


def lemma21_violations(t: IntersectionTensor) -> list[tuple]:
    """Entries breaking k_i k_j = sum_h p^h_ij k_h or
    p^h_ij k_h = p^i_{h,j*} k_i = p^j_{i*,h} k_j. Empty for a genuine tensor."""
    L = t.labels
    k = [t.k[lab] for lab in L]
    bad = []
    rng = range(len(L))
    for i in rng:
        for j in rng:
            total = sum(int(t.p[h, i, j]) * k[h] for h in rng)
            if total != k[i] * k[j]:
                bad.append(("i", L[i], L[j], k[i] * k[j], total))
    for h, i, j in itertools.product(rng, repeat=3):
        si, sj = t.star[i], t.star[j]
        a = int(t.p[h, i, j]) * k[h]
        b = int(t.p[i, h, sj]) * k[i] if sj >= 0 else 0
        c = int(t.p[j, si, h]) * k[j] if si >= 0 else 0
        if not a == b == c:
            bad.append(("ii", L[h], L[i], L[j], (a, b, c)))
    return bad


@dataclass
class AxiomReport:
    passed: dict
    witnesses: dict
    constants: dict

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


def scheme_axioms_check(part: RelationPartition) -> AxiomReport:
    """Check the four association-scheme axioms with plain set arithmetic.

    This deliberately shares nothing with the tensor counting kernels so the
    two paths can be compared. ``constants[(l, i, j)]`` holds
    |R_i(x) & R_{j*}(y)| for (x, y) in R_l when axiom (iv) holds.
    """
    n = part.n
    passed, wit = {}, {}
    diag = {(x, x) for x in range(n)}

    # (ii) every ordered pair in exactly one class (rel is a map, so check coverage)
    everything = {(x, y) for x in range(n) for y in range(n)}
    seen = set()
    dup = None
    for lab in part.labels:
        s = set(part.classes[lab])
        if dup is None and seen & s:
            dup = (lab, min(seen & s))
        seen |= s
    missing = sorted(everything - seen)
    passed["ii"] = dup is None and not missing and seen == everything
    if not passed["ii"]:
        wit["ii"] = {"overlap": dup, "missing": missing[:1], "extra": sorted(seen - everything)[:1]}

    # (i) some class is exactly the diagonal
    diag_label = next((lab for lab in part.labels if set(part.classes[lab]) == diag), None)
    passed["i"] = diag_label is not None
    if diag_label is None:
        lab0 = part.rel.get((0, 0))
        wit["i"] = {"class_of_diagonal": lab0, "size": len(part.classes.get(lab0, []))}

    # (iii) transpose of each class is a class
    class_sets = {lab: frozenset(part.classes[lab]) for lab in part.labels}
    by_set = {s: lab for lab, s in class_sets.items()}
    transpose = {}
    for lab in part.labels:
        tr = frozenset((y, x) for x, y in class_sets[lab])
        if tr in by_set:
            transpose[lab] = by_set[tr]
        elif "iii" not in wit:
            wit["iii"] = {"class": lab}
    passed["iii"] = "iii" not in wit

    # (iv) |R_i(x) & R_{j*}(y)| constant on each R_l; R_{j*}(y) = {z : (z, y) in R_j}
    out_sets = {lab: [set() for _ in range(n)] for lab in part.labels}
    in_sets = {lab: [set() for _ in range(n)] for lab in part.labels}
    for (x, y), lab in part.rel.items():
        out_sets[lab][x].add(y)
        in_sets[lab][y].add(x)
    constants = {}
    for l in part.labels:
        pairs = part.classes[l]
        for i in part.labels:
            for j in part.labels:
                vals = {}
                for x, y in pairs:
                    v = len(out_sets[i][x] & in_sets[j][y])
                    vals.setdefault(v, (x, y))
                    if len(vals) > 1:
                        break
                if len(vals) > 1:
                    if "iv" not in wit:
                        (v0, p0), (v1, p1) = list(vals.items())[:2]
                        wit["iv"] = {"triple": (l, i, j), "pairs": (p0, p1), "values": (v0, v1)}
                else:
                    constants[(l, i, j)] = next(iter(vals))
    passed["iv"] = "iv" not in wit
    return AxiomReport(passed, wit, constants if passed["iv"] else {})


@dataclass(frozen=True)
class IntersectionArray:
    d: int
    b: tuple
    c: tuple
    a: tuple

    def __bool__(self):
        return True


def drg_check(g: Digraph):
    """Intersection array of a distance-regular (undirected) ``g``, else a witness."""
    if not is_undirected(g):
        us, vs = np.nonzero(g.adj & ~g.adj.T)
        return RegularityWitness("not-symmetric", pairs=((int(us[0]), int(vs[0])),))
    dist = g.distances()
    if (dist < 0).any():
        xs, ys = np.nonzero(dist < 0)
        return RegularityWitness("not-strongly-connected", pairs=((int(xs[0]), int(ys[0])),))
    d = int(dist.max())
    A = g.adj.astype(np.int64)
    ind = [(dist == i).astype(np.int64) for i in range(d + 1)]
    # counts[r][x, y] = |{z ~ y : d(x, z) = r}|
    counts = [ind[r] @ A for r in range(d + 1)]
    b, c, a = [], [], []
    for i in range(d + 1):
        at_i = dist == i
        for name, r in (("c", i - 1), ("a", i), ("b", i + 1)):
            if r < 0 or r > d:
                vals = np.zeros(int(at_i.sum()), dtype=np.int64)
            else:
                vals = counts[r][at_i]
            if (vals != vals[0]).any():
                xs, ys = np.nonzero(at_i)
                k = int(np.flatnonzero(vals != vals[0])[0])
                return RegularityWitness(
                    "non-constant-bi-ci",
                    pairs=((int(xs[0]), int(ys[0])), (int(xs[k]), int(ys[k]))),
                    triple=(name, i), values=(int(vals[0]), int(vals[k])),
                )
            {"b": b, "c": c, "a": a}[name].append(int(vals[0]))
    b0 = b[0]
    for i in range(d + 1):
        if c[i] + a[i] + b[i] != b0:
            raise SchemeError(f"b0 = c_i + a_i + b_i fails at i = {i}")
    return IntersectionArray(d, tuple(b[:d]), tuple(c[1:]), tuple(a))


GIRTH3_SET = ((0, 0), (1, 2), (2, 1))
GIRTH2_SET = ((0, 0), (1, 1), (1, 2), (2, 1))


@dataclass
class SemicompleteProfile:
    ok: bool
    diameter: int
    girth: int
    labels: list
    which: str
    failures: list


def semicomplete_wdrd_profile(g: Digraph) -> SemicompleteProfile:
    """Diameter, girth and distance set of a non-complete semicomplete WDRD.

    ``ok`` is False (with ``failures`` filled in) if the profile is not one
    of the two admissible ones; that would be a genuine counterexample.
    """
    if not is_semicomplete(g):
        raise SchemeError("digraph is not semicomplete")
    if is_complete(g):
        raise SchemeError("digraph is complete as a graph")
    tensor = wdrd_check(g)
    if not isinstance(tensor, IntersectionTensor):
        raise SchemeError(f"digraph is not weakly distance-regular: {tensor}")
    table = two_way_distance(g)
    labels = table.labels()
    diam = table.diameter
    gr = girth(g)
    failures = []
    if diam != 2:
        failures.append(f"diameter {diam} != 2")
    if gr > 3:
        failures.append(f"girth {gr} > 3")
    if tuple(labels) == GIRTH3_SET:
        which = "girth-3"
    elif tuple(labels) == GIRTH2_SET:
        which = "girth-2"
    else:
        which = "other"
        failures.append(f"distance set {labels} is not admissible")
    return SemicompleteProfile(not failures, diam, gr, labels, which, failures)


@dataclass
class LemmaResult:
    status: str  # "pass", "fail" or "not applicable"
    detail: list = field(default_factory=list)


def _arc_labels(t):
    return sorted(lab for lab in t.labels if lab[0] == 1)


def verify_structural_lemmas(t: IntersectionTensor, arr: IntersectionArray) -> dict:
    """Check the c2 = 2 and a1 = 2 tensor lemmas on a commutative tensor.

    Keys "s=t", "pneqt" and "a1=2". For "s=t" the detail lists
    ``(p, value)`` for each nonzero p^{(2,2)}_{(1,p-1),(1,p-1)}, i.e. which
    branch occurred; failures list the offending entries.
    """
    if is_commutative(t) is not True:
        raise SchemeError("structural lemmas need a commutative tensor")
    c2 = arr.c[1] if arr.d >= 2 else None
    a1 = arr.a[1] if arr.d >= 1 else None
    arcs = _arc_labels(t)
    out = {}

    if c2 != 2:
        out["s=t"] = LemmaResult("not applicable", [f"c2 = {c2}"])
        out["pneqt"] = LemmaResult("not applicable", [f"c2 = {c2}"])
    else:
        detail, bad = [], []
        for x in arcs:
            for y in arcs:
                v = t.get((2, 2), x, y)
                if not v:
                    continue
                p, s = x[1] + 1, y[1] + 1
                if p != s:
                    bad.append(((2, 2), x, y, v))
                elif p == 2 and v == 2 or p in (3, 4) and v == 1:
                    detail.append((p, v))
                else:
                    bad.append(((2, 2), x, y, v))
        out["s=t"] = LemmaResult("fail", bad) if bad else LemmaResult("pass", detail)

        detail, bad = [], []
        for x in arcs:
            p = x[1] + 1
            if not t.get(x, (2, 2), star(x)):
                continue
            detail.append(p)
            for y in arcs:
                if y[1] + 1 == p:
                    continue
                for r in arcs:
                    v = t.get(y, (2, 2), star(r))
                    if v:
                        bad.append((y, (2, 2), star(r), v))
        out["pneqt"] = LemmaResult("fail", bad) if bad else LemmaResult("pass", detail)

    if a1 != 2:
        out["a1=2"] = LemmaResult("not applicable", [f"a1 = {a1}"])
    else:
        bad = []
        for y in arcs:
            if y[1] + 1 <= 2:
                continue
            for x in arcs:
                v = t.get(y, x, star(x))
                if v:
                    bad.append((y, x, star(x), v))
        out["a1=2"] = LemmaResult("fail", bad) if bad else LemmaResult("pass")
    return out
