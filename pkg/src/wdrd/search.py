"""Exhaustive orientation search over an undirected base graph.

Every edge of the base becomes a forward arc (u -> v for u < v), a backward
arc, or stays an edge. An orientation is written as a state string with one
character per edge in sorted edge order: ``+`` forward, ``-`` backward and
``=`` kept. Branching tries the states in that order, so the depth-first
order of leaves is the lexicographic order of their state strings.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from ._pykernels import BACKWARD, BOTH, FORWARD
from .graph import Digraph, GraphError, is_strongly_connected, is_undirected
from .isomorphism import dedup_isomorphic
from .schemes import IntersectionArray, IntersectionTensor, drg_check, is_commutative, wdrd_check

PRUNE_FLAGS = {
    "regular-degrees": 1,
    "forbid-improper-none": 2,
    "arc-type-q2": 4,
    "line-local": 8,
}
FLAG_ORDER = list(PRUNE_FLAGS)
MAX_VERTICES = 64


class ConfigError(GraphError):
    pass


@dataclass
class OrientationSearchConfig:
    base: Digraph
    prune: frozenset = frozenset()
    dedup: bool = True
    symmetry_break: bool = False
    budget_leaves: int | None = 2 ** 31
    budget_secs: float | None = 600.0
    jobs: int = 1
    name: str | None = None
    backend: str | None = None

    def __post_init__(self):
        if isinstance(self.prune, str):
            self.prune = [self.prune]
        self.prune = frozenset(self.prune)
        unknown = sorted(self.prune - PRUNE_FLAGS.keys())
        if unknown:
            raise ConfigError(f"unknown prune flag(s): {', '.join(unknown)}")
        if not is_undirected(self.base):
            raise ConfigError("base graph must be undirected")
        if not is_strongly_connected(self.base):
            raise ConfigError("base graph must be connected")
        if self.base.n > MAX_VERTICES:
            raise ConfigError(f"search supports at most {MAX_VERTICES} vertices")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")

    @property
    def flag_bits(self) -> int:
        return sum(PRUNE_FLAGS[f] for f in self.prune)

    def to_json(self) -> dict:
        return {
            "prune": [f for f in FLAG_ORDER if f in self.prune],
            "dedup": self.dedup,
            "symmetry_break": self.symmetry_break,
            "budget_leaves": self.budget_leaves,
            "budget_secs": self.budget_secs,
            "jobs": self.jobs,
        }


# -- base metadata ------------------------------------------------------------

def maximal_cliques(g: Digraph) -> list[list[int]]:
    """Bron-Kerbosch with pivoting on the underlying graph; sorted output."""
    n = g.n
    nb = [sum(1 << int(y) for y in np.flatnonzero(g.adj[x] | g.adj[:, x])) for x in range(n)]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(sorted(i for i in range(n) if r >> i & 1))
            return
        px = p | x
        pivot = max((i for i in range(n) if px >> i & 1), key=lambda u: bin(p & nb[u]).count("1"))
        cand = p & ~nb[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            expand(r | low, p & nb[v], x & nb[v])
            p &= ~low
            x |= low
            cand &= ~low

    expand(0, (1 << n) - 1, 0)
    return sorted(out)


def _hamming_q(arr: IntersectionArray):
    """q if ``arr`` is the array of H(d, q), else None."""
    d, b0 = arr.d, arr.b[0]
    if d < 1 or b0 % d:
        return None
    q = b0 // d + 1
    ok = all(arr.b[i] == (d - i) * (q - 1) for i in range(d)) and all(
        arr.c[i - 1] == i for i in range(1, d + 1))
    return q if ok else None


def _is_folded_cube_array(arr: IntersectionArray, n: int) -> bool:
    d = arr.d
    if d != n // 2:
        return False
    for i in range(1, d + 1):
        want_c = n if (i == d and n % 2 == 0) else i
        if arr.c[i - 1] != want_c:
            return False
    return all(arr.b[i] == n - i for i in range(d))


def build_plan(base: Digraph, prune=frozenset(), symmetry_break=False) -> dict:
    """Precompute everything the search kernels need for ``base``.

    Raises :class:`ConfigError` if a requested prune flag does not apply.
    """
    prune = frozenset(prune)
    edges = base.edges()
    eid = {e: i for i, e in enumerate(edges)}
    E = len(edges)
    n = base.n
    flags = sum(PRUNE_FLAGS[f] for f in prune)
    cycles = [[] for _ in range(E)]
    related = [[] for _ in range(E)]
    line_of = [-1] * E
    lines = []
    cube_k13 = False
    arr = None
    if prune & {"arc-type-q2", "line-local"}:
        arr = drg_check(base)
        if not isinstance(arr, IntersectionArray):
            raise ConfigError(f"base is not distance-regular ({arr.kind})")

    if "arc-type-q2" in prune:
        adj = base.adj
        if (adj.astype(np.int64) @ adj.astype(np.int64) * adj).any():
            raise ConfigError("arc-type-q2 needs a triangle-free base")
        if arr.d < 2 or arr.c[1] != 2 or arr.a[1] != 0:
            raise ConfigError("arc-type-q2 needs c2 = 2 and a1 = 0")
        k = arr.b[0]
        cube = _hamming_q(arr) == 2
        folded = k >= 5 and _is_folded_cube_array(arr, k)
        if not (cube or folded):
            raise ConfigError("arc-type-q2 applies to cube and folded-cube (n >= 5) bases only")
        cube_k13 = cube
        nbr = [np.flatnonzero(adj[x]).tolist() for x in range(n)]
        for e, (u, v) in enumerate(edges):
            # 4-cycles u - v - a - b - u
            for a in nbr[v]:
                if a == u:
                    continue
                for b in nbr[a]:
                    if b in (v, u) or not adj[b, u]:
                        continue
                    e1 = eid[tuple(sorted((v, a)))]
                    e2 = eid[tuple(sorted((a, b)))]
                    e3 = eid[tuple(sorted((b, u)))]
                    cycles[e].append((e1, e2, e3, a, b))
        rel = [set() for _ in range(E)]
        for f in range(E):
            for e1, e2, e3, _, _ in cycles[f]:
                for e in (e1, e2, e3):
                    rel[e].add(f)
        related = [sorted(r - {e}) for e, r in enumerate(rel)]

    if "line-local" in prune:
        q = _hamming_q(arr)
        if q is None or q < 3:
            raise ConfigError("line-local applies to Hamming bases with q >= 3 only")
        cliques = maximal_cliques(base)
        if any(len(c) != q for c in cliques):
            raise ConfigError("line-local needs maximal cliques of size q (not a Hamming graph)")
        for li, c in enumerate(cliques):
            for i, x in enumerate(c):
                for y in c[i + 1:]:
                    e = eid[(x, y)]
                    if line_of[e] >= 0:
                        raise ConfigError("maximal cliques do not partition the edges")
                    line_of[e] = li
        if min(line_of, default=0) < 0:
            raise ConfigError("maximal cliques do not cover the edges")
        lines = cliques

    return {
        "n": n,
        "edges": edges,
        "flags": flags,
        "symmetry_break": bool(symmetry_break),
        "cube_k13": cube_k13,
        "cycles": cycles,
        "related": related,
        "line_of": line_of,
        "lines": lines,
    }


# -- orientation helpers --------------------------------------------------------

CHAR_STATE = {"+": FORWARD, "-": BACKWARD, "=": BOTH}


def orient(base: Digraph, states: str) -> Digraph:
    """Digraph obtained from ``base`` by applying a state string."""
    edges = base.edges()
    if len(states) != len(edges):
        raise ConfigError(f"state string has {len(states)} entries for {len(edges)} edges")
    adj = np.zeros((base.n, base.n), dtype=bool)
    for (u, v), ch in zip(edges, states):
        s = CHAR_STATE[ch]
        if s & FORWARD:
            adj[u, v] = True
        if s & BACKWARD:
            adj[v, u] = True
    return Digraph(adj)


def reverse_states(states: str) -> str:
    return states.translate(str.maketrans("+-", "-+"))


def orientation_states(base: Digraph, g: Digraph) -> str:
    out = []
    for u, v in base.edges():
        f, b = g.has_arc(u, v), g.has_arc(v, u)
        out.append("=" if f and b else "+" if f else "-")
    return "".join(out)


# -- enumeration ----------------------------------------------------------------

@dataclass
class SearchStats:
    visited: int = 0
    nodes: int = 0
    pruned: dict = field(default_factory=lambda: {f: 0 for f in FLAG_ORDER})
    complete: bool = True
    found: list = field(default_factory=list)
    elapsed: float = 0.0


def _collect(stats: SearchStats, kernel):
    stats.visited += kernel.visited
    stats.nodes += kernel.nodes
    for f, c in zip(FLAG_ORDER, kernel.pruned):
        stats.pruned[f] += c
    stats.complete = stats.complete and kernel.complete


def _prefixes(kernel, plan, depth):
    """Surviving state prefixes of length ``depth`` (cut nodes are counted
    on ``kernel``), in depth-first order."""
    out = []
    stack = []

    def walk(e):
        if e == depth:
            out.append(tuple(stack))
            return
        for s in (FORWARD, BACKWARD, BOTH):
            if s == BACKWARD and e == 0 and plan["symmetry_break"]:
                continue
            kernel.nodes += 1
            cut = kernel.assign(e, s)
            if cut:
                kernel_pruned[cut.bit_length() - 1] += 1
            else:
                stack.append(s)
                walk(e + 1)
                stack.pop()
            kernel.unassign(e)

    kernel_pruned = [0, 0, 0, 0]
    walk(0)
    return out, kernel_pruned


def _run_subtree(args):
    plan, prefix, budget, deadline, backend = args
    kern = _backend.get(backend).SearchKernel(plan)
    for e, s in enumerate(prefix):
        if kern.assign(e, s):
            raise RuntimeError("prefix replay was cut; kernels disagree")
    found = kern.run(len(prefix), budget, deadline)
    return kern.visited, kern.nodes, list(kern.pruned), kern.complete, found


def _split_depth(E, jobs):
    depth = 0
    while 3 ** depth < 8 * jobs and depth < E - 1:
        depth += 1
    return depth


def enumerate_orientations(cfg: OrientationSearchConfig, visitor=None) -> SearchStats:
    """Depth-first over all orientations with the configured pruning.

    With a ``visitor`` every leaf's state string is passed to it (serially)
    and no WDRD screening is done. Otherwise ``stats.found`` lists the state
    strings of leaves that are regular, strongly connected and weakly
    distance-regular, sorted.
    """
    plan = build_plan(cfg.base, cfg.prune, cfg.symmetry_break)
    kmod = _backend.get(cfg.backend)
    start = time.monotonic()
    deadline = None if cfg.budget_secs is None else start + cfg.budget_secs
    budget = -1 if cfg.budget_leaves is None else int(cfg.budget_leaves)
    stats = SearchStats()
    E = len(plan["edges"])
    if visitor is not None or cfg.jobs == 1 or E < 4:
        kern = kmod.SearchKernel(plan)
        stats.found = sorted(kern.run(0, budget, deadline, visitor))
        _collect(stats, kern)
    else:
        depth = _split_depth(E, cfg.jobs)
        parent = kmod.SearchKernel(plan)
        prefixes, cut = _prefixes(parent, plan, depth)
        stats.nodes += parent.nodes
        for f, c in zip(FLAG_ORDER, cut):
            stats.pruned[f] += c
        per = -1 if budget < 0 else budget // max(len(prefixes), 1)
        tasks = [(plan, p, per, deadline, cfg.backend) for p in prefixes]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_subtree, tasks))
        found = []
        for visited, nodes, pruned, complete, f in results:
            stats.visited += visited
            stats.nodes += nodes
            for name, c in zip(FLAG_ORDER, pruned):
                stats.pruned[name] += c
            stats.complete = stats.complete and complete
            found.extend(f)
        stats.found = sorted(found)
    stats.elapsed = time.monotonic() - start
    return stats


# -- classification ---------------------------------------------------------------

@dataclass
class Solution:
    digraph: Digraph
    tensor: IntersectionTensor
    commutative: bool
    states: str

    def to_json(self) -> dict:
        return {
            "arcs": [list(a) for a in self.digraph.arcs()],
            "tensor": self.tensor.to_json(self.commutative),
            "commutative": self.commutative,
        }


@dataclass
class ClassificationReport:
    config: OrientationSearchConfig
    total_visited: int
    pruned: dict
    undirected_solutions: int
    proper_solutions: list
    proper_found: int
    complete: bool
    elapsed: float = 0.0

    def commutative_classes(self) -> list[Solution]:
        return [s for s in self.proper_solutions if s.commutative]

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "base": {"name": cfg.name, "n": cfg.base.n, "edges": len(cfg.base.edges())},
            "config": cfg.to_json(),
            "total_visited": self.total_visited,
            "pruned": dict(self.pruned),
            "undirected_solutions": self.undirected_solutions,
            "proper_classes": [s.to_json() for s in self.proper_solutions],
            "complete": self.complete,
        }


def classify_orientations(cfg: OrientationSearchConfig) -> ClassificationReport:
    """Run the search and sort the weakly distance-regular leaves into the
    undirected one (the base itself) and proper ones, up to isomorphism."""
    stats = enumerate_orientations(cfg)
    states = set(stats.found)
    if cfg.symmetry_break:
        # the reversed half of the tree was skipped; reversal preserves WDRD-ness
        states |= {reverse_states(s) for s in stats.found}
    undirected = 0
    proper = []
    for s in sorted(states):
        if "+" not in s and "-" not in s:
            undirected += 1
            continue
        g = orient(cfg.base, s)
        t = wdrd_check(g)
        if not isinstance(t, IntersectionTensor):
            raise RuntimeError(f"kernel screen accepted a non-WDRD leaf {s}: {t}")
        proper.append(Solution(g, t, is_commutative(t) is True, s))
    found = len(proper)
    if cfg.dedup:
        proper = [proper[i] for i in dedup_isomorphic([p.digraph for p in proper])]
    return ClassificationReport(
        cfg, stats.visited, stats.pruned, undirected, proper, found, stats.complete, stats.elapsed
    )


def default_jobs() -> int:
    return os.cpu_count() or 1
