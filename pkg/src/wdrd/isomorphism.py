"""Backtracking digraph isomorphism for graphs of a few dozen vertices."""
from __future__ import annotations

from collections import deque

import numpy as np

from .graph import Digraph, distance_profile


def _neighbourhood_shape(g: Digraph, x: int) -> tuple:
    # arcs inside the closed-out neighbourhood and the number of weak components
    # of the open neighbourhood; both are preserved by any isomorphism
    nb = np.flatnonzero(g.adj[x] | g.adj[:, x])
    sub = g.adj[np.ix_(nb, nb)]
    und = sub | sub.T
    seen = np.zeros(len(nb), dtype=bool)
    comps = 0
    for s in range(len(nb)):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            t = stack.pop()
            for w in np.flatnonzero(und[t] & ~seen):
                seen[w] = True
                stack.append(int(w))
    return int(sub.sum()), comps


def vertex_invariants(g: Digraph) -> list[tuple]:
    out_deg = g.adj.sum(axis=1)
    in_deg = g.adj.sum(axis=0)
    return [
        (int(out_deg[x]), int(in_deg[x]), distance_profile(g, x), _neighbourhood_shape(g, x))
        for x in range(g.n)
    ]


def _search_order(g: Digraph) -> list[int]:
    # BFS over the underlying graph so each new vertex is tied to mapped ones
    und = g.adj | g.adj.T
    order, seen = [], [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        q = deque([root])
        while q:
            x = q.popleft()
            order.append(x)
            for y in np.flatnonzero(und[x]).tolist():
                if not seen[y]:
                    seen[y] = True
                    q.append(y)
    return order


def are_isomorphic(g: Digraph, h: Digraph) -> list[int] | None:
    """Return a bijection ``phi`` (as a list, ``phi[u]`` in h) with
    ``g.adj[u, v] == h.adj[phi[u], phi[v]]`` for all u, v, or None."""
    if g.n != h.n or g.num_arcs != h.num_arcs:
        return None
    inv_g, inv_h = vertex_invariants(g), vertex_invariants(h)
    if sorted(inv_g) != sorted(inv_h):
        return None
    n = g.n
    dg, dh = g.distances(), h.distances()
    ag, ah = g.adj, h.adj
    candidates = [[y for y in range(n) if inv_h[y] == inv_g[x]] for x in range(n)]
    order = _search_order(g)
    phi = [-1] * n
    used = [False] * n

    def consistent(x, y, depth):
        for t in range(depth):
            u = order[t]
            w = phi[u]
            if ag[x, u] != ah[y, w] or ag[u, x] != ah[w, y]:
                return False
            if dg[x, u] != dh[y, w] or dg[u, x] != dh[w, y]:
                return False
        return True

    def extend(depth):
        if depth == n:
            return True
        x = order[depth]
        for y in candidates[x]:
            if not used[y] and consistent(x, y, depth):
                phi[x] = y
                used[y] = True
                if extend(depth + 1):
                    return True
                used[y] = False
                phi[x] = -1
        return False

    return list(phi) if extend(0) else None


def is_isomorphism(g: Digraph, h: Digraph, phi) -> bool:
    """Independent arc-preservation check of a candidate map."""
    n = g.n
    if h.n != n or sorted(phi) != list(range(n)):
        return False
    for u in range(n):
        for v in range(n):
            if u != v and g.has_arc(u, v) != h.has_arc(phi[u], phi[v]):
                return False
    return True


def dedup_isomorphic(digraphs):
    """Indices of the first member of each isomorphism class, in input order."""
    reps = []
    for idx, g in enumerate(digraphs):
        if not any(are_isomorphic(digraphs[r], g) is not None for r in reps):
            reps.append(idx)
    return reps
