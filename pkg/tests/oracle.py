"""Independent reference computations for the tests.

Nothing here imports the package: distances come from Floyd-Warshall over
Python dicts and intersection numbers from direct counting, so agreement
with the package is evidence rather than tautology.
"""
import itertools

INF = float("inf")


def arcs_of(g):
    """Plain arc set from anything exposing ``n`` and ``adj``."""
    return {(u, v) for u in range(g.n) for v in range(g.n) if g.adj[u][v]}


def floyd(n, arcs):
    d = [[0 if x == y else (1 if (x, y) in arcs else INF) for y in range(n)] for x in range(n)]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def two_way(n, arcs):
    d = floyd(n, arcs)
    return {(x, y): (d[x][y], d[y][x]) for x in range(n) for y in range(n)}


def tensor(n, arcs):
    """``(labels, p)`` with ``p[(h, i, j)]``, or None if not a WDRD."""
    tw = two_way(n, arcs)
    if any(INF in v for v in tw.values()):
        return None
    labels = sorted(set(tw.values()))
    p = {}
    for h, i, j in itertools.product(labels, repeat=3):
        vals = {sum(1 for z in range(n) if tw[x, z] == i and tw[z, y] == j)
                for (x, y), lab in tw.items() if lab == h}
        if len(vals) != 1:
            return None
        p[h, i, j] = vals.pop()
    return labels, p


def cayley_arcs(moduli, conn):
    verts = list(itertools.product(*(range(m) for m in moduli)))
    index = {v: i for i, v in enumerate(verts)}
    arcs = set()
    for v in verts:
        for s in conn:
            w = tuple((a + b) % m for a, b, m in zip(v, s, moduli))
            arcs.add((index[v], index[w]))
    return len(verts), arcs


def count_orientations(n, edges, accept):
    """Brute-force all 3^|E| orientations; return accepted arc sets."""
    out = []
    for states in itertools.product((1, 2, 3), repeat=len(edges)):
        arcs = set()
        for (u, v), s in zip(edges, states):
            if s & 1:
                arcs.add((u, v))
            if s & 2:
                arcs.add((v, u))
        if accept(arcs):
            out.append(arcs)
    return out
