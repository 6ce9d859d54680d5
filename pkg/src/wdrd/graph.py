"""Loop-free digraphs on vertices 0..n-1 with dense adjacency."""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels


class GraphError(ValueError):
    pass


class NotStronglyConnected(GraphError):
    """Raised when a two-way distance is requested on a digraph with no x->y path."""

    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"no path from {self.pair[0]} to {self.pair[1]}")


class Digraph:
    """Immutable digraph. ``adj[u, v]`` is True iff (u, v) is an arc."""

    __slots__ = ("n", "adj", "_dist")

    def __init__(self, adj: np.ndarray):
        adj = np.array(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise GraphError("adjacency must be a non-empty square matrix")
        if adj.diagonal().any():
            v = int(np.flatnonzero(adj.diagonal())[0])
            raise GraphError(f"loop ({v}, {v}) not allowed")
        adj.setflags(write=False)
        self.n = adj.shape[0]
        self.adj = adj
        self._dist = None

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.num_arcs})"

    @property
    def num_arcs(self) -> int:
        return int(self.adj.sum())

    def arcs(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(self.adj)
        return list(zip(us.tolist(), vs.tolist()))

    def edges(self) -> list[tuple[int, int]]:
        """Pairs u < v joined by arcs in both directions."""
        both = np.triu(self.adj & self.adj.T, 1)
        us, vs = np.nonzero(both)
        return list(zip(us.tolist(), vs.tolist()))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def out_neighbors(self, u: int) -> list[int]:
        return np.flatnonzero(self.adj[u]).tolist()

    def in_neighbors(self, u: int) -> list[int]:
        return np.flatnonzero(self.adj[:, u]).tolist()

    def reverse(self) -> "Digraph":
        return Digraph(self.adj.T)

    def distances(self) -> np.ndarray:
        """One-way BFS distance matrix, -1 where unreachable (cached)."""
        if self._dist is None:
            d = kernels.distance_matrix(self.adj.view(np.uint8))
            d.setflags(write=False)
            self._dist = d
        return self._dist


def new_digraph(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    if n < 1:
        raise GraphError("a digraph needs at least one vertex")
    adj = np.zeros((n, n), dtype=bool)
    for arc in arcs:
        u, v = arc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"arc ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop ({u}, {v}) not allowed")
        adj[u, v] = True
    return Digraph(adj)


class TwoWayDistanceTable:
    """``table[x, y] == (d(x, y), d(y, x))`` for a strongly connected digraph."""

    __slots__ = ("n", "dist")

    def __init__(self, dist: np.ndarray):
        self.n = dist.shape[0]
        self.dist = dist

    def __getitem__(self, pair):
        x, y = pair
        return int(self.dist[x, y]), int(self.dist[y, x])

    def labels(self) -> list[tuple[int, int]]:
        """The two-way distance set, sorted lexicographically."""
        d = self.dist
        return sorted(set(zip(d.ravel().tolist(), d.T.ravel().tolist())))

    def label_matrix(self):
        """Return ``(labels, lab)`` where ``lab[x, y]`` indexes into ``labels``."""
        d = self.dist.astype(np.int64)
        base = int(d.max()) + 1
        code = d * base + d.T
        uniq, inv = np.unique(code, return_inverse=True)
        labels = [(int(c // base), int(c % base)) for c in uniq]
        return labels, inv.reshape(d.shape).astype(np.int32)

    @property
    def diameter(self) -> int:
        return int(self.dist.max())


def is_strongly_connected(g: Digraph) -> bool:
    return bool((g.distances() >= 0).all())


def _unreachable_pair(g: Digraph):
    xs, ys = np.nonzero(g.distances() < 0)
    return int(xs[0]), int(ys[0])


def two_way_distance(g: Digraph) -> TwoWayDistanceTable:
    d = g.distances()
    if (d < 0).any():
        raise NotStronglyConnected(_unreachable_pair(g))
    return TwoWayDistanceTable(d)


def girth(g: Digraph) -> int:
    d = g.distances()
    us, vs = np.nonzero(g.adj)
    back = d[vs, us]
    back = back[back >= 0]
    if back.size == 0:
        raise GraphError("no circuit")
    return int(back.min()) + 1


def underlying_graph(g: Digraph) -> Digraph:
    return Digraph(g.adj | g.adj.T)


def is_undirected(g: Digraph) -> bool:
    return bool(np.array_equal(g.adj, g.adj.T))


def is_semicomplete(g: Digraph) -> bool:
    u = g.adj | g.adj.T
    return int(u.sum()) == g.n * (g.n - 1)


def is_complete(g: Digraph) -> bool:
    return g.num_arcs == g.n * (g.n - 1)


def degrees(g: Digraph, x: int) -> tuple[int, int]:
    """(out-degree, in-degree) of vertex x."""
    if not 0 <= x < g.n:
        raise GraphError(f"vertex {x} outside 0..{g.n - 1}")
    return int(g.adj[x].sum()), int(g.adj[:, x].sum())


def induced_subdigraph(g: Digraph, verts: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Induced subdigraph on ``verts`` relabelled 0..k-1 in sorted order.

    Returns the digraph and the list mapping new labels to old ones.
    """
    vs = sorted(set(int(v) for v in verts))
    if not vs:
        raise GraphError("empty vertex set")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise GraphError("vertex outside range")
    return Digraph(g.adj[np.ix_(vs, vs)]), vs


def distance_profile(g: Digraph, x: int) -> tuple:
    """Sorted multiset of (d(x,y), d(y,x)) over all y; -1 marks unreachable."""
    d = g.distances()
    return tuple(sorted(Counter(zip(d[x].tolist(), d[:, x].tolist())).items()))
