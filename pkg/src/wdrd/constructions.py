"""Builders for the digraph families used throughout the package.

Vertices of product-structured graphs are coordinate tuples flattened
row-major with the last coordinate varying fastest, so tuple
``(x_1, ..., x_k)`` over moduli ``(m_1, ..., m_k)`` becomes
``((x_1 * m_2 + x_2) * m_3 + ...) + x_k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .graph import Digraph, GraphError


def flatten(coords, moduli) -> int:
    idx = 0
    for c, m in zip(coords, moduli):
        idx = idx * m + c
    return idx


def unflatten(idx: int, moduli) -> tuple[int, ...]:
    coords = []
    for m in reversed(moduli):
        idx, c = divmod(idx, m)
        coords.append(c)
    return tuple(reversed(coords))


@dataclass(frozen=True)
class CayleySpec:
    """Connection set in Z_{m1} x ... x Z_{mk}; elements stored reduced."""

    moduli: tuple[int, ...]
    connection: frozenset

    def __init__(self, moduli, connection):
        moduli = (moduli,) if isinstance(moduli, int) else tuple(int(m) for m in moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise GraphError(f"moduli must be positive integers, got {moduli}")
        conn = set()
        for s in connection:
            t = (s,) if isinstance(s, int) else tuple(s)
            if len(t) != len(moduli) or not all(isinstance(c, (int, np.integer)) for c in t):
                raise GraphError(f"malformed group element {s!r} for moduli {moduli}")
            t = tuple(int(c) % m for c, m in zip(t, moduli))
            if not any(t):
                raise GraphError(f"identity element {s!r} in connection set would give loops")
            conn.add(t)
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "connection", frozenset(conn))

    @property
    def order(self) -> int:
        return int(np.prod(self.moduli))

    def is_inverse_closed(self) -> bool:
        return all(tuple(-c % m for c, m in zip(s, self.moduli)) in self.connection
                   for s in self.connection)


def cayley(spec: CayleySpec | tuple, connection=None) -> Digraph:
    """Cay(G, S): arcs (x, x + s) for every group element x and s in S.

    Accepts a :class:`CayleySpec` or ``cayley(moduli, connection)``.
    """
    if not isinstance(spec, CayleySpec):
        spec = CayleySpec(spec, connection)
    moduli = spec.moduli
    n = spec.order
    grid = np.indices(moduli).reshape(len(moduli), n)
    adj = np.zeros((n, n), dtype=bool)
    src = np.arange(n)
    for s in sorted(spec.connection):
        shifted = (grid + np.array(s)[:, None]) % np.array(moduli)[:, None]
        dst = np.ravel_multi_index(tuple(shifted), moduli)
        adj[src, dst] = True
    return Digraph(adj)


def directed_cycle(n: int) -> Digraph:
    return cayley((n,), [1])


def cartesian_product(g: Digraph, h: Digraph) -> Digraph:
    """Vertex (u, v) is u * h.n + v; arcs move in exactly one factor."""
    adj = np.kron(g.adj, np.eye(h.n, dtype=bool)) | np.kron(np.eye(g.n, dtype=bool), h.adj)
    return Digraph(adj)


def product_all(factors) -> Digraph:
    return reduce(cartesian_product, factors)


def complete_graph(q: int) -> Digraph:
    if q < 1:
        raise GraphError("complete graph needs q >= 1")
    return Digraph(~np.eye(q, dtype=bool))


def hamming(d: int, q: int) -> Digraph:
    """H(d, q) on Z_q^d (row-major); equal to the d-fold product of K_q."""
    if d < 1 or q < 2:
        raise GraphError("hamming graph needs d >= 1 and q >= 2")
    return product_all([complete_graph(q)] * d)


def folded_cube(n: int) -> Digraph:
    """H(n-1, 2) plus the antipodal matching x <-> x XOR (2^(n-1) - 1)."""
    if n < 3:
        raise GraphError("folded cube needs n >= 3 (n = 2 is a multigraph)")
    cube = hamming(n - 1, 2).adj.copy()
    size = 1 << (n - 1)
    idx = np.arange(size)
    cube[idx, idx ^ (size - 1)] = True
    return Digraph(cube)


SHRIKHANDE_CONNECTION = ((1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3))
DOOB_ORIENTED_CONNECTION = ((1, 0), (0, 1), (3, 3))


def shrikhande() -> Digraph:
    return cayley((4, 4), SHRIKHANDE_CONNECTION)


def doob(d1: int, d2: int) -> Digraph:
    """H(d2, 4) (omitted if d2 = 0) times d1 Shrikhande factors, in that order."""
    if d1 < 1:
        raise GraphError("doob graph needs d1 >= 1 (d1 = 0 is a Hamming graph)")
    if d2 < 0:
        raise GraphError("doob graph needs d2 >= 0")
    factors = ([hamming(d2, 4)] if d2 else []) + [shrikhande()] * d1
    return product_all(factors)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q ** 0.5) + 1))


def paley_tournament(q: int) -> Digraph:
    """Cay(Z_q, nonzero squares) for a prime q = 3 mod 4."""
    if not _is_prime(q) or q % 4 != 3:
        raise GraphError(f"paley tournament needs a prime q = 3 mod 4, got {q}")
    squares = sorted({(x * x) % q for x in range(1, q)})
    return cayley((q,), squares)


def all_tuples(moduli):
    return itertools.product(*(range(m) for m in moduli))
