"""Pure-Python implementations of the hot kernels.

This module is the reference the compiled ``_kernels`` extension must agree
with bit for bit; it is also what runs when the extension is unavailable or
``WDRD_PURE_PYTHON=1`` is set.
"""
import time

import numpy as np

NAME = "python"

# prune flag bits; order here is the order predicates are consulted
PRUNE_REGULAR = 1
PRUNE_IMPROPER = 2
PRUNE_ARC_TYPE = 4
PRUNE_LINE = 8

FORWARD, BACKWARD, BOTH = 1, 2, 3
STATE_CHARS = {FORWARD: "+", BACKWARD: "-", BOTH: "="}


def distance_matrix(adj):
    """All-pairs BFS distances of a dense 0/1 adjacency matrix, -1 if unreachable."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    dist = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        dist[s, s] = 0
        frontier = np.zeros(n, dtype=bool)
        frontier[s] = True
        seen = frontier.copy()
        d = 0
        while True:
            nxt = adj[frontier].any(axis=0) & ~seen
            if not nxt.any():
                break
            d += 1
            dist[s, nxt] = d
            seen |= nxt
            frontier = nxt
    return dist


def count_tensor(lab, num_labels):
    """Scan every ordered pair and count z by (label(x,z), label(z,y)).

    Returns ``(p, witness)``. ``p[h, i, j]`` holds the counts seen at the first
    pair carrying label ``h``. ``witness`` is None when every pair agrees with
    that first pair, otherwise ``(h, i, j, pair0, pair1, v0, v1)`` for the
    lexicographically smallest inconsistent triple.
    """
    lab = np.asarray(lab, dtype=np.int64)
    n = lab.shape[0]
    L = int(num_labels)
    p = np.zeros((L, L, L), dtype=np.int64)
    ref = [None] * L
    ref_pair = [None] * L
    bad = {}
    for x in range(n):
        row = lab[x, :] * L
        for y in range(n):
            h = int(lab[x, y])
            c = np.bincount(row + lab[:, y], minlength=L * L)
            if ref[h] is None:
                ref[h] = c
                ref_pair[h] = (x, y)
                p[h] = c.reshape(L, L)
                continue
            diff = np.flatnonzero(c != ref[h])
            for idx in diff:
                key = (h, int(idx) // L, int(idx) % L)
                if key not in bad:
                    bad[key] = (ref_pair[h], (x, y), int(ref[h][idx]), int(c[idx]))
    if not bad:
        return p, None
    key = min(bad)
    pair0, pair1, v0, v1 = bad[key]
    return p, key + (pair0, pair1, v0, v1)


def _bfs_all(n, outm):
    dist = [[-1] * n for _ in range(n)]
    full = (1 << n) - 1
    for s in range(n):
        row = dist[s]
        row[s] = 0
        seen = 1 << s
        frontier = seen
        d = 0
        while frontier and seen != full:
            d += 1
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= outm[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
            while nxt:
                low = nxt & -nxt
                row[low.bit_length() - 1] = d
                nxt ^= low
        if seen != full:
            return None
    return dist


def screen_masks(n, outm):
    """True if the digraph given by out-neighbour bitmasks is strongly
    connected and weakly distance-regular (early exit, no tensor kept)."""
    dist = _bfs_all(n, outm)
    if dist is None:
        return False
    ids = {}
    lab = [[0] * n for _ in range(n)]
    for x in range(n):
        dx = dist[x]
        lx = lab[x]
        for y in range(n):
            key = (dx[y], dist[y][x])
            h = ids.get(key)
            if h is None:
                h = ids[key] = len(ids)
            lx[y] = h
    L = len(ids)
    ref = [None] * L
    for x in range(n):
        lx = lab[x]
        for y in range(n):
            cnt = {}
            for z in range(n):
                key = lx[z] * L + lab[z][y]
                cnt[key] = cnt.get(key, 0) + 1
            h = lx[y]
            if ref[h] is None:
                ref[h] = cnt
            elif ref[h] != cnt:
                return False
    return True


class SearchKernel:
    """Depth-first orientation enumerator with incremental pruning.

    ``plan`` is the dict produced by ``wdrd.search.build_plan``; both kernel
    implementations consume the same plan so they traverse identical trees.
    """

    def __init__(self, plan):
        self.n = n = plan["n"]
        self.edges = [tuple(e) for e in plan["edges"]]
        self.E = len(self.edges)
        self.flags = plan["flags"]
        self.symmetry_break = bool(plan["symmetry_break"])
        self.cube_k13 = bool(plan["cube_k13"])
        self.cycles = [[tuple(c) for c in cs] for cs in plan["cycles"]]
        self.related = [list(r) for r in plan["related"]]
        self.line_of = list(plan["line_of"])
        self.lines = [list(l) for l in plan["lines"]]
        self.st = [0] * self.E
        self.outm = [0] * n
        self.inm = [0] * n
        self.out = [0] * n
        self.inn = [0] * n
        self.und = [0] * n
        for u, v in self.edges:
            self.und[u] += 1
            self.und[v] += 1
        self.bid = [0] * n
        self.ow_out = [0] * n
        self.ow_in = [0] * n
        self.line_und = [0] * len(self.lines)
        for e, l in enumerate(self.line_of):
            if l >= 0:
                self.line_und[l] += 1
        self.full_count = 0
        self.k = -1
        self.oneway = 0
        self.nbig = 0
        self.decided = 0
        self.visited = 0
        self.nodes = 0
        self.pruned = [0, 0, 0, 0]
        self.complete = True

    # -- incremental bookkeeping -------------------------------------------
    def _arc(self, x, y):
        return (self.outm[x] >> y) & 1

    def _add_arc(self, x, y):
        self.outm[x] |= 1 << y
        self.inm[y] |= 1 << x
        self.out[x] += 1
        self.inn[y] += 1

    def _del_arc(self, x, y):
        self.outm[x] &= ~(1 << y)
        self.inm[y] &= ~(1 << x)
        self.out[x] -= 1
        self.inn[y] -= 1

    def assign(self, e, s):
        """Set edge ``e`` to state ``s``; return the bit of the first prune
        predicate that cuts, or 0. Always pair with :meth:`unassign`."""
        u, v = self.edges[e]
        self.st[e] = s
        self.decided += 1
        self.und[u] -= 1
        self.und[v] -= 1
        if s == FORWARD:
            self._add_arc(u, v)
            self.ow_out[u] += 1
            self.ow_in[v] += 1
            self.oneway += 1
        elif s == BACKWARD:
            self._add_arc(v, u)
            self.ow_out[v] += 1
            self.ow_in[u] += 1
            self.oneway += 1
        else:
            self._add_arc(u, v)
            self._add_arc(v, u)
            for w in (u, v):
                self.bid[w] += 1
                if self.bid[w] == 2:
                    self.nbig += 1
        for w in (u, v):
            if self.und[w] == 0:
                self.full_count += 1
                if self.full_count == 1:
                    self.k = self.out[w]
        l = self.line_of[e]
        if l >= 0:
            self.line_und[l] -= 1
        flags = self.flags
        if flags & PRUNE_REGULAR and self._cut_regular(u, v):
            return PRUNE_REGULAR
        if flags & PRUNE_IMPROPER and self.decided == self.E and self.oneway == 0:
            return PRUNE_IMPROPER
        if flags & PRUNE_ARC_TYPE and self._cut_arc_type(e, u, v):
            return PRUNE_ARC_TYPE
        if flags & PRUNE_LINE and l >= 0 and self.line_und[l] == 0 and self._cut_line(l):
            return PRUNE_LINE
        return 0

    def unassign(self, e):
        u, v = self.edges[e]
        s = self.st[e]
        l = self.line_of[e]
        if l >= 0:
            self.line_und[l] += 1
        for w in (u, v):
            if self.und[w] == 0:
                self.full_count -= 1
        if s == FORWARD:
            self._del_arc(u, v)
            self.ow_out[u] -= 1
            self.ow_in[v] -= 1
            self.oneway -= 1
        elif s == BACKWARD:
            self._del_arc(v, u)
            self.ow_out[v] -= 1
            self.ow_in[u] -= 1
            self.oneway -= 1
        else:
            self._del_arc(u, v)
            self._del_arc(v, u)
            for w in (u, v):
                if self.bid[w] == 2:
                    self.nbig -= 1
                self.bid[w] -= 1
        self.und[u] += 1
        self.und[v] += 1
        self.decided -= 1
        self.st[e] = 0

    # -- predicates ------------------------------------------------------------
    def _vertex_bad(self, w, k):
        o, i, r = self.out[w], self.inn[w], self.und[w]
        if abs(o - i) > r:
            return True
        if k >= 0 and (o > k or i > k or o + r < k or i + r < k):
            return True
        return False

    def _cut_regular(self, u, v):
        k = self.k if self.full_count > 0 else -1
        for w in (u, v):
            if self._vertex_bad(w, k):
                return True
        if k >= 0 and self.full_count <= 2 and (self.und[u] == 0 or self.und[v] == 0):
            # the common valency may have just been fixed; re-check everyone
            for w in range(self.n):
                if self._vertex_bad(w, k):
                    return True
        return False

    def _returns_in_cycle(self, f):
        u, v = self.edges[f]
        s = self.st[f]
        arc = self._arc
        for e1, e2, e3, a, b in self.cycles[f]:
            if s == FORWARD:
                if arc(v, a) and arc(a, b) and arc(b, u):
                    return True
            elif arc(u, b) and arc(b, a) and arc(a, v):
                return True
        return False

    def _cycles_decided(self, f):
        st = self.st
        for e1, e2, e3, a, b in self.cycles[f]:
            if not (st[e1] and st[e2] and st[e3]):
                return False
        return True

    def _cut_arc_type(self, e, u, v):
        if self.oneway and self.nbig:
            return True
        if self.cube_k13:
            for w in (u, v):
                if self.ow_out[w] > 1 or self.ow_in[w] > 1:
                    return True
        st = self.st
        for f in [e] + self.related[e]:
            if st[f] in (FORWARD, BACKWARD) and self._cycles_decided(f):
                if not self._returns_in_cycle(f):
                    return True
        return False

    def _cut_line(self, l):
        verts = self.lines[l]
        mask = 0
        for x in verts:
            mask |= 1 << x
        outs = {bin(self.outm[x] & mask).count("1") for x in verts}
        ins = {bin(self.inm[x] & mask).count("1") for x in verts}
        if len(outs) > 1 or len(ins) > 1:
            return True
        for x in verts:
            for y in verts:
                if x != y and self._arc(x, y) and not self._arc(y, x):
                    if not (self.outm[y] & self.inm[x] & mask):
                        return True
        return False

    # -- traversal -------------------------------------------------------------
    def state_string(self):
        return "".join(STATE_CHARS[s] for s in self.st)

    def leaf_passes(self):
        n = self.n
        k = self.out[0]
        for w in range(n):
            if self.out[w] != k or self.inn[w] != k:
                return False
        return screen_masks(n, self.outm)

    def run(self, depth=0, leaf_budget=-1, deadline=None, visitor=None):
        """Enumerate all completions below ``depth`` (edges before ``depth``
        must already be assigned). Returns the list of leaves passing the
        WDRD screen (empty in visitor mode)."""
        self._budget = leaf_budget
        self._deadline = deadline
        self._visitor = visitor
        self._found = []
        self._aborted = False
        if depth >= self.E:
            self._leaf()
        else:
            self._dfs(depth)
        self.complete = not self._aborted
        return self._found

    def _leaf(self):
        if self._budget >= 0 and self.visited >= self._budget:
            self._aborted = True
            return
        self.visited += 1
        if self._visitor is not None:
            self._visitor(self.state_string())
        elif self.leaf_passes():
            self._found.append(self.state_string())

    def _dfs(self, e):
        last = e == self.E - 1
        for s in (FORWARD, BACKWARD, BOTH):
            if s == BACKWARD and e == 0 and self.symmetry_break:
                continue
            self.nodes += 1
            if (self.nodes & 0xFFF) == 0 and self._deadline is not None:
                if time.monotonic() > self._deadline:
                    self._aborted = True
            if self._aborted:
                return
            cut = self.assign(e, s)
            if cut:
                self.pruned[cut.bit_length() - 1] += 1
            elif last:
                self._leaf()
            else:
                self._dfs(e + 1)
            self.unassign(e)
            if self._aborted:
                return
