# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Semantics mirror ``wdrd._pykernels`` exactly."""
import time

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free, realloc
from libc.string cimport memset, memcmp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

NAME = "native"

DEF C_REGULAR = 1
DEF C_IMPROPER = 2
DEF C_ARC_TYPE = 4
DEF C_LINE = 8
PRUNE_REGULAR = C_REGULAR
PRUNE_IMPROPER = C_IMPROPER
PRUNE_ARC_TYPE = C_ARC_TYPE
PRUNE_LINE = C_LINE

DEF FORWARD = 1
DEF BACKWARD = 2
DEF BOTH = 3
DEF MAXN = 64


def distance_matrix(adj):
    """All-pairs BFS distances of a dense 0/1 adjacency matrix, -1 if unreachable."""
    cdef const cnp.uint8_t[:, ::1] a = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    out = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] dist = out
    cdef int *queue = <int *> malloc(max(n, 1) * sizeof(int))
    cdef Py_ssize_t s, head, tail, x, y
    try:
        for s in range(n):
            dist[s, s] = 0
            queue[0] = <int> s
            head = 0
            tail = 1
            while head < tail:
                x = queue[head]
                head += 1
                for y in range(n):
                    if a[x, y] and dist[s, y] < 0:
                        dist[s, y] = dist[s, x] + 1
                        queue[tail] = <int> y
                        tail += 1
    finally:
        free(queue)
    return out


def count_tensor(lab, num_labels):
    """See ``wdrd._pykernels.count_tensor``."""
    cdef const int[:, ::1] lb = np.ascontiguousarray(lab, dtype=np.int32)
    cdef Py_ssize_t n = lb.shape[0]
    cdef Py_ssize_t L = num_labels
    cdef Py_ssize_t LL = L * L
    p_arr = np.zeros((L, L, L), dtype=np.int64)
    cdef int64_t[:, :, ::1] p = p_arr
    # first differing pair per triple: x1, y1, v0, v1 (x1 < 0 means none)
    bad_arr = np.full((L, L, L, 4), -1, dtype=np.int64)
    cdef int64_t[:, :, :, ::1] bad = bad_arr
    ref_arr = np.full((L, 2), -1, dtype=np.int64)
    cdef int64_t[:, ::1] ref = ref_arr
    cdef int64_t *cnt = <int64_t *> malloc(max(LL, 1) * sizeof(int64_t))
    cdef Py_ssize_t x, y, z, h, idx, i, j
    cdef bint any_bad = False
    try:
        for x in range(n):
            for y in range(n):
                memset(cnt, 0, LL * sizeof(int64_t))
                for z in range(n):
                    cnt[lb[x, z] * L + lb[z, y]] += 1
                h = lb[x, y]
                if ref[h, 0] < 0:
                    ref[h, 0] = x
                    ref[h, 1] = y
                    for idx in range(LL):
                        p[h, idx // L, idx % L] = cnt[idx]
                    continue
                for idx in range(LL):
                    i = idx // L
                    j = idx % L
                    if cnt[idx] != p[h, i, j] and bad[h, i, j, 0] < 0:
                        bad[h, i, j, 0] = x
                        bad[h, i, j, 1] = y
                        bad[h, i, j, 2] = p[h, i, j]
                        bad[h, i, j, 3] = cnt[idx]
                        any_bad = True
    finally:
        free(cnt)
    if not any_bad:
        return p_arr, None
    for h in range(L):
        for i in range(L):
            for j in range(L):
                if bad[h, i, j, 0] >= 0:
                    return p_arr, (int(h), int(i), int(j),
                                   (int(ref[h, 0]), int(ref[h, 1])),
                                   (int(bad[h, i, j, 0]), int(bad[h, i, j, 1])),
                                   int(bad[h, i, j, 2]), int(bad[h, i, j, 3]))


cdef inline int popcount64(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef class SearchKernel:
    """Depth-first orientation enumerator; see ``wdrd._pykernels.SearchKernel``."""

    cdef int n, E, flags, full_count, k, oneway, nbig, decided, nlines
    cdef bint symmetry_break, cube_k13, aborted
    cdef int *eu
    cdef int *ev
    cdef int *st
    cdef uint64_t outm[MAXN]
    cdef uint64_t inm[MAXN]
    cdef int out[MAXN]
    cdef int inn[MAXN]
    cdef int und[MAXN]
    cdef int bid[MAXN]
    cdef int ow_out[MAXN]
    cdef int ow_in[MAXN]
    cdef int *cyc_ptr
    cdef int *cyc
    cdef int *rel_ptr
    cdef int *rel
    cdef int *line_of
    cdef int *line_und
    cdef uint64_t *line_mask
    cdef int *line_ptr
    cdef int *line_verts
    # screening scratch
    cdef int dist[MAXN][MAXN]
    cdef int lab[MAXN][MAXN]
    cdef int *idtab
    cdef int *cnt
    cdef int *refbuf
    cdef int cap
    cdef public long long visited, nodes
    cdef long long pruned_c[4]
    cdef long long leaf_budget
    cdef double deadline
    cdef bint has_deadline
    cdef object visitor
    cdef list found

    def __cinit__(self, plan):
        cdef int n = plan["n"]
        if n > MAXN:
            raise ValueError("native search kernel supports at most 64 vertices")
        self.n = n
        edges = plan["edges"]
        self.E = len(edges)
        cdef int E = self.E
        self.flags = plan["flags"]
        self.symmetry_break = bool(plan["symmetry_break"])
        self.cube_k13 = bool(plan["cube_k13"])
        self.eu = <int *> malloc((E + 1) * sizeof(int))
        self.ev = <int *> malloc((E + 1) * sizeof(int))
        self.st = <int *> calloc(E + 1, sizeof(int))
        memset(self.outm, 0, sizeof(self.outm))
        memset(self.inm, 0, sizeof(self.inm))
        memset(self.out, 0, sizeof(self.out))
        memset(self.inn, 0, sizeof(self.inn))
        memset(self.und, 0, sizeof(self.und))
        memset(self.bid, 0, sizeof(self.bid))
        memset(self.ow_out, 0, sizeof(self.ow_out))
        memset(self.ow_in, 0, sizeof(self.ow_in))
        cdef int e, u, v, t, c
        for e in range(E):
            u, v = edges[e]
            self.eu[e] = u
            self.ev[e] = v
            self.und[u] += 1
            self.und[v] += 1
        cycles = plan["cycles"]
        total = sum(len(cs) for cs in cycles)
        self.cyc_ptr = <int *> malloc((E + 1) * sizeof(int))
        self.cyc = <int *> malloc((5 * total + 1) * sizeof(int))
        t = 0
        for e in range(E):
            self.cyc_ptr[e] = t
            for cy in cycles[e]:
                for c in range(5):
                    self.cyc[5 * t + c] = cy[c]
                t += 1
        self.cyc_ptr[E] = t
        related = plan["related"]
        total = sum(len(r) for r in related)
        self.rel_ptr = <int *> malloc((E + 1) * sizeof(int))
        self.rel = <int *> malloc((total + 1) * sizeof(int))
        t = 0
        for e in range(E):
            self.rel_ptr[e] = t
            for f in related[e]:
                self.rel[t] = f
                t += 1
        self.rel_ptr[E] = t
        lines = plan["lines"]
        self.nlines = len(lines)
        self.line_of = <int *> malloc((E + 1) * sizeof(int))
        self.line_und = <int *> calloc(self.nlines + 1, sizeof(int))
        self.line_mask = <uint64_t *> calloc(self.nlines + 1, sizeof(uint64_t))
        self.line_ptr = <int *> malloc((self.nlines + 1) * sizeof(int))
        total = sum(len(l) for l in lines)
        self.line_verts = <int *> malloc((total + 1) * sizeof(int))
        t = 0
        for e in range(self.nlines):
            self.line_ptr[e] = t
            for x in lines[e]:
                self.line_verts[t] = x
                self.line_mask[e] |= (<uint64_t> 1) << <int> x
                t += 1
        self.line_ptr[self.nlines] = t
        for e in range(E):
            self.line_of[e] = plan["line_of"][e]
            if self.line_of[e] >= 0:
                self.line_und[self.line_of[e]] += 1
        self.idtab = <int *> malloc((n + 1) * (n + 1) * sizeof(int))
        self.cap = 0
        self.cnt = NULL
        self.refbuf = NULL
        self.full_count = 0
        self.k = -1
        self.oneway = 0
        self.nbig = 0
        self.decided = 0
        self.visited = 0
        self.nodes = 0
        memset(self.pruned_c, 0, sizeof(self.pruned_c))
        self.aborted = False

    def __dealloc__(self):
        free(self.eu); free(self.ev); free(self.st)
        free(self.cyc_ptr); free(self.cyc); free(self.rel_ptr); free(self.rel)
        free(self.line_of); free(self.line_und); free(self.line_mask)
        free(self.line_ptr); free(self.line_verts)
        free(self.idtab); free(self.cnt); free(self.refbuf)

    property pruned:
        def __get__(self):
            return [self.pruned_c[0], self.pruned_c[1], self.pruned_c[2], self.pruned_c[3]]

    property complete:
        def __get__(self):
            return not self.aborted

    # -- incremental bookkeeping -------------------------------------------
    cdef inline void _add_arc(self, int x, int y) noexcept nogil:
        self.outm[x] |= (<uint64_t> 1) << y
        self.inm[y] |= (<uint64_t> 1) << x
        self.out[x] += 1
        self.inn[y] += 1

    cdef inline void _del_arc(self, int x, int y) noexcept nogil:
        self.outm[x] &= ~((<uint64_t> 1) << y)
        self.inm[y] &= ~((<uint64_t> 1) << x)
        self.out[x] -= 1
        self.inn[y] -= 1

    cdef inline bint _arc(self, int x, int y) noexcept nogil:
        return (self.outm[x] >> y) & 1

    cdef int _assign(self, int e, int s) noexcept nogil:
        cdef int u = self.eu[e]
        cdef int v = self.ev[e]
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
            self.bid[u] += 1
            if self.bid[u] == 2:
                self.nbig += 1
            self.bid[v] += 1
            if self.bid[v] == 2:
                self.nbig += 1
        if self.und[u] == 0:
            self.full_count += 1
            if self.full_count == 1:
                self.k = self.out[u]
        if self.und[v] == 0:
            self.full_count += 1
            if self.full_count == 1:
                self.k = self.out[v]
        cdef int l = self.line_of[e]
        if l >= 0:
            self.line_und[l] -= 1
        if self.flags & C_REGULAR and self._cut_regular(u, v):
            return C_REGULAR
        if self.flags & C_IMPROPER and self.decided == self.E and self.oneway == 0:
            return C_IMPROPER
        if self.flags & C_ARC_TYPE and self._cut_arc_type(e, u, v):
            return C_ARC_TYPE
        if self.flags & C_LINE and l >= 0 and self.line_und[l] == 0 and self._cut_line(l):
            return C_LINE
        return 0

    cdef void _unassign(self, int e) noexcept nogil:
        cdef int u = self.eu[e]
        cdef int v = self.ev[e]
        cdef int s = self.st[e]
        cdef int l = self.line_of[e]
        if l >= 0:
            self.line_und[l] += 1
        if self.und[u] == 0:
            self.full_count -= 1
        if self.und[v] == 0:
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
            if self.bid[u] == 2:
                self.nbig -= 1
            self.bid[u] -= 1
            if self.bid[v] == 2:
                self.nbig -= 1
            self.bid[v] -= 1
        self.und[u] += 1
        self.und[v] += 1
        self.decided -= 1
        self.st[e] = 0

    def assign(self, int e, int s):
        return self._assign(e, s)

    def unassign(self, int e):
        self._unassign(e)

    # -- predicates ------------------------------------------------------------
    cdef inline bint _vertex_bad(self, int w, int k) noexcept nogil:
        cdef int o = self.out[w]
        cdef int i = self.inn[w]
        cdef int r = self.und[w]
        if o - i > r or i - o > r:
            return True
        if k >= 0 and (o > k or i > k or o + r < k or i + r < k):
            return True
        return False

    cdef bint _cut_regular(self, int u, int v) noexcept nogil:
        cdef int k = self.k if self.full_count > 0 else -1
        cdef int w
        if self._vertex_bad(u, k) or self._vertex_bad(v, k):
            return True
        if k >= 0 and self.full_count <= 2 and (self.und[u] == 0 or self.und[v] == 0):
            for w in range(self.n):
                if self._vertex_bad(w, k):
                    return True
        return False

    cdef bint _cycles_decided(self, int f) noexcept nogil:
        cdef int t
        cdef int *c
        for t in range(self.cyc_ptr[f], self.cyc_ptr[f + 1]):
            c = self.cyc + 5 * t
            if self.st[c[0]] == 0 or self.st[c[1]] == 0 or self.st[c[2]] == 0:
                return False
        return True

    cdef bint _returns_in_cycle(self, int f) noexcept nogil:
        cdef int u = self.eu[f]
        cdef int v = self.ev[f]
        cdef int s = self.st[f]
        cdef int t, a, b
        for t in range(self.cyc_ptr[f], self.cyc_ptr[f + 1]):
            a = self.cyc[5 * t + 3]
            b = self.cyc[5 * t + 4]
            if s == FORWARD:
                if self._arc(v, a) and self._arc(a, b) and self._arc(b, u):
                    return True
            elif self._arc(u, b) and self._arc(b, a) and self._arc(a, v):
                return True
        return False

    cdef inline bint _oneway_fully_decided_bad(self, int f) noexcept nogil:
        cdef int s = self.st[f]
        if (s == FORWARD or s == BACKWARD) and self._cycles_decided(f):
            return not self._returns_in_cycle(f)
        return False

    cdef bint _cut_arc_type(self, int e, int u, int v) noexcept nogil:
        cdef int t
        if self.oneway and self.nbig:
            return True
        if self.cube_k13:
            if self.ow_out[u] > 1 or self.ow_in[u] > 1 or self.ow_out[v] > 1 or self.ow_in[v] > 1:
                return True
        if self._oneway_fully_decided_bad(e):
            return True
        for t in range(self.rel_ptr[e], self.rel_ptr[e + 1]):
            if self._oneway_fully_decided_bad(self.rel[t]):
                return True
        return False

    cdef bint _cut_line(self, int l) noexcept nogil:
        cdef uint64_t mask = self.line_mask[l]
        cdef int t, x, y, o0 = -1, i0 = -1
        for t in range(self.line_ptr[l], self.line_ptr[l + 1]):
            x = self.line_verts[t]
            if o0 < 0:
                o0 = popcount64(self.outm[x] & mask)
                i0 = popcount64(self.inm[x] & mask)
            elif popcount64(self.outm[x] & mask) != o0 or popcount64(self.inm[x] & mask) != i0:
                return True
        cdef uint64_t oneway_out
        for t in range(self.line_ptr[l], self.line_ptr[l + 1]):
            x = self.line_verts[t]
            oneway_out = self.outm[x] & mask & ~self.inm[x]
            while oneway_out:
                y = __builtin_ctzll(oneway_out)
                oneway_out &= oneway_out - 1
                if not (self.outm[y] & self.inm[x] & mask):
                    return True
        return False

    # -- leaf screen -------------------------------------------------------------
    cdef bint _ensure_cap(self, int L) noexcept nogil:
        cdef int newcap
        if L <= self.cap:
            return True
        newcap = L if L > 2 * self.cap else 2 * self.cap
        self.cnt = <int *> realloc(self.cnt, newcap * newcap * sizeof(int))
        self.refbuf = <int *> realloc(self.refbuf, (newcap * newcap * newcap + newcap) * sizeof(int))
        if self.cnt == NULL or self.refbuf == NULL:
            return False
        self.cap = newcap
        return True

    cdef bint _screen(self) noexcept nogil:
        cdef int n = self.n
        cdef int x, y, z, w, d, L, LL, h, code
        cdef uint64_t full = (<uint64_t> -1) if n == 64 else (((<uint64_t> 1) << n) - 1)
        cdef uint64_t seen, frontier, nxt, f
        cdef int k = self.out[0]
        for w in range(n):
            if self.out[w] != k or self.inn[w] != k:
                return False
        for x in range(n):
            for y in range(n):
                self.dist[x][y] = -1
            self.dist[x][x] = 0
            seen = (<uint64_t> 1) << x
            frontier = seen
            d = 0
            while frontier and seen != full:
                d += 1
                nxt = 0
                f = frontier
                while f:
                    nxt |= self.outm[__builtin_ctzll(f)]
                    f &= f - 1
                nxt &= ~seen
                seen |= nxt
                frontier = nxt
                while nxt:
                    self.dist[x][__builtin_ctzll(nxt)] = d
                    nxt &= nxt - 1
            if seen != full:
                return False
        for x in range((n + 1) * (n + 1)):
            self.idtab[x] = -1
        L = 0
        for x in range(n):
            for y in range(n):
                code = self.dist[x][y] * (n + 1) + self.dist[y][x]
                if self.idtab[code] < 0:
                    self.idtab[code] = L
                    L += 1
                self.lab[x][y] = self.idtab[code]
        if not self._ensure_cap(L):
            return False
        LL = L * L
        # refbuf: L "seen" flags followed by L blocks of LL counts
        for h in range(L):
            self.refbuf[h] = 0
        for x in range(n):
            for y in range(n):
                memset(self.cnt, 0, LL * sizeof(int))
                for z in range(n):
                    self.cnt[self.lab[x][z] * L + self.lab[z][y]] += 1
                h = self.lab[x][y]
                if not self.refbuf[h]:
                    self.refbuf[h] = 1
                    for z in range(LL):
                        self.refbuf[L + h * LL + z] = self.cnt[z]
                elif memcmp(self.refbuf + L + h * LL, self.cnt, LL * sizeof(int)) != 0:
                    return False
        return True

    def leaf_passes(self):
        return self._screen()

    def state_string(self):
        cdef bytearray b = bytearray(self.E)
        cdef int e
        for e in range(self.E):
            b[e] = 43 if self.st[e] == FORWARD else (45 if self.st[e] == BACKWARD else 61)
        return b.decode("ascii")

    # -- traversal -------------------------------------------------------------
    def run(self, int depth=0, long long leaf_budget=-1, deadline=None, visitor=None):
        self.leaf_budget = leaf_budget
        self.has_deadline = deadline is not None
        self.deadline = deadline if deadline is not None else 0.0
        self.visitor = visitor
        self.found = []
        self.aborted = False
        if depth >= self.E:
            self._leaf()
        else:
            self._dfs(depth)
        return self.found

    cdef void _leaf(self) except *:
        if self.leaf_budget >= 0 and self.visited >= self.leaf_budget:
            self.aborted = True
            return
        self.visited += 1
        if self.visitor is not None:
            self.visitor(self.state_string())
        elif self._screen():
            self.found.append(self.state_string())

    cdef void _dfs(self, int e) except *:
        cdef bint last = e == self.E - 1
        cdef int s, cut
        for s in range(1, 4):
            if s == BACKWARD and e == 0 and self.symmetry_break:
                continue
            self.nodes += 1
            if (self.nodes & 0xFFF) == 0 and self.has_deadline:
                if time.monotonic() > self.deadline:
                    self.aborted = True
            if self.aborted:
                return
            cut = self._assign(e, s)
            if cut:
                self.pruned_c[0 if cut == 1 else (1 if cut == 2 else (2 if cut == 4 else 3))] += 1
            elif last:
                self._leaf()
            else:
                self._dfs(e + 1)
            self._unassign(e)
            if self.aborted:
                return
