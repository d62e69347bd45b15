# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels.

Word-array mirror of _kernels_py: same tie-breaking, same node accounting,
same witness order, so solver output is byte-identical across backends.
tests/test_kernels.py enforces the equivalence on random corpora.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc

cdef extern from *:
    """
    #if defined(_MSC_VER)
    #  include <intrin.h>
       static inline int vsc_popcnt(unsigned long long x) { return (int)__popcnt64(x); }
    #else
       static inline int vsc_popcnt(unsigned long long x) { return __builtin_popcountll(x); }
    #endif
    """
    int vsc_popcnt(unsigned long long x) nogil

ctypedef unsigned long long u64

FEASIBLE = 1
INFEASIBLE = 0
UNKNOWN = -1

cdef int _FEASIBLE = 1
cdef int _INFEASIBLE = 0
cdef int _UNKNOWN = -1


cdef void* _alloc(size_t nbytes) except NULL:
    cdef void* p = PyMem_Malloc(nbytes if nbytes > 0 else 1)
    if p == NULL:
        raise MemoryError()
    return p


cdef void _pack_mask(object mask, u64* dst, int words):
    # one C-level conversion per mask; assembling words from bytes keeps the
    # layout independent of host endianness
    b = (<object> mask).to_bytes(words * 8, "little")
    cdef const unsigned char* p = b
    cdef int w, i
    cdef u64 v
    for w in range(words):
        v = 0
        for i in range(8):
            v |= (<u64> p[w * 8 + i]) << (8 * i)
        dst[w] = v


cdef int _gain(u64* mask, u64* covered, int words) nogil:
    cdef int w, g = 0
    for w in range(words):
        g += vsc_popcnt(mask[w] & ~covered[w])
    return g


def greedy_rounds(int n, masks, owner, weights):
    """Round-based ownership-aware greedy; see _kernels_py.greedy_rounds."""
    cdef int k = len(masks)
    cdef int m = len(weights)
    cdef int words = (n + 63) // 64
    if n == 0:
        return []

    cdef u64* M = <u64*> _alloc(<size_t> k * words * sizeof(u64))
    cdef u64* cov = <u64*> _alloc(<size_t> words * sizeof(u64))
    cdef int* own = <int*> _alloc(<size_t> k * sizeof(int))
    cdef int* wgt = <int*> _alloc(<size_t> m * sizeof(int))
    cdef char* picked = <char*> _alloc(<size_t> k if k > 0 else 1)
    # agent -> owned set indices, flattened with offsets
    cdef int* fam = <int*> _alloc(<size_t> k * sizeof(int) if k > 0 else sizeof(int))
    cdef int* fam_off = <int*> _alloc(<size_t> (m + 1) * sizeof(int))

    cdef int i, j, w, b, g, best, best_gain, uncovered, pos
    rounds = []
    try:
        for j in range(k):
            _pack_mask(masks[j], M + j * words, words)
            own[j] = owner[j]
            picked[j] = 0
        for i in range(m):
            wgt[i] = weights[i]
        for w in range(words):
            cov[w] = 0
        # bucket set indices by owner, ascending within each agent
        for i in range(m + 1):
            fam_off[i] = 0
        for j in range(k):
            fam_off[own[j] + 1] += 1
        for i in range(m):
            fam_off[i + 1] += fam_off[i]
        counts = [0] * m
        for j in range(k):
            i = own[j]
            fam[fam_off[i] + counts[i]] = j
            counts[i] += 1

        uncovered = n
        while uncovered > 0:
            this_round = []
            for i in range(m):
                for b in range(wgt[i]):
                    if uncovered == 0:
                        break
                    best = -1
                    best_gain = 0
                    for pos in range(fam_off[i], fam_off[i + 1]):
                        j = fam[pos]
                        if picked[j]:
                            continue
                        g = _gain(M + j * words, cov, words)
                        if g > best_gain:
                            best = j
                            best_gain = g
                    if best < 0:
                        break  # zero gain forfeits the rest of this agent's turn
                    picked[best] = 1
                    for w in range(words):
                        cov[w] |= M[best * words + w]
                    uncovered -= best_gain
                    this_round.append((i, best, best_gain))
                if uncovered == 0:
                    break
            if not this_round:
                raise RuntimeError(
                    "greedy round made no progress with elements still uncovered"
                )
            rounds.append(this_round)
        return rounds
    finally:
        PyMem_Free(M)
        PyMem_Free(cov)
        PyMem_Free(own)
        PyMem_Free(wgt)
        PyMem_Free(picked)
        PyMem_Free(fam)
        PyMem_Free(fam_off)


def classic_greedy_picks(int n, masks):
    """Ownership-blind greedy cover; see _kernels_py.classic_greedy_picks."""
    cdef int k = len(masks)
    cdef int words = (n + 63) // 64
    if n == 0:
        return []

    cdef u64* M = <u64*> _alloc(<size_t> k * words * sizeof(u64))
    cdef u64* cov = <u64*> _alloc(<size_t> words * sizeof(u64))
    cdef char* picked = <char*> _alloc(<size_t> k if k > 0 else 1)
    cdef int j, w, g, best, best_gain, uncovered
    order = []
    try:
        for j in range(k):
            _pack_mask(masks[j], M + j * words, words)
            picked[j] = 0
        for w in range(words):
            cov[w] = 0
        uncovered = n
        while uncovered > 0:
            best = -1
            best_gain = 0
            for j in range(k):
                if picked[j]:
                    continue
                g = _gain(M + j * words, cov, words)
                if g > best_gain:
                    best = j
                    best_gain = g
            if best < 0:
                raise RuntimeError("no set adds coverage but elements remain uncovered")
            picked[best] = 1
            for w in range(words):
                cov[w] |= M[best * words + w]
            uncovered -= best_gain
            order.append((best, best_gain))
        return order
    finally:
        PyMem_Free(M)
        PyMem_Free(cov)
        PyMem_Free(picked)


cdef class _CoverSearch:
    """Budgeted cover DFS state. Covered masks are kept on a per-depth stack
    so child states need no undo; budgets and the witness are undone on
    backtrack, mirroring the pure-Python twin exactly."""

    cdef int n, k, m, words, max_depth
    cdef long long max_nodes, nodes
    cdef u64* M
    cdef u64* cov_stack          # (max_depth + 1) * words
    cdef int* own
    cdef int* budgets
    cdef int* elem_off           # n + 1
    cdef int* elem_sets          # total membership count
    cdef int* cand_buf           # (max_depth + 1) * k
    cdef int* gain_buf
    cdef int* witness
    cdef int witness_len
    cdef dict failed

    def __cinit__(self):
        self.M = NULL
        self.cov_stack = NULL
        self.own = NULL
        self.budgets = NULL
        self.elem_off = NULL
        self.elem_sets = NULL
        self.cand_buf = NULL
        self.gain_buf = NULL
        self.witness = NULL

    def __dealloc__(self):
        PyMem_Free(self.M)
        PyMem_Free(self.cov_stack)
        PyMem_Free(self.own)
        PyMem_Free(self.budgets)
        PyMem_Free(self.elem_off)
        PyMem_Free(self.elem_sets)
        PyMem_Free(self.cand_buf)
        PyMem_Free(self.gain_buf)
        PyMem_Free(self.witness)

    cdef void _setup(self, int n, masks, owner, budgets, long long max_nodes):
        cdef int j, w, e, total
        self.n = n
        self.k = len(masks)
        self.m = len(budgets)
        self.words = (n + 63) // 64
        self.max_nodes = max_nodes
        self.nodes = 0
        self.witness_len = 0
        self.failed = {}
        # every search step covers a fresh element, so depth <= min(n, k)
        self.max_depth = self.k if self.k < n else n

        self.M = <u64*> _alloc(<size_t> self.k * self.words * sizeof(u64))
        self.cov_stack = <u64*> _alloc(<size_t> (self.max_depth + 1) * self.words * sizeof(u64))
        self.own = <int*> _alloc(<size_t> self.k * sizeof(int) if self.k else sizeof(int))
        self.budgets = <int*> _alloc(<size_t> self.m * sizeof(int))
        self.cand_buf = <int*> _alloc(<size_t> (self.max_depth + 1) * self.k * sizeof(int) if self.k else sizeof(int))
        self.gain_buf = <int*> _alloc(<size_t> (self.max_depth + 1) * self.k * sizeof(int) if self.k else sizeof(int))
        self.witness = <int*> _alloc(<size_t> (self.max_depth + 1) * sizeof(int))

        for j in range(self.k):
            _pack_mask(masks[j], self.M + j * self.words, self.words)
            self.own[j] = owner[j]
        for j in range(self.m):
            self.budgets[j] = budgets[j]
        for w in range(self.words):
            self.cov_stack[w] = 0

        # element -> containing sets, ascending set index
        self.elem_off = <int*> _alloc(<size_t> (n + 1) * sizeof(int))
        for e in range(n + 1):
            self.elem_off[e] = 0
        for j in range(self.k):
            for e in range(n):
                if (self.M[j * self.words + (e >> 6)] >> (e & 63)) & 1:
                    self.elem_off[e + 1] += 1
        for e in range(n):
            self.elem_off[e + 1] += self.elem_off[e]
        total = self.elem_off[n]
        self.elem_sets = <int*> _alloc(<size_t> total * sizeof(int) if total else sizeof(int))
        fill = [0] * n
        for j in range(self.k):
            for e in range(n):
                if (self.M[j * self.words + (e >> 6)] >> (e & 63)) & 1:
                    self.elem_sets[self.elem_off[e] + fill[e]] = j
                    fill[e] += 1

    cdef bytes _cov_key(self, int depth):
        return PyBytes_FromStringAndSize(
            <char*> (self.cov_stack + depth * self.words),
            self.words * sizeof(u64),
        )

    cdef void _record_failure(self, int depth):
        cdef int i
        bt = tuple([self.budgets[i] for i in range(self.m)])
        key = self._cov_key(depth)
        lst = self.failed.setdefault(key, [])
        lst[:] = [f for f in lst if not all(x >= y for x, y in zip(bt, f))]
        lst.append(bt)

    cdef int _dfs(self, int depth, int uncovered):
        cdef u64* cov = self.cov_stack + depth * self.words
        cdef u64* child
        cdef int i, j, w, e, g, pos, cand_count, a, r
        cdef int total_budget, max_gain
        cdef int* cands = self.cand_buf + depth * self.k
        cdef int* gains = self.gain_buf + depth * self.k

        self.nodes += 1
        if self.nodes > self.max_nodes:
            return _UNKNOWN
        if uncovered == 0:
            return _FEASIBLE

        key = self._cov_key(depth)
        stored = self.failed.get(key)
        if stored is not None:
            for fb in stored:
                ok = True
                for i in range(self.m):
                    if self.budgets[i] > fb[i]:
                        ok = False
                        break
                if ok:
                    return _INFEASIBLE

        total_budget = 0
        for i in range(self.m):
            total_budget += self.budgets[i]
        if total_budget == 0:
            self._record_failure(depth)
            return _INFEASIBLE
        max_gain = 0
        for j in range(self.k):
            if self.budgets[self.own[j]] > 0:
                g = _gain(self.M + j * self.words, cov, self.words)
                if g > max_gain:
                    max_gain = g
        if <long long> max_gain * total_budget < uncovered:
            self._record_failure(depth)
            return _INFEASIBLE

        # lowest-index uncovered element
        e = -1
        for w in range(self.words):
            if cov[w] != 0xFFFFFFFFFFFFFFFF:
                for i in range(64):
                    if not (cov[w] >> i) & 1:
                        e = w * 64 + i
                        break
                if 0 <= e < self.n:
                    break
                e = -1
        # e is always found: uncovered > 0

        cand_count = 0
        for pos in range(self.elem_off[e], self.elem_off[e + 1]):
            j = self.elem_sets[pos]
            if self.budgets[self.own[j]] > 0:
                cands[cand_count] = j
                gains[cand_count] = _gain(self.M + j * self.words, cov, self.words)
                cand_count += 1
        if cand_count == 0:
            self._record_failure(depth)
            return _INFEASIBLE

        # insertion sort by (descending gain, ascending index)
        cdef int key_j, key_g, t
        for pos in range(1, cand_count):
            key_j = cands[pos]
            key_g = gains[pos]
            t = pos - 1
            while t >= 0 and (gains[t] < key_g or (gains[t] == key_g and cands[t] > key_j)):
                cands[t + 1] = cands[t]
                gains[t + 1] = gains[t]
                t -= 1
            cands[t + 1] = key_j
            gains[t + 1] = key_g

        child = self.cov_stack + (depth + 1) * self.words
        for pos in range(cand_count):
            j = cands[pos]
            a = self.own[j]
            self.budgets[a] -= 1
            self.witness[self.witness_len] = j
            self.witness_len += 1
            for w in range(self.words):
                child[w] = cov[w] | self.M[j * self.words + w]
            r = self._dfs(depth + 1, uncovered - gains[pos])
            if r == _FEASIBLE:
                return _FEASIBLE
            self.budgets[a] += 1
            self.witness_len -= 1
            if r == _UNKNOWN:
                return _UNKNOWN
        self._record_failure(depth)
        return _INFEASIBLE

    cdef run(self, int n, masks, owner, budgets, long long max_nodes):
        self._setup(n, masks, owner, budgets, max_nodes)
        cdef int status = self._dfs(0, n)
        witness = None
        if status == _FEASIBLE:
            witness = [self.witness[i] for i in range(self.witness_len)]
        return status, witness, self.nodes


def cover_feasible(int n, masks, owner, budgets, long long max_nodes):
    """Budgeted cover decision; see _kernels_py.cover_feasible."""
    cdef _CoverSearch search = _CoverSearch()
    return search.run(n, masks, owner, budgets, max_nodes)
