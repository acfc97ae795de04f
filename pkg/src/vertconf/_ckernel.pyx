# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; see ``_pykernel`` for the encoding."""
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t

from math import factorial

AGGREGATE = 0
FILTERED = 1
BY_COMPONENT = 2

IMPLEMENTATION = "cython"

# dense (component, degree) table cap for BY_COMPONENT
MAX_DENSE = 1 << 24


cdef struct State:
    int n
    int r
    int p
    int q
    int mode
    long long target
    int length
    int *cluster
    int *position
    int *nxt
    int *block_of
    int *heads
    int *parent
    int *size
    int *undo
    int comps
    int *seq
    int *seq_len
    int *seq_start
    long long *radix
    long long *fact
    int maxdeg
    uint64_t *counts


cdef inline int find(int *parent, int a) noexcept nogil:
    # no path compression: unions are undone on backtrack
    while parent[a] != a:
        a = parent[a]
    return a


cdef long long sigma_code(State *s) noexcept nogil:
    cdef int i, h, x, a, b, smaller, k, base
    cdef long long code = 0, rank
    for i in range(s.r):
        s.seq_len[i] = 0
    for h in range(s.length - 1, -1, -1):
        x = s.heads[h]
        while x != -1:
            i = s.cluster[x]
            s.seq[s.seq_start[i] + s.seq_len[i]] = s.position[x]
            s.seq_len[i] += 1
            x = s.nxt[x]
    for i in range(s.r):
        k = s.seq_len[i]
        base = s.seq_start[i]
        rank = 0
        for a in range(k):
            smaller = 0
            for b in range(a + 1, k):
                if s.seq[base + b] < s.seq[base + a]:
                    smaller += 1
            rank += smaller * s.fact[k - 1 - a]
        code = code * s.radix[i] + rank
    return code


cdef void leaf(State *s) noexcept nogil:
    cdef int deg
    cdef long long code
    deg = s.p * (s.r - s.comps) + (s.q - 1) * (s.n - s.length)
    if s.mode == 0:
        s.counts[deg] += 1
        return
    code = sigma_code(s)
    if s.mode == 1:
        if code == s.target:
            s.counts[deg] += 1
    else:
        s.counts[code * (s.maxdeg + 1) + deg] += 1


cdef inline void place(State *s, int m, int c) noexcept nogil:
    cdef int a, b
    if s.position[m] == 0:
        s.comps += 1
    s.undo[m] = -1
    if c == m:
        s.block_of[m] = s.length
        s.heads[s.length] = m
        s.length += 1
        s.nxt[m] = -1
    else:
        s.block_of[m] = s.block_of[c]
        s.nxt[m] = s.nxt[c]
        s.nxt[c] = m
        a = find(s.parent, s.cluster[m])
        b = find(s.parent, s.cluster[s.heads[s.block_of[c]]])
        if a != b:
            if s.size[a] > s.size[b]:
                a, b = b, a
            s.parent[a] = b
            s.size[b] += s.size[a]
            s.undo[m] = a
            s.comps -= 1


cdef inline void unplace(State *s, int m, int c) noexcept nogil:
    cdef int a, b
    if c == m:
        s.length -= 1
    else:
        s.nxt[c] = s.nxt[m]
    a = s.undo[m]
    if a != -1:
        b = s.parent[a]
        s.size[b] -= s.size[a]
        s.parent[a] = a
        s.comps += 1
    if s.position[m] == 0:
        s.comps -= 1


cdef void rec(State *s, int m) noexcept nogil:
    cdef int c
    if m == s.n:
        leaf(s)
        return
    for c in range(m + 1):
        place(s, m, c)
        rec(s, m + 1)
        unplace(s, m, c)


def _check_prefix(n, prefix):
    if len(prefix) > n:
        raise ValueError(f"prefix of length {len(prefix)} exceeds {n} entries")
    for m, c in enumerate(prefix):
        if not 0 <= c <= m:
            raise ValueError(f"choice {c} at depth {m} outside 0..{m}")


def histogram(sizes, int p, int q, int mode=AGGREGATE, long long target=0, prefix=()):
    """Count ray partitions by degree; same contract as ``_pykernel.histogram``."""
    sizes = tuple(int(k) for k in sizes)
    prefix = tuple(int(c) for c in prefix)
    cdef int n = sum(sizes)
    cdef int r = len(sizes)
    _check_prefix(n, prefix)
    cdef int maxk = max(sizes) if sizes else 0
    cdef long long ncomp = 1
    for k in sizes:
        ncomp *= factorial(k)
    cdef int maxdeg = p * r + (q - 1) * n
    cdef long long cells = maxdeg + 1
    if mode == BY_COMPONENT:
        cells = ncomp * (maxdeg + 1)
        if cells > MAX_DENSE:
            raise MemoryError(f"{cells} (component, degree) cells exceed the dense table")

    cdef State s
    s.n = n
    s.r = r
    s.p = p
    s.q = q
    s.mode = mode
    s.target = target
    s.length = 0
    s.comps = 0
    s.maxdeg = maxdeg
    s.cluster = <int *> malloc((n + 1) * sizeof(int))
    s.position = <int *> malloc((n + 1) * sizeof(int))
    s.nxt = <int *> malloc((n + 1) * sizeof(int))
    s.block_of = <int *> malloc((n + 1) * sizeof(int))
    s.heads = <int *> malloc((n + 1) * sizeof(int))
    s.parent = <int *> malloc((r + 1) * sizeof(int))
    s.size = <int *> malloc((r + 1) * sizeof(int))
    s.undo = <int *> malloc((n + 1) * sizeof(int))
    s.seq = <int *> malloc((n + 1) * sizeof(int))
    s.seq_len = <int *> malloc((r + 1) * sizeof(int))
    s.seq_start = <int *> malloc((r + 1) * sizeof(int))
    s.radix = <long long *> malloc((r + 1) * sizeof(long long))
    s.fact = <long long *> malloc((maxk + 1) * sizeof(long long))
    s.counts = <uint64_t *> calloc(cells, sizeof(uint64_t))
    if (s.cluster == NULL or s.position == NULL or s.nxt == NULL or s.block_of == NULL
            or s.heads == NULL or s.parent == NULL or s.size == NULL or s.undo == NULL or s.seq == NULL or s.seq_len == NULL
            or s.seq_start == NULL or s.radix == NULL or s.fact == NULL or s.counts == NULL):
        _release(&s)
        raise MemoryError()

    cdef int i, j, x = 0, m
    for i in range(r):
        s.parent[i] = i
        s.size[i] = 1
        s.seq_start[i] = x
        s.radix[i] = factorial(sizes[i])
        for j in range(sizes[i]):
            s.cluster[x] = i
            s.position[x] = j
            x += 1
    for i in range(maxk + 1):
        s.fact[i] = factorial(i)

    for m in range(len(prefix)):
        place(&s, m, prefix[m])
    cdef int start = len(prefix)
    with nogil:
        rec(&s, start)

    out = {}
    cdef long long cell
    try:
        for cell in range(cells):
            if s.counts[cell]:
                if mode == BY_COMPONENT:
                    out[(cell // (maxdeg + 1), cell % (maxdeg + 1))] = int(s.counts[cell])
                else:
                    out[int(cell)] = int(s.counts[cell])
    finally:
        _release(&s)
    return out


cdef void _release(State *s) noexcept:
    free(s.cluster)
    free(s.position)
    free(s.nxt)
    free(s.block_of)
    free(s.heads)
    free(s.parent)
    free(s.size)
    free(s.undo)
    free(s.seq)
    free(s.seq_len)
    free(s.seq_start)
    free(s.radix)
    free(s.fact)
    free(s.counts)
