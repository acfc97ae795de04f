"""Pure-Python enumeration kernel.

Ray partitions of a shape with ``n`` table entries are in bijection with
choice vectors ``(c_0, ..., c_{n-1})`` with ``0 <= c_m <= m``: the ``m``-th
entry (in table order) opens a new block when ``c_m == m`` and is otherwise
inserted directly after entry ``c_m`` in that entry's block.  Enumeration
walks these vectors in lexicographic order.

This module mirrors ``_ckernel.pyx`` function for function; the two must
return identical results.
"""
from math import factorial

AGGREGATE = 0
FILTERED = 1
BY_COMPONENT = 2

IMPLEMENTATION = "python"


def _table(sizes):
    cluster, position = [], []
    for i, k in enumerate(sizes):
        for j in range(k):
            cluster.append(i)
            position.append(j)
    return cluster, position


def _check_prefix(n, prefix):
    if len(prefix) > n:
        raise ValueError(f"prefix of length {len(prefix)} exceeds {n} entries")
    for m, c in enumerate(prefix):
        if not 0 <= c <= m:
            raise ValueError(f"choice {c} at depth {m} outside 0..{m}")


def iter_block_lists(sizes, prefix=()):
    """Yield every ray partition as a list of blocks of flat entry numbers."""
    n = sum(sizes)
    prefix = tuple(prefix)
    _check_prefix(n, prefix)
    nxt = [-1] * n
    heads = []

    def blocks():
        out = []
        for h in heads:
            block = []
            x = h
            while x != -1:
                block.append(x)
                x = nxt[x]
            out.append(block)
        return out

    def place(m, c):
        if c == m:
            heads.append(m)
            nxt[m] = -1
        else:
            nxt[m] = nxt[c]
            nxt[c] = m

    def unplace(m, c):
        if c == m:
            heads.pop()
        else:
            nxt[c] = nxt[m]

    def rec(m):
        if m == n:
            yield blocks()
            return
        for c in range(m + 1):
            place(m, c)
            yield from rec(m + 1)
            unplace(m, c)

    for m, c in enumerate(prefix):
        place(m, c)
    yield from rec(len(prefix))


def _perm_rank(seq):
    n = len(seq)
    rank = 0
    for a in range(n):
        smaller = 0
        for b in range(a + 1, n):
            if seq[b] < seq[a]:
                smaller += 1
        rank += smaller * factorial(n - 1 - a)
    return rank


def histogram(sizes, p, q, mode=AGGREGATE, target=0, prefix=()):
    """Count ray partitions by degree.

    ``mode`` selects the aggregate table, the table of the single component
    with rank ``target``, or a table keyed by ``(component rank, degree)``.
    """
    sizes = tuple(sizes)
    n = sum(sizes)
    r = len(sizes)
    prefix = tuple(prefix)
    _check_prefix(n, prefix)
    cluster, position = _table(sizes)
    radix = [factorial(k) for k in sizes]
    want_sigma = mode != AGGREGATE
    nxt = [-1] * n
    block_of = [0] * n
    heads = []
    counts = {}
    # union-find over clusters without path compression, undone on backtrack;
    # agility is the number of classes among clusters placed so far
    parent = list(range(r))
    size = [1] * r
    undo = [-1] * n
    comps = 0

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def leaf():
        deg = p * (r - comps) + (q - 1) * (n - len(heads))
        if not want_sigma:
            counts[deg] = counts.get(deg, 0) + 1
            return
        seqs = [[] for _ in range(r)]
        for h in reversed(heads):
            x = h
            while x != -1:
                seqs[cluster[x]].append(position[x])
                x = nxt[x]
        code = 0
        for i in range(r):
            code = code * radix[i] + _perm_rank(seqs[i])
        if mode == FILTERED:
            if code == target:
                counts[deg] = counts.get(deg, 0) + 1
        else:
            key = (code, deg)
            counts[key] = counts.get(key, 0) + 1

    def place(m, c):
        nonlocal comps
        if position[m] == 0:
            comps += 1
        undo[m] = -1
        if c == m:
            block_of[m] = len(heads)
            heads.append(m)
            nxt[m] = -1
            return
        block_of[m] = block_of[c]
        nxt[m] = nxt[c]
        nxt[c] = m
        a = find(cluster[m])
        b = find(cluster[heads[block_of[c]]])
        if a != b:
            if size[a] > size[b]:
                a, b = b, a
            parent[a] = b
            size[b] += size[a]
            undo[m] = a
            comps -= 1

    def unplace(m, c):
        nonlocal comps
        if c == m:
            heads.pop()
        else:
            nxt[c] = nxt[m]
        a = undo[m]
        if a != -1:
            size[parent[a]] -= size[a]
            parent[a] = a
            comps += 1
        if position[m] == 0:
            comps -= 1

    def rec(m):
        if m == n:
            leaf()
            return
        for c in range(m + 1):
            place(m, c)
            rec(m + 1)
            unplace(m, c)

    for m, c in enumerate(prefix):
        place(m, c)
    rec(len(prefix))
    return counts
