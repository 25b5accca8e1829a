"""Pure-Python reference implementations of the search kernels.

These are the fallback path selected by ``BLOCKMATCH_BACKEND=python``; the
numba backend in ``_kernels_numba`` compiles the same algorithms.  All
kernels take vertex bitmasks (bit ``v-1`` set for vertex ``v``) as numpy
``int64`` arrays plus a CSR incidence structure ``starts``/``items`` mapping
each 0-based vertex to the indices of the sets containing it, in ascending
index order.

Matching searches return a numpy ``int64`` array of set indices; the
sentinel array ``[-1]`` means "no solution" (a genuinely empty solution is a
length-0 array, which only occurs for an empty cover target).
"""

from __future__ import annotations

import numpy as np

_NOT_FOUND = np.array([-1], dtype=np.int64)


def perfect_matching(masks, starts, items, n):
    """Lexicographically first perfect matching, as ascending set indices.

    Branches on the lowest uncovered vertex and tries its candidate sets in
    index order, which visits perfect matchings in ascending lexicographic
    order of their sorted index sequences.
    """
    masks = masks.tolist()
    starts = starts.tolist()
    items = items.tolist()
    full = (1 << n) - 1
    if full == 0:
        return np.empty(0, dtype=np.int64)
    chosen = [0] * n
    cov_stack = [0] * (n + 1)
    pos_stack = [0] * (n + 1)
    depth = 0
    pos_stack[0] = starts[0]
    while True:
        cov = cov_stack[depth]
        rem = full & ~cov
        if rem == 0:
            return np.array(chosen[:depth], dtype=np.int64)
        v = (rem & -rem).bit_length() - 1
        p = pos_stack[depth]
        end = starts[v + 1]
        descended = False
        while p < end:
            i = items[p]
            if masks[i] & cov == 0:
                pos_stack[depth] = p + 1
                chosen[depth] = i
                depth += 1
                child_cov = cov | masks[i]
                cov_stack[depth] = child_cov
                crem = full & ~child_cov
                if crem:
                    cv = (crem & -crem).bit_length() - 1
                    pos_stack[depth] = starts[cv]
                descended = True
                break
            p += 1
        if descended:
            continue
        pos_stack[depth] = end
        if depth == 0:
            return _NOT_FOUND.copy()
        depth -= 1


def cover_matching(masks, starts, items, k, target, cap):
    """Lexicographically least matching of at most ``cap`` sets covering ``target``.

    Solutions are ascending index sequences in which every set meets the
    still-uncovered part of the target; depth-first search over ascending
    indices therefore yields the least witness first.
    """
    masks = masks.tolist()
    starts = starts.tolist()
    items = items.tolist()
    if target == 0:
        return np.empty(0, dtype=np.int64)
    m = len(masks)
    chosen = [0] * max(cap, 1)
    used_stack = [0] * (cap + 1)
    pos_stack = [0] * (cap + 1)
    depth = 0
    while True:
        used = used_stack[depth]
        rem = target & ~used
        if rem == 0:
            return np.array(chosen[:depth], dtype=np.int64)
        viable = depth < cap
        if viable and rem.bit_count() > (cap - depth) * k:
            viable = False
        if viable:
            # the lowest uncovered target vertex needs some disjoint set
            v = (rem & -rem).bit_length() - 1
            viable = False
            for q in range(starts[v], starts[v + 1]):
                if masks[items[q]] & used == 0:
                    viable = True
                    break
        descended = False
        if viable:
            p = pos_stack[depth]
            while p < m:
                mk = masks[p]
                if mk & used == 0 and mk & rem:
                    pos_stack[depth] = p + 1
                    chosen[depth] = p
                    depth += 1
                    used_stack[depth] = used | mk
                    pos_stack[depth] = p + 1
                    descended = True
                    break
                p += 1
            if not descended:
                pos_stack[depth] = m
        if descended:
            continue
        if depth == 0:
            return _NOT_FOUND.copy()
        depth -= 1


def max_matching_size(masks, starts, items, n):
    """Maximum matching size, by dynamic programming over vertex subsets.

    ``dp[m]`` is the largest matching using only sets contained in the
    vertex subset ``m``; requires ``n`` small enough for a 2**n table.
    """
    masks = masks.tolist()
    starts = starts.tolist()
    items = items.tolist()
    size = 1 << n
    dp = bytearray(size)
    for sub in range(1, size):
        v = (sub & -sub).bit_length() - 1
        best = dp[sub & (sub - 1)]
        for q in range(starts[v], starts[v + 1]):
            sm = masks[items[q]]
            if sm & sub == sm:
                c = dp[sub & ~sm] + 1
                if c > best:
                    best = c
        dp[sub] = best
    return int(dp[size - 1])


def graph_cover_exists(masks, starts, items, n, target):
    """Whether some matching of the given edges covers every ``target`` vertex.

    Memoised complete search over used-vertex masks; exact for any graph.
    """
    masks = masks.tolist()
    starts = starts.tolist()
    items = items.tolist()
    memo: dict[int, bool] = {}

    def rec(used: int) -> bool:
        rem = target & ~used
        if rem == 0:
            return True
        cached = memo.get(used)
        if cached is not None:
            return cached
        v = (rem & -rem).bit_length() - 1
        res = False
        for q in range(starts[v], starts[v + 1]):
            em = masks[items[q]]
            if em & used == 0 and rec(used | em):
                res = True
                break
        memo[used] = res
        return res

    return rec(0)
