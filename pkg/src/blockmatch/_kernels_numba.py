"""Numba-compiled search kernels.

Contracts match ``_kernels_py`` exactly; see that module for the calling
conventions.  Compiled artifacts are cached on disk, so the JIT cost is paid
once per interpreter/ABI.
"""

from __future__ import annotations

import numba
import numpy as np

_JIT = {"cache": True, "nogil": True}


@numba.njit(**_JIT)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@numba.njit(**_JIT)
def _ctz(x):
    # x > 0 assumed
    c = 0
    while x & 1 == 0:
        x >>= 1
        c += 1
    return c


@numba.njit(**_JIT)
def perfect_matching(masks, starts, items, n):
    full = (np.int64(1) << n) - 1
    if full == 0:
        return np.empty(0, dtype=np.int64)
    chosen = np.empty(n, dtype=np.int64)
    cov_stack = np.zeros(n + 1, dtype=np.int64)
    pos_stack = np.zeros(n + 1, dtype=np.int64)
    depth = 0
    pos_stack[0] = starts[0]
    while True:
        cov = cov_stack[depth]
        rem = full & ~cov
        if rem == 0:
            return chosen[:depth].copy()
        v = _ctz(rem)
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
                if crem != 0:
                    pos_stack[depth] = starts[_ctz(crem)]
                descended = True
                break
            p += 1
        if descended:
            continue
        pos_stack[depth] = end
        if depth == 0:
            out = np.empty(1, dtype=np.int64)
            out[0] = -1
            return out
        depth -= 1


@numba.njit(**_JIT)
def cover_matching(masks, starts, items, k, target, cap):
    if target == 0:
        return np.empty(0, dtype=np.int64)
    m = masks.shape[0]
    chosen = np.empty(max(cap, 1), dtype=np.int64)
    used_stack = np.zeros(cap + 1, dtype=np.int64)
    pos_stack = np.zeros(cap + 1, dtype=np.int64)
    depth = 0
    while True:
        used = used_stack[depth]
        rem = target & ~used
        if rem == 0:
            return chosen[:depth].copy()
        viable = depth < cap
        if viable and _popcount(rem) > (cap - depth) * k:
            viable = False
        if viable:
            v = _ctz(rem)
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
                if mk & used == 0 and mk & rem != 0:
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
            out = np.empty(1, dtype=np.int64)
            out[0] = -1
            return out
        depth -= 1


@numba.njit(**_JIT)
def max_matching_size(masks, starts, items, n):
    size = 1 << n
    dp = np.zeros(size, dtype=np.int8)
    for sub in range(1, size):
        v = _ctz(sub)
        best = dp[sub & (sub - 1)]
        for q in range(starts[v], starts[v + 1]):
            sm = masks[items[q]]
            if sm & sub == sm:
                c = dp[sub & ~sm] + 1
                if c > best:
                    best = c
        dp[sub] = best
    return int(dp[size - 1])


@numba.njit(**_JIT)
def graph_cover_exists(masks, starts, items, n, target):
    if target == 0:
        return True
    # memo over used-vertex masks: 0 unknown, 1 coverable, 2 not; only
    # reachable states are ever touched
    memo = np.zeros(1 << n, dtype=np.int8)
    used_stack = np.zeros(n + 2, dtype=np.int64)
    pos_stack = np.zeros(n + 2, dtype=np.int64)
    depth = 0
    pos_stack[0] = starts[_ctz(target)]
    while True:
        used = used_stack[depth]
        state = memo[used]
        if state != 0:
            result = state == 1
        else:
            rem = target & ~used
            if rem == 0:
                memo[used] = 1
                result = True
            else:
                v = _ctz(rem)
                p = pos_stack[depth]
                pushed = False
                settled = False
                while p < starts[v + 1]:
                    em = masks[items[p]]
                    if em & used == 0:
                        child = used | em
                        cstate = memo[child]
                        if cstate == 1:
                            memo[used] = 1
                            result = True
                            settled = True
                            break
                        if cstate == 0:
                            pos_stack[depth] = p + 1
                            depth += 1
                            used_stack[depth] = child
                            crem = target & ~child
                            if crem != 0:
                                pos_stack[depth] = starts[_ctz(crem)]
                            pushed = True
                            break
                    p += 1
                if pushed:
                    continue
                if not settled:
                    memo[used] = 2
                    result = False
        if depth == 0:
            return result
        depth -= 1
        if result:
            memo[used_stack[depth]] = 1
