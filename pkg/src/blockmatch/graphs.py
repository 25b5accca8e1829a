"""Simple graphs, matchings that cover a target set, and the Hall-type witness.

``hall_witness`` follows the constructive dual of "some matching covers A":
starting from a matching of maximum A-coverage, growing an alternating
structure from an uncovered target vertex must stall, and the stalled set S
of target vertices satisfies |N(S)| <= 2|S| - 1 (N(S) includes S itself).
The structure pairs each newly reached neighbor with its matched partner in
A, so the stall identity N(S) = S u T with |T| = |S| - 1 holds by
construction.

Growing from a non-maximum matching can stall too (the triangle with two
target vertices is the smallest example), so coverability is decided by
exact memoised search up to the subset-DP tier; ``graph_cover_exists`` is a
second, independently coded oracle for the same question.  Beyond the tier
the augmenting growth loop alone decides, which is sound whenever it finds a
cover and still returns an inequality-valid S otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import CoverableError, DomainError
from .family import SUBSET_DP_TIER_N, SetFamily

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on [n]; edges stored as sorted (u, v) pairs."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {e!r} is not a pair")
            u, v = e
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge {e!r} must satisfy 1 <= u < v <= {self.n}")
            if e in seen:
                raise ValueError(f"duplicate edge {e!r}")
            seen.add(e)
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges must be sorted")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        return cls(n, tuple(norm))

    @classmethod
    def from_family(cls, family: SetFamily) -> "Graph":
        if family.k != 2:
            raise ValueError(f"a graph is a 2-uniform family, got k={family.k}")
        return cls(family.n, family.sets)

    def to_family(self) -> SetFamily:
        return SetFamily(self.n, 2, self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighborhood(self, vertices: Iterable[int]) -> frozenset:
        """N(S) including S itself."""
        vs = set(vertices)
        out = set(vs)
        for v in vs:
            out.update(self.adjacency[v])
        return frozenset(out)


def _check_targets(graph: Graph, targets: Iterable[int]) -> tuple[int, ...]:
    ts = tuple(sorted(set(targets)))
    for v in ts:
        if not 1 <= v <= graph.n:
            raise ValueError(f"target vertex {v} outside [1, {graph.n}]")
    return ts


def _edge_masks(graph: Graph):
    masks = [(1 << (u - 1)) | (1 << (v - 1)) for u, v in graph.edges]
    per_vertex: list[list[int]] = [[] for _ in range(graph.n)]
    for i, (u, v) in enumerate(graph.edges):
        per_vertex[u - 1].append(i)
        per_vertex[v - 1].append(i)
    return masks, per_vertex


def graph_cover_exists(graph: Graph, targets: Iterable[int]) -> bool:
    """Exhaustive decision: does some matching cover every target vertex?"""
    from . import backend

    ts = _check_targets(graph, targets)
    if not ts:
        return True
    if graph.n > SUBSET_DP_TIER_N:
        raise DomainError(
            f"exhaustive cover oracle supports n <= {SUBSET_DP_TIER_N}, got {graph.n}"
        )
    masks = np.array(
        [(1 << (u - 1)) | (1 << (v - 1)) for u, v in graph.edges], dtype=np.int64
    )
    per_vertex: list[list[int]] = [[] for _ in range(graph.n)]
    for i, (u, v) in enumerate(graph.edges):
        per_vertex[u - 1].append(i)
        per_vertex[v - 1].append(i)
    starts = np.zeros(graph.n + 1, dtype=np.int64)
    for v in range(graph.n):
        starts[v + 1] = starts[v] + len(per_vertex[v])
    items = np.fromiter(
        (i for lst in per_vertex for i in lst), dtype=np.int64, count=int(starts[-1])
    )
    target_mask = 0
    for v in ts:
        target_mask |= 1 << (v - 1)
    return bool(backend.graph_cover_exists(masks, starts, items, graph.n, target_mask))


class _CoverageSearch:
    """Exact maximum-target-coverage matchings, memoised over used-vertex masks."""

    def __init__(self, graph: Graph, targets: tuple[int, ...]):
        self.graph = graph
        self.target_mask = 0
        for v in targets:
            self.target_mask |= 1 << (v - 1)
        self.edge_masks, self.per_vertex = _edge_masks(graph)
        self.memo: dict[int, int] = {}

    def best(self, used: int) -> int:
        """Most target vertices coverable by a matching disjoint from ``used``."""
        rem = self.target_mask & ~used
        if rem == 0:
            return 0
        cached = self.memo.get(used)
        if cached is not None:
            return cached
        vbit = rem & -rem
        v = vbit.bit_length() - 1
        out = self.best(used | vbit)  # leave this target uncovered
        for i in self.per_vertex[v]:
            em = self.edge_masks[i]
            if em & used == 0:
                cand = (em & rem).bit_count() + self.best(used | em)
                if cand > out:
                    out = cand
        self.memo[used] = out
        return out

    def extract(self) -> dict[int, int]:
        """One maximum-coverage matching as a mate map, chosen deterministically."""
        mate: dict[int, int] = {}
        used = 0
        while True:
            rem = self.target_mask & ~used
            if rem == 0:
                return mate
            vbit = rem & -rem
            v = vbit.bit_length() - 1
            want = self.best(used)
            chosen = None
            for i in self.per_vertex[v]:
                em = self.edge_masks[i]
                if em & used == 0 and (em & rem).bit_count() + self.best(used | em) == want:
                    chosen = i
                    break
            if chosen is None:
                used |= vbit
                continue
            u, w = self.graph.edges[chosen]
            mate[u] = w
            mate[w] = u
            used |= self.edge_masks[chosen]


def _grow(graph: Graph, targets: set, mate: dict, v: int):
    """Alternating growth from the uncovered target vertex v.

    Returns ('witness', S) when the structure closes up (N(S) = S u T with
    |T| = |S| - 1), or ('augment', w, u, from_s) naming an escape edge along
    which the matching can be rerouted to additionally cover v.
    """
    s_list = [v]
    in_s = {v}
    in_t: set = set()
    from_s: dict = {}
    while True:
        added = False
        for w in list(s_list):
            for u in graph.adjacency[w]:
                if u in in_s or u in in_t:
                    continue
                partner = mate.get(u)
                if partner is not None and partner in targets and partner not in in_s:
                    in_t.add(u)
                    from_s[u] = w
                    s_list.append(partner)
                    in_s.add(partner)
                    added = True
        if added:
            continue
        for w in s_list:
            for u in graph.adjacency[w]:
                if u in in_s or u in in_t:
                    continue
                return "augment", w, u, from_s
        return "witness", tuple(sorted(s_list)), None, from_s


def _augment(mate: dict, from_s: dict, v: int, w: int, u: int) -> None:
    """Reroute the matching along the discovery chain w -> ... -> v, then
    match w with u; covers v in addition to everything covered before."""
    pairs = []
    cur = w
    while cur != v:
        t = mate[cur]
        nxt = from_s[t]
        pairs.append((t, nxt))
        cur = nxt
    for t, nxt in pairs:
        mate[t] = nxt
        mate[nxt] = t
    old = mate.get(u)
    mate[w] = u
    mate[u] = w
    if old is not None:
        del mate[old]


def _grow_to_fixpoint(graph: Graph, targets: tuple[int, ...]):
    """Iterated grow/augment from scratch; sound when it finds a cover.

    A stall does not certify maximum coverage in general graphs, so this is
    only the above-tier path; within the subset-DP tier the exact search is
    used instead.
    """
    tset = set(targets)
    mate: dict = {}
    while True:
        uncovered = [t for t in targets if t not in mate]
        if not uncovered:
            return "matching", mate
        v = uncovered[0]
        kind, a1, a2, from_s = _grow(graph, tset, mate, v)
        if kind == "witness":
            return "witness", a1
        _augment(mate, from_s, v, a1, a2)


def _mate_to_edges(mate: dict) -> tuple[Edge, ...]:
    return tuple(sorted({(min(a, b), max(a, b)) for a, b in mate.items()}))


def matching_covering(graph: Graph, targets: Iterable[int]) -> Optional[tuple[Edge, ...]]:
    """A matching covering the targets, or ``None`` if none exists (exact)."""
    ts = _check_targets(graph, targets)
    if not ts:
        return ()
    if graph.n > SUBSET_DP_TIER_N:
        kind, payload = _grow_to_fixpoint(graph, ts)
        if kind == "matching":
            return _mate_to_edges(payload)
        raise DomainError(
            f"exact cover decision supports n <= {SUBSET_DP_TIER_N}; the "
            "augmenting search could not certify either answer"
        )
    search = _CoverageSearch(graph, ts)
    if search.best(0) < len(ts):
        return None
    return _mate_to_edges(search.extract())


def hall_witness(graph: Graph, targets: Iterable[int]) -> tuple[int, ...]:
    """A set S inside the targets with |N(S)| <= 2|S| - 1 (N includes S).

    Such an S exists whenever no matching covers the targets; it is grown
    from a maximum-coverage matching by the alternating-path procedure.  If
    a covering matching exists the precondition fails and a
    :class:`CoverableError` carrying that matching is raised.
    """
    ts = _check_targets(graph, targets)
    tset = set(ts)
    if graph.n > SUBSET_DP_TIER_N:
        kind, payload = _grow_to_fixpoint(graph, ts)
        if kind == "matching":
            raise CoverableError(
                "a matching covers the target set", _mate_to_edges(payload)
            )
        return payload
    if not ts:
        raise CoverableError("a matching covers the target set", ())
    search = _CoverageSearch(graph, ts)
    if search.best(0) == len(ts):
        raise CoverableError(
            "a matching covers the target set", _mate_to_edges(search.extract())
        )
    mate = search.extract()
    uncovered = [t for t in ts if t not in mate]
    kind, payload, _, _ = _grow(graph, tset, mate, uncovered[0])
    if kind != "witness":
        raise AssertionError("growth escaped from a maximum-coverage matching")
    return payload
