"""Edge-bound verification for graphs attached to a special vertex block.

An instance consists of a graph G on [n] whose every edge touches the
special block [b] (with vertex 1 of maximum special degree), together with
pairwise-disjoint k-cells that each meet [b] and jointly contain [2, b].
When no *mixed matching* (disjoint edges and cells) covers [b], the number
of edges is conjectured to be at most b(b-1)/2 * (k-1); ``exhaustive_verify``
checks this bound on a desk-scale tier, enumerating instances up to the
natural relabelings, and classifies the instances attaining it against the
two known extremal configurations (``build_fig1`` for every k, ``build_fig2``
for k = 3).

Instances with vertex 1 inside a cell are accepted by ``validate`` but are
always coverable (the cells themselves cover [b]), so the enumeration omits
them.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterable, Optional

from .errors import DomainError

Edge = tuple[int, int]
Cell = tuple[int, ...]

VERIFY_TIER = {"b": 3, "k": 5, "exterior_cap": 2}


def edge_bound(b: int, k: int) -> int:
    """The conjectured maximum edge count b(b-1)/2 * (k-1) for non-coverable instances."""
    if b < 1 or k < 2:
        raise DomainError(f"need b >= 1 and k >= 2, got b={b}, k={k}")
    return b * (b - 1) // 2 * (k - 1)


@dataclass(frozen=True)
class PropInstance:
    """One instance: n vertices, the special block [b], cells and edges.

    Construction checks well-formedness only (ids in range, ordering,
    duplicates); the structural hypotheses are reported by :func:`validate`
    as data instead of raised.
    """

    n: int
    b: int
    k: int
    cells: tuple[Cell, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.b < 1 or self.n < self.b:
            raise ValueError(f"need 1 <= b <= n, got b={self.b}, n={self.n}")
        if self.k < 2:
            raise ValueError(f"need k >= 2, got k={self.k}")
        for c in self.cells:
            if len(c) != self.k:
                raise ValueError(f"cell {c!r} does not have size k={self.k}")
            if list(c) != sorted(set(c)) or c[0] < 1 or c[-1] > self.n:
                raise ValueError(f"cell {c!r} is not an ascending vertex tuple in [1, n]")
        if list(self.cells) != sorted(self.cells):
            raise ValueError("cells must be sorted")
        if len(set(self.cells)) != len(self.cells):
            raise ValueError("duplicate cell")
        for e in self.edges:
            if len(e) != 2 or not (1 <= e[0] < e[1] <= self.n):
                raise ValueError(f"edge {e!r} must satisfy 1 <= u < v <= n")
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges must be sorted")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge")

    @property
    def a(self) -> int:
        return len(self.cells)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def exterior(self) -> tuple[int, ...]:
        """Vertices outside every cell and distinct from vertex 1."""
        in_cells = {v for c in self.cells for v in c}
        return tuple(v for v in range(2, self.n + 1) if v not in in_cells)

    # -- instance file format ------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.b} {self.k} {self.a}"]
        lines.extend(" ".join(str(v) for v in c) for c in self.cells)
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PropInstance":
        lines = [ln for ln in text.split("\n") if ln.strip()]
        if not lines:
            raise ValueError("empty instance file")
        head = lines[0].split()
        if len(head) != 4:
            raise ValueError(f"header must be 'n b k a', got {lines[0]!r}")
        n, b, k, a = (int(t) for t in head)
        if len(lines) < 1 + a:
            raise ValueError(f"expected {a} cell lines")
        cells = tuple(tuple(int(t) for t in ln.split()) for ln in lines[1 : 1 + a])
        edges = []
        for ln in lines[1 + a :]:
            toks = ln.split()
            if len(toks) != 2:
                raise ValueError(f"edge line must be 'u v', got {ln!r}")
            edges.append((int(toks[0]), int(toks[1])))
        return cls(n, b, k, cells, tuple(edges))

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            "k": self.k,
            "cells": [list(c) for c in self.cells],
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class MixedMatching:
    """Pairwise-disjoint items, each an instance edge or an instance cell."""

    items: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for it in self.items:
            for v in it:
                if v in seen:
                    raise ValueError(f"items are not pairwise disjoint at vertex {v}")
                seen.add(v)
        if list(self.items) != sorted(self.items):
            raise ValueError("items must be sorted")

    def covers(self, vertices: Iterable[int]) -> bool:
        covered = {v for it in self.items for v in it}
        return set(vertices) <= covered

    def valid_for(self, inst: PropInstance) -> bool:
        cellset = set(inst.cells)
        edgeset = set(inst.edges)
        return all(
            (it in cellset) if len(it) == inst.k else (it in edgeset)
            for it in self.items
        )


def validate(inst: PropInstance) -> list[str]:
    """Structural hypothesis violations, empty when the instance is valid."""
    out = []
    special = set(range(1, inst.b + 1))
    if any(not special.intersection(e) for e in inst.edges):
        out.append("edge misses [b]")
    seen: set[int] = set()
    overlap = False
    for c in inst.cells:
        if seen.intersection(c):
            overlap = True
        seen.update(c)
    if overlap:
        out.append("cells overlap")
    if any(not special.intersection(c) for c in inst.cells):
        out.append("cell misses [b]")
    if not set(range(2, inst.b + 1)) <= seen:
        out.append("cells do not cover [2,b]")
    deg1 = inst.degree(1)
    if any(inst.degree(i) > deg1 for i in range(2, inst.b + 1)):
        out.append("vertex 1 not max degree")
    return out


def cover_b(inst: PropInstance) -> Optional[MixedMatching]:
    """Least mixed matching covering [b], or ``None`` when none exists.

    Exact search over disjoint collections of instance edges and cells; the
    witness is the lexicographically least one (items compared as sorted
    tuples).
    """
    bad = validate(inst)
    if bad:
        raise DomainError(f"invalid instance: {', '.join(bad)}")
    units = sorted(set(inst.edges) | set(inst.cells))
    unit_masks = []
    for u in units:
        m = 0
        for v in u:
            m |= 1 << (v - 1)
        unit_masks.append(m)
    target = (1 << inst.b) - 1

    chosen: list[int] = []

    def rec(start: int, covered: int, used: int) -> bool:
        rem = target & ~covered
        if rem == 0:
            return True
        for i in range(start, len(units)):
            m = unit_masks[i]
            if m & used == 0 and m & rem:
                chosen.append(i)
                if rec(i + 1, covered | (m & target), used | m):
                    return True
                chosen.pop()
        return False

    if rec(0, 0, 0):
        return MixedMatching(tuple(units[i] for i in chosen))
    return None


def build_fig1(b: int, k: int) -> PropInstance:
    """The extremal configuration valid for every k >= 3.

    b - 1 singleton-special cells; for every 1 <= i < j <= b, vertex i is
    joined to every non-special vertex of the cell containing j.  Attains
    ``edge_bound(b, k)`` and admits no covering mixed matching.
    """
    if b < 1 or k < 3:
        raise DomainError(f"need b >= 1 and k >= 3, got b={b}, k={k}")
    cells = []
    slots = {}
    nxt = b + 1
    for j in range(2, b + 1):
        sl = tuple(range(nxt, nxt + k - 1))
        nxt += k - 1
        slots[j] = sl
        cells.append((j,) + sl)
    edges = []
    for j in range(2, b + 1):
        for i in range(1, j):
            edges.extend((i, w) for w in slots[j])
    return PropInstance(nxt - 1, b, k, tuple(cells), tuple(sorted(edges)))


def build_fig2(b: int) -> PropInstance:
    """The second extremal configuration, specific to k = 3.

    Each cell holds one special vertex and a designated vertex joined to all
    of [b]; also attains ``edge_bound(b, 3)`` with no covering mixed matching.
    """
    if b < 2:
        raise DomainError(f"need b >= 2, got b={b}")
    cells = []
    designated = []
    nxt = b + 1
    for j in range(2, b + 1):
        w = nxt
        cells.append((j, w, w + 1))
        designated.append(w)
        nxt += 2
    edges = sorted((i, w) for i in range(1, b + 1) for w in designated)
    return PropInstance(nxt - 1, b, 3, tuple(cells), tuple(edges))


# -- canonical signatures --------------------------------------------------


def _part_perms(b: int, parts: tuple[tuple[int, ...], ...]) -> list[dict]:
    """Permutations of [2, b] (fixing 1) that map the cell partition to itself."""
    base = list(range(2, b + 1))
    part_set = {tuple(p) for p in parts}
    out = []
    for pm in permutations(base):
        mapping = {1: 1}
        mapping.update({v: pm[i] for i, v in enumerate(base)})
        if all(tuple(sorted(mapping[v] for v in p)) in part_set for p in parts):
            out.append(mapping)
    return out


def _remap_code(code: int, mapping: dict) -> int:
    out = 0
    for i in range(1, len(mapping) + 1):
        if code & (1 << (i - 1)):
            out |= 1 << (mapping[i] - 1)
    return out


def _encode(parts, cell_codes, ext_codes, pairs) -> tuple:
    return (
        tuple(sorted(zip(parts, cell_codes))),
        tuple(sorted(ext_codes)),
        tuple(sorted(pairs)),
    )


def _transform(mapping, parts, cell_codes, ext_codes, pairs) -> tuple:
    new_parts = [tuple(sorted(mapping[v] for v in p)) for p in parts]
    new_cells = [tuple(sorted(_remap_code(c, mapping) for c in ms)) for ms in cell_codes]
    new_ext = [_remap_code(c, mapping) for c in ext_codes]
    new_pairs = [tuple(sorted((mapping[u], mapping[v]))) for u, v in pairs]
    return _encode(new_parts, new_cells, new_ext, new_pairs)


def instance_signature(inst: PropInstance) -> tuple:
    """Structural key invariant under the allowed relabelings.

    Fixes vertex 1, permutes [2, b], cells, vertices within a cell and
    exterior vertices; edgeless exterior vertices are ignored, so instances
    differing only by isolated exterior padding share a signature.
    """
    b = inst.b
    adj = {v: 0 for v in range(1, inst.n + 1)}
    pairs = []
    for u, v in inst.edges:
        if v <= b:
            pairs.append((u, v))
        elif u <= b:
            adj[v] |= 1 << (u - 1)
        else:
            raise DomainError(f"edge {(u, v)!r} misses [b]")
    parts = [tuple(sorted(v for v in c if v <= b)) for c in inst.cells]
    cell_codes = [
        tuple(sorted(adj[v] for v in c if v > b)) for c in inst.cells
    ]
    in_cells = {v for c in inst.cells for v in c}
    ext_codes = [
        adj[v]
        for v in range(b + 1, inst.n + 1)
        if v not in in_cells and adj[v] != 0
    ]
    best = None
    for mapping in _part_perms(b, tuple(parts)):
        cand = _transform(mapping, parts, cell_codes, ext_codes, pairs)
        if best is None or cand < best:
            best = cand
    return (b, inst.k) + best


# -- exhaustive verification ------------------------------------------------


def _set_partitions(elems: tuple):
    if not elems:
        yield ()
        return
    first, rest = elems[0], elems[1:]
    for part in _set_partitions(rest):
        yield ((first,),) + part
        for idx in range(len(part)):
            yield part[:idx] + ((first,) + part[idx],) + part[idx + 1 :]


def _canonical_partitions(b: int):
    for parts in _set_partitions(tuple(range(2, b + 1))):
        yield tuple(sorted(parts, key=lambda p: (len(p), p)))


def _mixed_cover_exists(unit_masks: list[int], target: int) -> bool:
    def rec(rem: int, used: int) -> bool:
        if rem == 0:
            return True
        v = rem & -rem
        for m in unit_masks:
            if m & v and not m & used:
                if rec(rem & ~m, used | m):
                    return True
        return False

    return rec(target, 0)


def _materialize(n, b, k, parts, cell_slots, cell_codes, ext_slots, ext_codes, pairs):
    cells = tuple(
        sorted(tuple(p) + tuple(sl) for p, sl in zip(parts, cell_slots))
    )
    edges = list(pairs)
    for sl, ms in zip(cell_slots, cell_codes):
        for w, code in zip(sl, ms):
            for i in range(1, b + 1):
                if code & (1 << (i - 1)):
                    edges.append((i, w))
    for w, code in zip(ext_slots, ext_codes):
        for i in range(1, b + 1):
            if code & (1 << (i - 1)):
                edges.append((i, w))
    return PropInstance(n, b, k, cells, tuple(sorted(edges)))


def _verify_slice(b: int, k: int, exterior_cap: int, chunk: int, nchunks: int) -> dict:
    bound = edge_bound(b, k)
    checked = 0
    noncoverable = 0
    violations = []
    equality = {}
    code_space = range(1 << b)
    target = (1 << b) - 1
    pair_list = list(combinations(range(1, b + 1), 2))
    for parts in _canonical_partitions(b):
        if any(len(p) > k for p in parts):
            continue
        perms = [m for m in _part_perms(b, parts) if any(m[v] != v for v in m)]
        slot_counts = [k - len(p) for p in parts]
        nxt = b + 1
        cell_slots = []
        cell_masks = []
        for p, m in zip(parts, slot_counts):
            sl = tuple(range(nxt, nxt + m))
            nxt += m
            cell_slots.append(sl)
            cm = 0
            for v in p:
                cm |= 1 << (v - 1)
            for v in sl:
                cm |= 1 << (v - 1)
            cell_masks.append(cm)
        for e in range(exterior_cap + 1):
            ext_slots = tuple(range(nxt, nxt + e))
            n = nxt - 1 + e
            axes = [list(combinations_with_replacement(code_space, m)) for m in slot_counts]
            axes.append(list(combinations_with_replacement(code_space, e)))
            axes.append(list(range(1 << len(pair_list))))
            a = len(parts)
            idx = -1
            for combo in product(*axes):
                idx += 1
                if idx % nchunks != chunk:
                    continue
                cell_codes = combo[:a]
                ext_codes = combo[a]
                pmask = combo[a + 1]
                pairs = [pair_list[t] for t in range(len(pair_list)) if pmask >> t & 1]
                deg = [0] * (b + 1)
                for ms in cell_codes:
                    for c in ms:
                        cc = c
                        while cc:
                            deg[(cc & -cc).bit_length()] += 1
                            cc &= cc - 1
                for c in ext_codes:
                    cc = c
                    while cc:
                        deg[(cc & -cc).bit_length()] += 1
                        cc &= cc - 1
                for u, v in pairs:
                    deg[u] += 1
                    deg[v] += 1
                if any(deg[i] > deg[1] for i in range(2, b + 1)):
                    continue
                if perms:
                    enc = _encode(parts, cell_codes, ext_codes, pairs)
                    if any(
                        _transform(m, parts, cell_codes, ext_codes, pairs) < enc
                        for m in perms
                    ):
                        continue
                units = list(cell_masks)
                for sl, ms in zip(cell_slots, cell_codes):
                    for w, code in zip(sl, ms):
                        wb = 1 << (w - 1)
                        cc = code
                        while cc:
                            units.append((cc & -cc) | wb)
                            cc &= cc - 1
                for w, code in zip(ext_slots, ext_codes):
                    wb = 1 << (w - 1)
                    cc = code
                    while cc:
                        units.append((cc & -cc) | wb)
                        cc &= cc - 1
                for u, v in pairs:
                    units.append((1 << (u - 1)) | (1 << (v - 1)))
                checked += 1
                if _mixed_cover_exists(units, target):
                    continue
                noncoverable += 1
                ecount = sum(deg[1:]) - len(pairs)
                if ecount < bound:
                    continue
                inst = _materialize(
                    n, b, k, parts, cell_slots, cell_codes, ext_slots, ext_codes, pairs
                )
                if ecount > bound:
                    violations.append(inst)
                else:
                    sig = instance_signature(inst)
                    cur = equality.get(sig)
                    if cur is None or inst.to_text() < cur.to_text():
                        equality[sig] = inst
    return {
        "checked": checked,
        "noncoverable": noncoverable,
        "violations": violations,
        "equality": equality,
    }


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a verification sweep over instances."""

    b: int
    k: int
    exterior_cap: int
    bound: int
    checked: int
    noncoverable: int
    violations: tuple[PropInstance, ...]
    equality_instances: tuple[PropInstance, ...]
    classification: tuple[str, ...]

    def class_counts(self) -> dict:
        counts: dict[str, int] = {}
        for label in self.classification:
            counts[label] = counts.get(label, 0) + 1
        return counts

    def to_json_obj(self) -> dict:
        return {
            "b": self.b,
            "k": self.k,
            "exterior_cap": self.exterior_cap,
            "bound": self.bound,
            "checked": self.checked,
            "noncoverable": self.noncoverable,
            "violations": [i.to_json_obj() for i in self.violations],
            "equality_instances": [i.to_json_obj() for i in self.equality_instances],
            "classification": list(self.classification),
        }


def _classify(b: int, k: int, sig: tuple) -> str:
    if k >= 3 and sig == instance_signature(build_fig1(b, k)):
        return "fig1"
    if k == 3 and b >= 2 and sig == instance_signature(build_fig2(b)):
        return "fig2"
    return "other"


def _finish_report(b, k, exterior_cap, partials) -> VerifyReport:
    checked = sum(p["checked"] for p in partials)
    noncoverable = sum(p["noncoverable"] for p in partials)
    violations = sorted(
        (v for p in partials for v in p["violations"]), key=lambda i: i.to_text()
    )
    equality: dict = {}
    for p in partials:
        for sig, inst in p["equality"].items():
            cur = equality.get(sig)
            if cur is None or inst.to_text() < cur.to_text():
                equality[sig] = inst
    ordered = sorted(equality.items(), key=lambda kv: kv[1].to_text())
    return VerifyReport(
        b=b,
        k=k,
        exterior_cap=exterior_cap,
        bound=edge_bound(b, k),
        checked=checked,
        noncoverable=noncoverable,
        violations=tuple(violations),
        equality_instances=tuple(inst for _, inst in ordered),
        classification=tuple(_classify(b, k, sig) for sig, _ in ordered),
    )


def exhaustive_verify(
    b: int, k: int, exterior_cap: int, workers: int = 1
) -> VerifyReport:
    """Check the edge bound over every valid instance on the desk-scale tier.

    Enumerates all valid instances up to relabeling (cell partition of
    [2, b], up to ``exterior_cap`` exterior vertices), asserts the edge bound
    on every non-coverable one, and classifies the bound-attaining instances.
    The canonical instance stream can be partitioned across ``workers``
    processes; results are aggregated order-independently.
    """
    if b < 1 or k < 2 or exterior_cap < 0:
        raise DomainError("need b >= 1, k >= 2, exterior_cap >= 0")
    if (
        b > VERIFY_TIER["b"]
        or k > VERIFY_TIER["k"]
        or exterior_cap > VERIFY_TIER["exterior_cap"]
    ):
        raise DomainError(
            f"exhaustive tier is b <= {VERIFY_TIER['b']}, k <= {VERIFY_TIER['k']}, "
            f"exterior_cap <= {VERIFY_TIER['exterior_cap']}; "
            "use sampled_verify for larger parameters"
        )
    if workers < 1:
        raise ValueError("workers must be positive")
    if workers == 1:
        partials = [_verify_slice(b, k, exterior_cap, 0, 1)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(
                pool.map(
                    _verify_slice,
                    [b] * workers,
                    [k] * workers,
                    [exterior_cap] * workers,
                    range(workers),
                    [workers] * workers,
                )
            )
    return _finish_report(b, k, exterior_cap, partials)


def sampled_verify(
    b: int, k: int, exterior_cap: int, samples: int = 10000, seed: int = 0
) -> VerifyReport:
    """Randomized bound check for parameters beyond the exhaustive tier.

    Samples valid instances uniformly-ish (random cell partition, exterior
    size, adjacencies) and applies the same bound/equality bookkeeping as
    :func:`exhaustive_verify`; a clean report is evidence, not proof.
    """
    if b < 1 or k < 2 or exterior_cap < 0:
        raise DomainError("need b >= 1, k >= 2, exterior_cap >= 0")
    rng = random.Random(seed)
    partitions = [
        p for p in _canonical_partitions(b) if all(len(q) <= k for q in p)
    ]
    checked = 0
    noncoverable = 0
    violations: dict = {}
    equality: dict = {}
    bound = edge_bound(b, k)
    pair_list = list(combinations(range(1, b + 1), 2))
    for _ in range(samples):
        parts = rng.choice(partitions)
        slot_counts = [k - len(p) for p in parts]
        e = rng.randint(0, exterior_cap)
        nxt = b + 1
        cell_slots = []
        for m in slot_counts:
            cell_slots.append(tuple(range(nxt, nxt + m)))
            nxt += m
        ext_slots = tuple(range(nxt, nxt + e))
        n = nxt - 1 + e
        cell_codes = tuple(
            tuple(sorted(rng.randrange(1 << b) for _ in range(m))) for m in slot_counts
        )
        ext_codes = tuple(sorted(rng.randrange(1 << b) for _ in range(e)))
        pairs = [p for p in pair_list if rng.random() < 0.5]
        inst = _materialize(
            n, b, k, parts, cell_slots, cell_codes, ext_slots, ext_codes, pairs
        )
        if validate(inst):
            continue
        checked += 1
        if cover_b(inst) is not None:
            continue
        noncoverable += 1
        ecount = len(inst.edges)
        if ecount < bound:
            continue
        sig = instance_signature(inst)
        bucket = violations if ecount > bound else equality
        cur = bucket.get(sig)
        if cur is None or inst.to_text() < cur.to_text():
            bucket[sig] = inst
    partial = {
        "checked": checked,
        "noncoverable": noncoverable,
        "violations": list(violations.values()),
        "equality": equality,
    }
    return _finish_report(b, k, exterior_cap, [partial])
