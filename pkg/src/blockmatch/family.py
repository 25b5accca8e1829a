"""k-uniform set families over [n] and exact matching/blocking deciders.

Vertices are 1-based integers, matching the usual [n] = {1, ..., n}
convention.  Sets are stored as strictly ascending tuples and families keep
their sets in ascending lexicographic order, so every operation here is
deterministic.  Internally sets become bitmasks (bit v-1 for vertex v) and
the exhaustive searches run in one of the kernel backends.

A *matching* is a pairwise-disjoint collection of family sets; it is perfect
when it covers [n].  A set B with |B| <= s = n/k is a *blocking set* when no
matching of |B| sets covers it (equivalently no matching of any size, since a
covering matching can be pruned to the sets that touch B).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError

KSet = tuple[int, ...]

# exhaustive perfect-matching queries are only supported on this tier
MATCHING_TIER_N = 24
# bitmask encoding is fixed-width; wider ground sets are construction-only
MASK_TIER_N = 63
# subset dynamic programming needs a 2**n table
SUBSET_DP_TIER_N = 20


def validate_kset(members: Iterable[int], n: int, k: Optional[int] = None) -> KSet:
    """Normalise ``members`` to an ascending tuple, checking it against (n, k)."""
    t = tuple(members)
    if any(not isinstance(v, int) or isinstance(v, bool) for v in t):
        raise ValueError(f"vertex ids must be integers, got {t!r}")
    if any(v < 1 or v > n for v in t):
        raise ValueError(f"vertex ids must lie in [1, {n}], got {t!r}")
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        s = tuple(sorted(t))
        if len(set(s)) != len(s):
            raise ValueError(f"duplicate vertex in set {t!r}")
        t = s
    if k is not None and len(t) != k:
        raise ValueError(f"set {t!r} has size {len(t)}, expected {k}")
    return t


def _mask_of(kset: KSet) -> int:
    m = 0
    for v in kset:
        m |= 1 << (v - 1)
    return m


def _set_of_mask(mask: int) -> KSet:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class SetFamily:
    """An immutable k-uniform family of subsets of [n], sorted lexicographically."""

    n: int
    k: int
    sets: tuple[KSet, ...]

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        prev = None
        for s in self.sets:
            t = validate_kset(s, self.n, self.k)
            if t != s:
                raise ValueError(f"set {s!r} is not in ascending order")
            if prev is not None and not prev < t:
                if prev == t:
                    raise ValueError(f"duplicate set {t!r}")
                raise ValueError("sets are not in ascending lexicographic order")
            prev = t

    @classmethod
    def from_iterable(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        """Build a family from unordered input, sorting and rejecting duplicates."""
        normalised = [validate_kset(s, n, k) for s in sets]
        normalised.sort()
        for a, b in zip(normalised, normalised[1:]):
            if a == b:
                raise ValueError(f"duplicate set {a!r}")
        return cls(n, k, tuple(normalised))

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> "SetFamily":
        return cls.from_iterable(n, k, (_set_of_mask(m) for m in masks))

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, kset) -> bool:
        return tuple(kset) in self._set_index

    @property
    def s(self) -> int:
        """Number of sets in a perfect matching; defined only when k | n."""
        if self.n % self.k:
            raise DomainError(f"s = n/k undefined: {self.k} does not divide {self.n}")
        return self.n // self.k

    @cached_property
    def _set_index(self) -> frozenset:
        return frozenset(self.sets)

    @cached_property
    def mask_list(self) -> list[int]:
        if self.n > MASK_TIER_N:
            raise DomainError(
                f"bitmask tier supports n <= {MASK_TIER_N}, family has n={self.n}"
            )
        return [_mask_of(s) for s in self.sets]

    @cached_property
    def mask_set(self) -> frozenset:
        return frozenset(self.mask_list)

    @cached_property
    def masks(self) -> np.ndarray:
        return np.array(self.mask_list, dtype=np.int64)

    @cached_property
    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR structure: for each 0-based vertex, ascending indices of its sets."""
        per_vertex: list[list[int]] = [[] for _ in range(self.n)]
        for i, s in enumerate(self.sets):
            for v in s:
                per_vertex[v - 1].append(i)
        starts = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(self.n):
            starts[v + 1] = starts[v] + len(per_vertex[v])
        items = np.fromiter(
            (i for lst in per_vertex for i in lst), dtype=np.int64, count=int(starts[-1])
        )
        return starts, items

    @cached_property
    def degree_list(self) -> list[int]:
        degs = [0] * (self.n + 1)
        for s in self.sets:
            for v in s:
                degs[v] += 1
        return degs[1:]

    def degree(self, x: int) -> int:
        """Number of sets containing vertex ``x`` (the size of the link at x)."""
        self._check_vertex(x)
        return self.degree_list[x - 1]

    def relabel(self, mapping: Sequence[int]) -> "SetFamily":
        """Apply a vertex permutation; ``mapping[v-1]`` is the new label of v."""
        if sorted(mapping) != list(range(1, self.n + 1)):
            raise ValueError("mapping is not a permutation of [1, n]")
        return SetFamily.from_iterable(
            self.n, self.k, ((mapping[v - 1] for v in s) for s in self.sets)
        )

    def add(self, kset: Iterable[int]) -> "SetFamily":
        """Family with one more set (error if already present)."""
        t = validate_kset(kset, self.n, self.k)
        if t in self._set_index:
            raise ValueError(f"set {t!r} already in family")
        return SetFamily.from_iterable(self.n, self.k, self.sets + (t,))

    def missing_sets(self):
        """All k-subsets of [n] not in the family, in lexicographic order."""
        for c in combinations(range(1, self.n + 1), self.k):
            if c not in self._set_index:
                yield c

    def _check_vertex(self, x: int) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1 or x > self.n:
            raise ValueError(f"vertex {x!r} outside [1, {self.n}]")

    # -- family file format -------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines.extend(" ".join(str(v) for v in s) for s in self.sets)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SetFamily":
        lines = [ln for ln in text.split("\n") if ln.strip()]
        if not lines:
            raise ValueError("empty family file")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError(f"header must be 'n k', got {lines[0]!r}")
        n, k = int(head[0]), int(head[1])
        sets = []
        for ln in lines[1:]:
            sets.append(tuple(int(tok) for tok in ln.split()))
        fam = cls(n, k, tuple(validate_kset(s, n, k) for s in sets))
        return fam

    def to_json_obj(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": [list(s) for s in self.sets]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SetFamily":
        return cls(
            int(obj["n"]),
            int(obj["k"]),
            tuple(validate_kset(s, int(obj["n"]), int(obj["k"])) for s in obj["sets"]),
        )

    def save(self, path) -> None:
        text = (
            json.dumps(self.to_json_obj(), indent=2) + "\n"
            if str(path).endswith(".json")
            else self.to_text()
        )
        with open(path, "w", newline="\n") as fh:
            fh.write(text)

    @classmethod
    def load(cls, path) -> "SetFamily":
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json_obj(json.loads(text))
        return cls.from_text(text)


@dataclass(frozen=True)
class Matching:
    """A pairwise-disjoint collection of sets, kept in lexicographic order."""

    sets: tuple[KSet, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for s in self.sets:
            for v in s:
                if v in seen:
                    raise ValueError(f"sets are not pairwise disjoint at vertex {v}")
                seen.add(v)
        if list(self.sets) != sorted(self.sets):
            raise ValueError("matching sets must be sorted")

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for s in self.sets for v in s)

    def covers(self, vertices: Iterable[int]) -> bool:
        return set(vertices) <= self.vertices

    def is_perfect(self, n: int) -> bool:
        return self.vertices == set(range(1, n + 1))


@dataclass(frozen=True)
class BlockingWitness:
    """A blocking set together with the matching-size cap the verdict used."""

    vertices: tuple[int, ...]
    checked_cap: int


def is_matching(sets: Iterable[Iterable[int]], n: Optional[int] = None) -> bool:
    """True iff the given sets are pairwise disjoint.

    Each set must be a valid vertex set (positive distinct ids, at most ``n``
    when given); invalid input raises ``ValueError``.
    """
    seen: set[int] = set()
    disjoint = True
    for s in sets:
        t = tuple(s)
        bound = n if n is not None else max(t, default=1)
        validate_kset(t, bound)
        for v in t:
            if v in seen:
                disjoint = False
            seen.add(v)
    return disjoint


def _require_divisible(family: SetFamily) -> int:
    if family.n % family.k:
        raise DomainError(
            f"k={family.k} does not divide n={family.n}; perfect-matching "
            "queries need k | n"
        )
    return family.n // family.k


def find_perfect_matching(family: SetFamily) -> Optional[Matching]:
    """The lexicographically least perfect matching of the family, if any.

    Complete search (branching on the lowest uncovered vertex); supported for
    n up to MATCHING_TIER_N.
    """
    from . import backend

    _require_divisible(family)
    if family.n > MATCHING_TIER_N:
        raise DomainError(
            f"perfect-matching search supports n <= {MATCHING_TIER_N}, got {family.n}"
        )
    starts, items = family.incidence
    idx = backend.perfect_matching(family.masks, starts, items, family.n)
    if len(idx) == 1 and idx[0] < 0:
        return None
    return Matching(tuple(family.sets[int(i)] for i in idx))


def covering_matching(
    family: SetFamily, vertices: Iterable[int], cap: int
) -> Optional[Matching]:
    """Least matching of at most ``cap`` family sets whose union contains ``vertices``.

    Exact search; returns ``None`` when no such matching exists.
    """
    from . import backend

    if cap < 0:
        raise ValueError(f"cap must be nonnegative, got {cap}")
    target_set = validate_kset(sorted(set(vertices)), family.n)
    if not target_set:
        return Matching(())
    starts, items = family.incidence
    idx = backend.cover_matching(
        family.masks, starts, items, family.k, _mask_of(target_set), cap
    )
    if len(idx) == 1 and idx[0] < 0:
        return None
    return Matching(tuple(family.sets[int(i)] for i in idx))


def is_blocking_set(family: SetFamily, vertices: Iterable[int]) -> bool:
    """True iff no matching of |B| sets covers B (with |B| <= s enforced)."""
    s = _require_divisible(family)
    b = tuple(sorted(set(vertices)))
    if len(b) > s:
        raise DomainError(f"blocking sets have size at most s={s}, got |B|={len(b)}")
    return covering_matching(family, b, len(b)) is None


def is_blocking_set_unbounded(family: SetFamily, vertices: Iterable[int]) -> bool:
    """True iff no matching of any size covers B.

    Equivalent to :func:`is_blocking_set` because a covering matching can be
    pruned to its sets that touch B; both predicates are kept so the
    equivalence can be tested rather than assumed.
    """
    s = _require_divisible(family)
    b = tuple(sorted(set(vertices)))
    if len(b) > s:
        raise DomainError(f"blocking sets have size at most s={s}, got |B|={len(b)}")
    return covering_matching(family, b, s) is None


def min_blocking_size(
    family: SetFamily, cap: int
) -> Optional[tuple[int, BlockingWitness]]:
    """Smallest b' <= cap admitting a blocking set, with its least witness.

    Returns ``None`` when every vertex set of size up to ``cap`` can be
    covered.  Witnesses are scanned in lexicographic order per size, so the
    reported witness is the lexicographically least blocking set of the
    minimal size.
    """
    s = _require_divisible(family)
    if cap > s:
        raise DomainError(f"cap must be at most s={s}, got {cap}")
    for size in range(1, cap + 1):
        for b in combinations(range(1, family.n + 1), size):
            if covering_matching(family, b, size) is None:
                return size, BlockingWitness(b, size)
    return None


def link(family: SetFamily, x: int) -> SetFamily:
    """The link family F(x) = { F \\ {x} : x in F in F }, a (k-1)-uniform family."""
    family._check_vertex(x)
    if family.k < 2:
        raise ValueError("link is defined for families of uniformity k >= 2")
    shrunk = [tuple(v for v in s if v != x) for s in family.sets if x in s]
    return SetFamily.from_iterable(family.n, family.k - 1, shrunk)


def max_matching_size(family: SetFamily) -> int:
    """Largest matching size in the family, by exact subset dynamic programming."""
    from . import backend

    if family.n > SUBSET_DP_TIER_N:
        raise DomainError(
            f"subset DP supports n <= {SUBSET_DP_TIER_N}, got n={family.n}"
        )
    starts, items = family.incidence
    return int(backend.max_matching_size(family.masks, starts, items, family.n))
