"""Explicit extremal families and their exact sizes.

Four constructions are provided, all over [n] with 1-based vertices:

* ``build_kleitman(k, n)``      -- every k-set avoiding vertex 1;
* ``build_E(k, n, b)``          -- the layered family whose blocking set is [b];
* ``build_Eprime3(n, b)``       -- the 3-uniform variant that beats it for b > 2;
* ``build_augmented_E2(n, b)``  -- the k = 2 augmentation of ``build_E``.

``size_E``/``size_Eprime3`` are exact closed forms (checked against
enumeration in the tests), and ``delta3`` is their difference, which is
independent of n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .errors import DomainError
from .family import SetFamily


def _check_E_params(k: int, n: int, b: int) -> None:
    if k < 2 or b < 1:
        raise DomainError(f"need k >= 2 and b >= 1, got k={k}, b={b}")
    if n < b * k + b:
        raise DomainError(f"need n >= b*k + b = {b * k + b}, got n={n}")


def canonical_blocks(k: int, n: int, b: int) -> tuple[tuple[int, ...], ...]:
    """The canonical pairwise-disjoint (k-1)-sets E_1, ..., E_{b-1}.

    E_i occupies [b + (i-1)(k-1) + 1, b + i(k-1)]; the last block ends at
    b + (b-1)(k-1) <= n whenever n >= b*k + b.
    """
    _check_E_params(k, n, b)
    return tuple(
        tuple(range(b + (i - 1) * (k - 1) + 1, b + i * (k - 1) + 1))
        for i in range(1, b)
    )


def build_E(k: int, n: int, b: int) -> SetFamily:
    """The b-layer family: all k-sets inside [b+1, n], plus, for each i in [b],
    the sets {i} u E_i (omitted for i = b) and every {i} u S with S a
    (k-1)-subset of [b+1, n] meeting E_1 u ... u E_{i-1}.

    [b] is a blocking set, there is no smaller one, and the family has no
    perfect matching.
    """
    _check_E_params(k, n, b)
    blocks = canonical_blocks(k, n, b)
    sets: list[tuple[int, ...]] = list(combinations(range(b + 1, n + 1), k))
    earlier: set[int] = set()
    for i in range(1, b + 1):
        if i < b:
            # E_i is disjoint from E_1 u ... u E_{i-1}, so this never
            # duplicates a set produced below
            sets.append((i,) + blocks[i - 1])
        if earlier:
            sets.extend(
                (i,) + s
                for s in combinations(range(b + 1, n + 1), k - 1)
                if earlier.intersection(s)
            )
        if i < b:
            earlier.update(blocks[i - 1])
    return SetFamily.from_iterable(n, k, sets)


def size_E(k: int, n: int, b: int) -> int:
    """Exact size of ``build_E(k, n, b)``:
    C(n-b, k) + b*C(n-b, k-1) - sum_i C(n-b-(k-1)(i-1), k-1) + (b-1).
    """
    _check_E_params(k, n, b)
    total = comb(n - b, k) + b * comb(n - b, k - 1)
    for i in range(1, b + 1):
        total -= comb(n - b - (k - 1) * (i - 1), k - 1)
    return total + b - 1


def build_Eprime3(n: int, b: int) -> SetFamily:
    """3-uniform family of all S with |S ∩ [b]| = 1 and S meeting [b+1, 2b-1],
    together with every 3-set inside [b+1, n]."""
    if b < 1:
        raise DomainError(f"need b >= 1, got b={b}")
    if n < 4 * b:
        raise DomainError(f"need n >= 4b = {4 * b}, got n={n}")
    middle = set(range(b + 1, 2 * b))
    sets = [c for c in combinations(range(b + 1, n + 1), 3)]
    for i in range(1, b + 1):
        for s in combinations(range(b + 1, n + 1), 2):
            if middle.intersection(s):
                sets.append((i,) + s)
    return SetFamily.from_iterable(n, 3, sets)


def size_Eprime3(n: int, b: int) -> int:
    """Exact size of ``build_Eprime3(n, b)``:
    C(n-b, 3) + b*C(n-b, 2) - b*C(n-2b+1, 2)."""
    if b < 1:
        raise DomainError(f"need b >= 1, got b={b}")
    if n < 4 * b:
        raise DomainError(f"need n >= 4b = {4 * b}, got n={n}")
    return comb(n - b, 3) + b * comb(n - b, 2) - b * comb(n - 2 * b + 1, 2)


def delta3(b: int) -> int:
    """size_Eprime3(n, b) - size_E(3, n, b), independent of n: (b^3 - 7b + 6)/6."""
    if b < 1:
        raise DomainError(f"need b >= 1, got b={b}")
    num = b**3 - 7 * b + 6
    assert num % 6 == 0
    return num // 6


def build_kleitman(k: int, n: int) -> SetFamily:
    """All k-subsets of [n] avoiding vertex 1; the largest family with no
    perfect matching, of size C(n-1, k)."""
    if k < 1 or n < k:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    return SetFamily.from_iterable(n, k, combinations(range(2, n + 1), k))


def build_augmented_E2(n: int, b: int) -> SetFamily:
    """``build_E(2, n, b)`` plus every pair {i, e} with i in [b] and e in some E_j.

    Each i in [b] stays adjacent only to the (b-1)-element set E_1 u ... u
    E_{b-1}, so [b] remains a blocking set while the family grows for b > 2.
    """
    _check_E_params(2, n, b)
    base = build_E(2, n, b)
    pool = [e for block in canonical_blocks(2, n, b) for e in block]
    extra = {(i, e) for i in range(1, b + 1) for e in pool}
    return SetFamily.from_iterable(n, 2, set(base.sets) | extra)


_KINDS = ("E", "eprime3", "kleitman", "aug-e2")


@dataclass(frozen=True)
class ConstructionSpec:
    """Parameters of one construction, with a JSON echo for provenance."""

    kind: str
    k: int
    n: int
    b: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown construction kind {self.kind!r}")
        if self.kind == "eprime3" and self.k != 3:
            raise DomainError("eprime3 requires k = 3")
        if self.kind == "aug-e2" and self.k != 2:
            raise DomainError("aug-e2 requires k = 2")
        if self.kind != "kleitman" and self.b is None:
            raise DomainError(f"construction {self.kind!r} requires b")

    def build(self) -> SetFamily:
        if self.kind == "E":
            return build_E(self.k, self.n, self.b)
        if self.kind == "eprime3":
            return build_Eprime3(self.n, self.b)
        if self.kind == "kleitman":
            return build_kleitman(self.k, self.n)
        return build_augmented_E2(self.n, self.b)

    def to_json_obj(self) -> dict:
        obj: dict = {"kind": self.kind, "k": self.k, "n": self.n, "b": self.b}
        if self.kind in ("E", "aug-e2"):
            obj["blocks"] = [list(e) for e in canonical_blocks(self.k, self.n, self.b)]
        return obj
