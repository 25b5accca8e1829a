"""Extremal searches: maximality of a family and the largest feasible family.

A family is *feasible* for parameters (k, n, b) when it has no perfect
matching and no blocking set of size below b.  ``extremal_search`` finds the
maximum feasible size exactly on a small tier, by depth-first search over
minimal transversals of the perfect matchings of the complete family: a
family has no perfect matching iff its complement hits every perfect
matching, and the blocking-set constraint only improves as the family grows,
so maximum feasible families sit exactly at the minimal transversals.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import DomainError
from .family import KSet, SetFamily, find_perfect_matching, min_blocking_size


@dataclass(frozen=True)
class SearchBudget:
    """Search mode and spend limits; exhaustive mode is tier-checked."""

    mode: str = "exhaustive"
    node_cap: int = 200_000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exhaustive", "randomized"):
            raise DomainError(f"unknown search mode {self.mode!r}")
        if self.node_cap < 1:
            raise ValueError("node_cap must be positive")


@dataclass(frozen=True)
class ExtremalResult:
    max_size: int
    witness: SetFamily
    exact: bool


def maximality_check(family: SetFamily) -> Optional[KSet]:
    """A missing k-set whose addition still leaves no perfect matching.

    Returns ``None`` when the family is maximal (every addition creates a
    perfect matching).  Missing sets are scanned in lexicographic order, so
    the witness is the least one.  The family itself must have no perfect
    matching.
    """
    if find_perfect_matching(family) is not None:
        raise DomainError("family already has a perfect matching")
    for missing in family.missing_sets():
        if find_perfect_matching(family.add(missing)) is None:
            return missing
    return None


def _feasible_seed(k: int, n: int, b: int) -> Optional[SetFamily]:
    from .constructions import build_E

    if n < b * k + b:
        return None
    fam = build_E(k, n, b)
    if find_perfect_matching(fam) is not None:
        return None
    if min_blocking_size(fam, b - 1) is not None:
        return None
    return fam


def _all_perfect_matchings(n: int, k: int) -> list[tuple[KSet, ...]]:
    """Every perfect matching of the complete k-uniform family on [n]."""
    out: list[tuple[KSet, ...]] = []

    def rec(rest: tuple[int, ...], acc: list[KSet]):
        if not rest:
            out.append(tuple(acc))
            return
        first = rest[0]
        for others in combinations(rest[1:], k - 1):
            acc.append((first,) + others)
            rec(tuple(v for v in rest[1:] if v not in others), acc)
            acc.pop()

    rec(tuple(range(1, n + 1)), [])
    return out


def _exhaustive(k: int, n: int, b: int) -> ExtremalResult:
    complete = list(combinations(range(1, n + 1), k))
    index = {s: i for i, s in enumerate(complete)}
    pm_index = [
        tuple(sorted(index[s] for s in pm)) for pm in _all_perfect_matchings(n, k)
    ]
    total = len(complete)

    best_size = -1
    best_family: Optional[SetFamily] = None
    seed = _feasible_seed(k, n, b)
    if seed is not None:
        best_size = len(seed)
        best_family = seed

    removed: set[int] = set()
    forbidden: set[int] = set()

    def family_of(removed_now: set) -> SetFamily:
        return SetFamily(
            n, k, tuple(s for i, s in enumerate(complete) if i not in removed_now)
        )

    def blocked(removed_now: set) -> bool:
        # blocking sets survive deletions, so a small one here kills the branch
        return min_blocking_size(family_of(removed_now), b - 1) is not None

    def rec():
        nonlocal best_size, best_family
        if total - len(removed) < best_size:
            return
        if b > 1 and blocked(removed):
            return
        unhit = next((pm for pm in pm_index if not removed.intersection(pm)), None)
        if unhit is None:
            fam = family_of(removed)
            size = len(fam)
            if size > best_size or (
                size == best_size
                and (best_family is None or fam.sets < best_family.sets)
            ):
                best_size = size
                best_family = fam
            return
        banned: list[int] = []
        for i in unhit:
            if i in forbidden:
                continue
            removed.add(i)
            rec()
            removed.discard(i)
            forbidden.add(i)
            banned.append(i)
        for i in banned:
            forbidden.discard(i)

    rec()
    if best_family is None:
        raise DomainError(
            f"no feasible family exists for k={k}, n={n}, b={b}"
        )
    return ExtremalResult(best_size, best_family, True)


def _run_stream(task) -> SetFamily:
    """One hill-climbing restart stream; a top-level function so worker
    processes can receive it.  Streams are indexed by (seed, i), making the
    merged result independent of how they are scheduled."""
    k, n, b, seed_family, seed, stream_id, cap = task
    rng = random.Random(f"{seed}:{stream_id}")
    best = seed_family
    spent = 0
    while spent < cap:
        current = set(seed_family.sets)
        improved = True
        while improved and spent < cap:
            improved = False
            candidates = [
                s for s in combinations(range(1, n + 1), k) if s not in current
            ]
            rng.shuffle(candidates)
            for cand in candidates:
                if spent >= cap:
                    break
                trial = SetFamily.from_iterable(n, k, current | {cand})
                spent += 1
                if find_perfect_matching(trial) is None:
                    current.add(cand)
                    improved = True
        fam = SetFamily.from_iterable(n, k, current)
        if len(fam) > len(best) or (len(fam) == len(best) and fam.sets < best.sets):
            best = fam
    return best


def _randomized(
    k: int, n: int, b: int, budget: SearchBudget, workers: int
) -> ExtremalResult:
    seed_family = _feasible_seed(k, n, b)
    if seed_family is None:
        raise DomainError(
            f"randomized mode needs a feasible starting family; none known for "
            f"k={k}, n={n}, b={b}"
        )
    streams = 8
    per_stream = max(budget.node_cap // streams, 1)
    tasks = [
        (k, n, b, seed_family, budget.seed, i, per_stream) for i in range(streams)
    ]
    if workers == 1:
        results = [_run_stream(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_stream, tasks))
    best = seed_family
    for fam in results:
        if len(fam) > len(best) or (len(fam) == len(best) and fam.sets < best.sets):
            best = fam
    return ExtremalResult(len(best), best, False)


def extremal_search(
    k: int, n: int, b: int, budget: SearchBudget, workers: int = 1
) -> ExtremalResult:
    """Largest family with no perfect matching and no blocking set below b.

    Exhaustive mode (k = 2 with n <= 8, or k = 3 with n <= 6) returns the
    true maximum and the lexicographically least witness.  Randomized mode
    hill-climbs from the layered construction: the result is a feasible
    lower-bound witness, reproducible from the seed.  Growing a feasible
    family can never create a small blocking set, so only the
    perfect-matching constraint is re-tested per addition.
    """
    if n % k:
        raise DomainError(f"k={k} must divide n={n}")
    if b < 1:
        raise DomainError(f"need b >= 1, got b={b}")
    if workers < 1:
        raise ValueError("workers must be positive")
    if budget.mode == "exhaustive":
        if not ((k == 2 and n <= 8) or (k == 3 and n <= 6)):
            raise DomainError(
                "exhaustive tier is k=2 with n<=8 or k=3 with n<=6; "
                "use randomized mode beyond it"
            )
        return _exhaustive(k, n, b)
    return _randomized(k, n, b, budget, workers)
