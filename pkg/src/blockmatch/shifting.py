"""The shift operator S_{x,y}, shifted-structure predicates and shift closure.

``shift(F, x, y)`` replaces y by x in every set where doing so creates no
collision; it is defined only when deg(x) >= deg(y).  A shift is *meaningful*
when it changes the family, in which case the potential sum_i deg(i)^2
strictly increases -- the monovariant that bounds every shifting process.

``shift_closure`` repeatedly sorts vertices by degree and applies the first
meaningful shift that keeps the family free of blocking sets below a given
size, until no such shift remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainError
from .family import KSet, SetFamily, min_blocking_size


def potential(family: SetFamily) -> int:
    """sum over vertices of deg(v)^2; strictly increases under meaningful shifts."""
    return sum(d * d for d in family.degree_list)


def shift(family: SetFamily, x: int, y: int) -> SetFamily:
    """Apply S_{x,y}: each set containing y but not x moves to (F \\ {y}) u {x}
    unless that set is already present.  Requires deg(x) >= deg(y)."""
    family._check_vertex(x)
    family._check_vertex(y)
    dx, dy = family.degree(x), family.degree(y)
    if dx < dy:
        raise DomainError(
            f"S_({x},{y}) undefined: deg({x})={dx} is less than deg({y})={dy}"
        )
    bx, by = 1 << (x - 1), 1 << (y - 1)
    present = family.mask_set
    out = []
    for m in family.mask_list:
        if m & by and not m & bx:
            img = (m ^ by) | bx
            out.append(m if img in present else img)
        else:
            out.append(m)
    shifted = SetFamily.from_masks(family.n, family.k, out)
    assert len(shifted) == len(family)
    return shifted


def is_meaningful(family: SetFamily, x: int, y: int) -> bool:
    """True iff S_{x,y} changes the family."""
    family._check_vertex(x)
    family._check_vertex(y)
    dx, dy = family.degree(x), family.degree(y)
    if dx < dy:
        raise DomainError(
            f"S_({x},{y}) undefined: deg({x})={dx} is less than deg({y})={dy}"
        )
    return _meaningful_masks(family, x, y)


def _meaningful_masks(family: SetFamily, x: int, y: int) -> bool:
    bx, by = 1 << (x - 1), 1 << (y - 1)
    present = family.mask_set
    starts, items = family.incidence
    masks = family.mask_list
    for q in range(int(starts[y - 1]), int(starts[y])):
        m = masks[int(items[q])]
        if not m & bx and ((m ^ by) | bx) not in present:
            return True
    return False


def is_shifted_on(family: SetFamily, region: Iterable[int]) -> bool:
    """True iff degrees are non-increasing along the region (ascending order)
    and no meaningful shift uses two region vertices."""
    ys = sorted(set(region))
    for v in ys:
        family._check_vertex(v)
    degs = [family.degree(v) for v in ys]
    if any(degs[i] < degs[i + 1] for i in range(len(degs) - 1)):
        return False
    for i, x in enumerate(ys):
        for y in ys[i + 1 :]:
            if _meaningful_masks(family, x, y):
                return False
    return True


@dataclass(frozen=True)
class ClosureViolation:
    """A witness that the shifted-structure closure property fails."""

    kset: KSet
    x: int
    y: int
    image: KSet


def closure_property_check(
    family: SetFamily, region: Iterable[int]
) -> Optional[ClosureViolation]:
    """Verify the closure property of shifted families on ``region``.

    For every F in the family, y in F, x not in F with x < y and both in the
    region, (F \\ {y}) u {x} must also belong to the family.  Returns the
    first violation (family order, then y, then x) or ``None``.
    """
    ys = sorted(set(region))
    if not is_shifted_on(family, ys):
        raise DomainError("family is not shifted on the given region")
    region_set = set(ys)
    present = family._set_index
    for f in family.sets:
        members = set(f)
        in_region = [y for y in f if y in region_set]
        for y in in_region:
            for x in ys:
                if x >= y:
                    break
                if x in members:
                    continue
                image = tuple(sorted(members - {y} | {x}))
                if image not in present:
                    return ClosureViolation(f, x, y, image)
    return None


@dataclass(frozen=True)
class ShiftStep:
    x: int
    y: int
    potential_before: int
    potential_after: int


@dataclass(frozen=True)
class ShiftTrace:
    """Record of a constrained shift-to-fixpoint run.

    ``permutation`` maps original labels to final ones (entry v-1 is the
    final label of original vertex v); vertices are re-sorted by degree
    before every step, and steps are recorded in the labels current at the
    time.  ``shifted_region`` is the longest prefix [1, m] of the final
    labelling on which the final family is shifted.
    """

    steps: tuple[ShiftStep, ...]
    final: SetFamily
    permutation: tuple[int, ...]
    shifted_region: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {
            "steps": [
                [s.x, s.y, s.potential_before, s.potential_after] for s in self.steps
            ],
            "permutation": list(self.permutation),
            "shifted_region": list(self.shifted_region),
            "final": self.final.to_json_obj(),
        }


def _degree_sort_permutation(family: SetFamily) -> list[int]:
    # descending degree, ties by current label; entry v-1 = new label of v
    order = sorted(range(1, family.n + 1), key=lambda v: (-family.degree_list[v - 1], v))
    perm = [0] * family.n
    for new_label, v in enumerate(order, start=1):
        perm[v - 1] = new_label
    return perm


def _compose(first: Sequence[int], then: Sequence[int]) -> list[int]:
    return [then[first[v] - 1] for v in range(len(first))]


def shift_closure(family: SetFamily, b: int) -> ShiftTrace:
    """Shift as far as possible while keeping every blocking set at size >= b.

    Each round re-sorts vertices by degree (descending, ties by label) and
    applies the lexicographically first meaningful S_{x,y} with x < y whose
    result still has no blocking set of size below ``b``; the process stops
    when no admissible shift remains.
    """
    if b < 1:
        raise DomainError(f"need b >= 1, got b={b}")
    if min_blocking_size(family, b - 1) is not None:
        raise DomainError(f"family already has a blocking set of size below {b}")
    perm = list(range(1, family.n + 1))
    current = family
    steps: list[ShiftStep] = []
    while True:
        sort_perm = _degree_sort_permutation(current)
        perm = _compose(perm, sort_perm)
        current = current.relabel(sort_perm)
        applied = False
        for x in range(1, current.n):
            for y in range(x + 1, current.n + 1):
                # degrees are sorted, so deg(x) >= deg(y) holds for x < y
                if not _meaningful_masks(current, x, y):
                    continue
                candidate = shift(current, x, y)
                if min_blocking_size(candidate, b - 1) is not None:
                    continue
                steps.append(ShiftStep(x, y, potential(current), potential(candidate)))
                current = candidate
                applied = True
                break
            if applied:
                break
        if not applied:
            break
    # longest prefix with no meaningful shift inside it; degrees are already
    # sorted, so the prefix degree condition holds automatically
    region_end = current.n
    for y in range(2, current.n + 1):
        if y > region_end:
            break
        if any(_meaningful_masks(current, x, y) for x in range(1, y)):
            region_end = y - 1
    return ShiftTrace(
        steps=tuple(steps),
        final=current,
        permutation=tuple(perm),
        shifted_region=tuple(range(1, region_end + 1)),
    )
