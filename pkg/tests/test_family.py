import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockmatch import (
    DomainError,
    Matching,
    SetFamily,
    build_E,
    build_kleitman,
    covering_matching,
    find_perfect_matching,
    is_blocking_set,
    is_blocking_set_unbounded,
    is_matching,
    link,
    min_blocking_size,
)
from blockmatch.family import max_matching_size, validate_kset

from conftest import family_corpus, random_family


def complete_family(n, k):
    return SetFamily.from_iterable(n, k, combinations(range(1, n + 1), k))


class TestSetFamily:
    def test_sorted_and_deduplicated(self):
        fam = SetFamily.from_iterable(5, 2, [(3, 4), (1, 2), (2, 5)])
        assert fam.sets == ((1, 2), (2, 5), (3, 4))
        with pytest.raises(ValueError):
            SetFamily.from_iterable(5, 2, [(1, 2), (2, 1)])

    def test_rejects_bad_vertices(self):
        with pytest.raises(ValueError):
            SetFamily.from_iterable(4, 2, [(0, 1)])
        with pytest.raises(ValueError):
            SetFamily.from_iterable(4, 2, [(3, 5)])
        with pytest.raises(ValueError):
            SetFamily.from_iterable(4, 2, [(2, 2)])

    def test_s_requires_divisibility(self):
        fam = SetFamily.from_iterable(5, 2, [(1, 2)])
        with pytest.raises(DomainError):
            fam.s
        assert SetFamily.from_iterable(6, 2, [(1, 2)]).s == 3

    def test_text_round_trip(self):
        fam = build_E(3, 12, 2)
        again = SetFamily.from_text(fam.to_text())
        assert again == fam
        assert SetFamily.from_json_obj(fam.to_json_obj()) == fam

    def test_text_rejects_unsorted_lines(self):
        with pytest.raises(ValueError):
            SetFamily.from_text("4 2\n3 4\n1 2\n")
        with pytest.raises(ValueError):
            SetFamily.from_text("4 2\n1 2\n1 2\n")

    def test_relabel(self):
        fam = SetFamily.from_iterable(3, 2, [(1, 2), (1, 3)])
        swapped = fam.relabel([2, 1, 3])
        assert swapped.sets == ((1, 2), (2, 3))


class TestIsMatching:
    def test_disjoint(self):
        assert is_matching([(1, 2, 3), (4, 5, 6)])

    def test_shared_vertex(self):
        assert not is_matching([(1, 2), (2, 3)])

    def test_empty(self):
        assert is_matching([])

    def test_invalid_vertex(self):
        with pytest.raises(ValueError):
            is_matching([(0, 2)])
        with pytest.raises(ValueError):
            is_matching([(1, 7)], n=6)

    def test_matching_type_validates(self):
        with pytest.raises(ValueError):
            Matching(((1, 2), (2, 3)))
        m = Matching(((1, 2), (3, 4)))
        assert m.is_perfect(4) and not m.is_perfect(5)


class TestPerfectMatching:
    def test_complete_family_has_one(self):
        m = find_perfect_matching(complete_family(4, 2))
        assert m is not None and m.is_perfect(4)
        assert m.sets == ((1, 2), (3, 4))  # lexicographically least

    def test_kleitman_has_none(self):
        assert find_perfect_matching(build_kleitman(3, 12)) is None

    def test_layered_family_has_none(self):
        assert find_perfect_matching(build_E(3, 12, 2)) is None

    def test_requires_divisibility(self):
        fam = SetFamily.from_iterable(5, 2, [(1, 2)])
        with pytest.raises(DomainError):
            find_perfect_matching(fam)

    def test_against_naive_backtracking_oracle(self):
        # presence/absence must agree with a structure-free exact-cover search
        def oracle(fam):
            universe = frozenset(range(1, fam.n + 1))
            sets = [frozenset(s) for s in reversed(fam.sets)]

            def rec(covered):
                if covered == universe:
                    return True
                v = min(universe - covered)
                for s in sets:
                    if v in s and not covered & s:
                        if rec(covered | s):
                            return True
                return False

            return rec(frozenset())

        for fam in family_corpus(seed=1203, count=1000, divisible_only=True):
            got = find_perfect_matching(fam)
            assert (got is not None) == oracle(fam), fam
            if got is not None:
                assert got.is_perfect(fam.n)
                assert all(s in fam for s in got.sets)


class TestCoveringAndBlocking:
    def test_empty_target(self):
        fam = build_E(3, 12, 2)
        assert covering_matching(fam, (), 0) == Matching(())

    def test_layered_family_blocked_pair(self):
        fam = build_E(3, 12, 2)
        assert covering_matching(fam, (1, 2), 2) is None
        assert covering_matching(fam, (1,), 1) == Matching(((1, 3, 4),))

    def test_blocking_examples(self):
        fam = build_E(3, 12, 2)
        assert is_blocking_set(fam, (1, 2))
        assert not is_blocking_set(fam, (1,))
        assert not is_blocking_set(complete_family(12, 3), (1, 2, 3))

    def test_rejects_oversized_b(self):
        fam = build_E(3, 12, 2)
        with pytest.raises(DomainError):
            is_blocking_set(fam, (1, 2, 3, 4, 5))

    def test_min_blocking_size(self):
        size, witness = min_blocking_size(build_kleitman(3, 12), 2)
        assert (size, witness.vertices) == (1, (1,))
        size, witness = min_blocking_size(build_E(3, 12, 2), 3)
        assert (size, witness.vertices) == (2, (1, 2))
        assert min_blocking_size(complete_family(12, 3), 3) is None

    def test_min_blocking_cap_above_s(self):
        with pytest.raises(DomainError):
            min_blocking_size(build_E(3, 12, 2), 5)

    def test_bounded_and_unbounded_predicates_agree(self):
        rng = random.Random(417)
        for _ in range(120):
            k = rng.choice([2, 3])
            n = rng.choice([4, 6, 8]) if k == 2 else rng.choice([6, 9])
            fam = random_family(rng, n, k)
            s = fam.s
            for size in range(1, min(3, s) + 1):
                for b in combinations(range(1, n + 1), size):
                    assert is_blocking_set(fam, b) == is_blocking_set_unbounded(fam, b)

    def test_covering_cap_reduction(self):
        # a covering matching of any size prunes to one of size <= |B|
        rng = random.Random(98)
        for _ in range(80):
            fam = random_family(rng, rng.choice([4, 6, 8]), 2)
            s = fam.s
            for size in range(1, min(3, s) + 1):
                for b in combinations(range(1, fam.n + 1), size):
                    small = covering_matching(fam, b, size)
                    big = covering_matching(fam, b, s)
                    assert (small is None) == (big is None)

    def test_blocking_false_is_preserved_by_growth(self):
        rng = random.Random(5150)
        for _ in range(60):
            fam = random_family(rng, 6, 2)
            missing = list(fam.missing_sets())
            if not missing:
                continue
            grown = fam.add(rng.choice(missing))
            for b in combinations(range(1, 7), 2):
                if not is_blocking_set(fam, b):
                    assert not is_blocking_set(grown, b)


class TestLink:
    def test_direct_definition(self):
        fam = SetFamily.from_iterable(4, 3, [(1, 2, 3), (2, 3, 4)])
        assert link(fam, 2).sets == ((1, 3), (3, 4))
        assert len(link(SetFamily.from_iterable(5, 3, [(1, 2, 3)]), 5)) == 0

    def test_layered_family_link_at_one(self):
        assert link(build_E(3, 12, 2), 1).sets == ((3, 4),)

    def test_invalid_vertex(self):
        with pytest.raises(ValueError):
            link(SetFamily.from_iterable(3, 2, [(1, 2)]), 4)

    def test_degree_sum_identity(self):
        for fam in family_corpus(seed=31, count=50):
            assert sum(len(link(fam, x)) for x in range(1, fam.n + 1)) == fam.k * len(fam)


class TestMaxMatchingSize:
    def test_against_brute_force(self):
        def brute(fam):
            best = 0
            for r in range(1, fam.s + 1):
                for sub in combinations(fam.sets, r):
                    if is_matching(sub):
                        best = max(best, r)
                        break
            return best

        rng = random.Random(2024)
        for _ in range(40):
            fam = random_family(rng, rng.choice([4, 6]), 2)
            assert max_matching_size(fam) == brute(fam)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_validate_kset_normalises(data):
    n = data.draw(st.integers(min_value=2, max_value=12))
    size = data.draw(st.integers(min_value=1, max_value=n))
    members = data.draw(
        st.lists(st.integers(min_value=1, max_value=n), min_size=size, max_size=size, unique=True)
    )
    out = validate_kset(members, n)
    assert out == tuple(sorted(members))
