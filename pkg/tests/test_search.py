from math import comb

import pytest

from blockmatch import (
    DomainError,
    SearchBudget,
    SetFamily,
    build_E,
    extremal_search,
    find_perfect_matching,
    maximality_check,
    min_blocking_size,
    size_E,
)

EXHAUSTIVE = SearchBudget(mode="exhaustive")


class TestMaximalityCheck:
    def test_layered_family_is_maximal_for_k3(self):
        fam = build_E(3, 12, 2)
        assert len(list(fam.missing_sets())) == 82
        assert maximality_check(fam) is None

    def test_readding_a_removed_set_is_a_witness(self):
        fam = build_E(3, 12, 2)
        smaller = SetFamily(fam.n, fam.k, tuple(s for s in fam.sets if s != (1, 3, 4)))
        assert maximality_check(smaller) == (1, 3, 4)

    def test_k2_layered_family_is_not_maximal(self):
        assert maximality_check(build_E(2, 10, 3)) == (1, 5)

    def test_rejects_family_with_perfect_matching(self):
        complete = SetFamily.from_iterable(4, 2, [(1, 2), (3, 4)])
        with pytest.raises(DomainError):
            maximality_check(complete)


class TestExtremalSearchExhaustive:
    def test_smallest_graph_case(self):
        res = extremal_search(2, 4, 1, EXHAUSTIVE)
        assert res.max_size == 3 and res.exact
        # the least witness of size 3: the star at vertex 1
        assert res.witness.sets == ((1, 2), (1, 3), (1, 4))

    @pytest.mark.parametrize(
        "k,n", [(2, 4), (2, 6), (2, 8), (3, 6)]
    )
    def test_b1_matches_one_vertex_deletion(self, k, n):
        res = extremal_search(k, n, 1, EXHAUSTIVE)
        assert res.max_size == comb(n - 1, k)
        assert res.exact

    def test_b2_beats_the_construction_at_small_scale(self):
        res = extremal_search(2, 6, 2, EXHAUSTIVE)
        assert res.max_size >= 8 == size_E(2, 6, 2)
        assert find_perfect_matching(res.witness) is None
        assert min_blocking_size(res.witness, 1) is None

    def test_witnesses_satisfy_constraints(self):
        for (k, n, b) in [(2, 4, 1), (2, 6, 1), (2, 6, 2), (3, 6, 1), (3, 6, 2)]:
            res = extremal_search(k, n, b, EXHAUSTIVE)
            assert find_perfect_matching(res.witness) is None
            assert min_blocking_size(res.witness, b - 1) is None
            assert res.max_size == len(res.witness)
            assert res.max_size >= (
                size_E(k, n, b) if n >= b * k + b else 0
            )

    def test_tier_enforced(self):
        with pytest.raises(DomainError):
            extremal_search(2, 10, 1, EXHAUSTIVE)
        with pytest.raises(DomainError):
            extremal_search(3, 9, 1, EXHAUSTIVE)
        with pytest.raises(DomainError):
            extremal_search(2, 7, 1, EXHAUSTIVE)  # k must divide n

    def test_infeasible_parameters_error(self):
        with pytest.raises(DomainError):
            extremal_search(2, 4, 3, EXHAUSTIVE)


class TestExtremalSearchRandomized:
    def test_reproducible(self):
        budget = SearchBudget(mode="randomized", node_cap=2000, seed=42)
        a = extremal_search(2, 10, 3, budget)
        b = extremal_search(2, 10, 3, budget)
        assert a == b
        assert not a.exact

    def test_finds_the_augmentation_gain(self):
        budget = SearchBudget(mode="randomized", node_cap=4000, seed=1)
        res = extremal_search(2, 10, 3, budget)
        assert res.max_size >= 27 > 26 == size_E(2, 10, 3)
        assert find_perfect_matching(res.witness) is None
        assert min_blocking_size(res.witness, 2) is None

    def test_workers_do_not_change_the_result(self):
        budget = SearchBudget(mode="randomized", node_cap=1600, seed=3)
        assert extremal_search(2, 8, 2, budget, workers=1) == extremal_search(
            2, 8, 2, budget, workers=2
        )

    def test_needs_feasible_seed(self):
        budget = SearchBudget(mode="randomized", node_cap=100, seed=0)
        with pytest.raises(DomainError):
            extremal_search(2, 4, 3, budget)
