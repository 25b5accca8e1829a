import pytest

from blockmatch import (
    DomainError,
    MixedMatching,
    PropInstance,
    build_fig1,
    build_fig2,
    cover_b,
    edge_bound,
    exhaustive_verify,
    instance_signature,
    sampled_verify,
    validate,
)


class TestEdgeBound:
    def test_values(self):
        assert edge_bound(2, 6) == 5
        assert edge_bound(1, 4) == 0
        assert edge_bound(3, 4) == 9

    def test_parameters(self):
        with pytest.raises(DomainError):
            edge_bound(0, 3)


class TestValidate:
    def test_builders_are_valid(self):
        assert validate(build_fig1(2, 4)) == []
        assert validate(build_fig2(3)) == []

    def test_edge_missing_the_block(self):
        inst = PropInstance(6, 4, 2, ((1, 5), (2, 6)), ((5, 6),))
        assert "edge misses [b]" in validate(inst)

    def test_wrong_max_degree(self):
        inst = PropInstance(4, 2, 2, ((2, 3),), ((2, 4),))
        assert "vertex 1 not max degree" in validate(inst)

    def test_uncovered_special(self):
        inst = PropInstance(5, 3, 2, ((2, 4),), ())
        assert "cells do not cover [2,b]" in validate(inst)


class TestCoverB:
    def test_fig1_not_coverable(self):
        assert cover_b(build_fig1(2, 4)) is None

    def test_extra_exterior_edge_makes_coverable(self):
        base = build_fig1(2, 4)
        inst = PropInstance(
            base.n + 1, base.b, base.k, base.cells, tuple(sorted(base.edges + ((1, base.n + 1),)))
        )
        cover = cover_b(inst)
        assert cover is not None
        assert (1, base.n + 1) in cover.items and base.cells[0] in cover.items
        assert cover.covers(range(1, base.b + 1))
        assert cover.valid_for(inst)

    def test_lonely_special_uncoverable(self):
        inst = PropInstance(1, 1, 2, (), ())
        assert cover_b(inst) is None

    def test_invalid_instance_rejected(self):
        inst = PropInstance(4, 2, 2, ((2, 3),), ((2, 4),))
        with pytest.raises(DomainError):
            cover_b(inst)

    def test_mixed_matching_validation(self):
        with pytest.raises(ValueError):
            MixedMatching(((1, 2), (2, 3, 4)))


class TestBuilders:
    def test_fig1_shape(self):
        inst = build_fig1(2, 3)
        assert inst.a == 1 and len(inst.edges) == 2
        assert all(e[0] == 1 for e in inst.edges)
        inst = build_fig1(3, 4)
        assert inst.a == 2 and len(inst.edges) == 9 == edge_bound(3, 4)

    def test_fig2_shape(self):
        inst = build_fig2(2)
        assert inst.a == 1 and len(inst.edges) == 2
        w = inst.edges[0][1]
        assert inst.edges == ((1, w), (2, w))
        inst = build_fig2(3)
        assert len(inst.edges) == 6 == edge_bound(3, 3)

    @pytest.mark.parametrize("b", [1, 2, 3, 4])
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_fig1_attains_bound_uncovered(self, b, k):
        inst = build_fig1(b, k)
        assert validate(inst) == []
        assert len(inst.edges) == edge_bound(b, k)
        assert cover_b(inst) is None

    @pytest.mark.parametrize("b", [2, 3, 4])
    def test_fig2_attains_bound_uncovered(self, b):
        inst = build_fig2(b)
        assert validate(inst) == []
        assert len(inst.edges) == edge_bound(b, 3)
        assert cover_b(inst) is None

    def test_instance_text_round_trip(self):
        inst = build_fig1(3, 4)
        assert PropInstance.from_text(inst.to_text()) == inst


class TestSignature:
    def test_invariant_under_relabeling(self):
        inst = build_fig2(3)
        # swap the two cells' designated/extra vertices wholesale: 4,5 <-> 6,7
        swapped = PropInstance(
            inst.n,
            inst.b,
            inst.k,
            ((2, 6, 7), (3, 4, 5)),
            tuple(sorted((i, {4: 6, 6: 4}.get(w, w)) for i, w in inst.edges)),
        )
        assert instance_signature(swapped) == instance_signature(inst)

    def test_ignores_isolated_exterior(self):
        inst = build_fig1(2, 4)
        padded = PropInstance(inst.n + 2, inst.b, inst.k, inst.cells, inst.edges)
        assert instance_signature(padded) == instance_signature(inst)

    def test_distinguishes_fig1_fig2(self):
        assert instance_signature(build_fig1(2, 3)) != instance_signature(build_fig2(2))


class TestExhaustiveVerify:
    def test_b2_k4(self):
        report = exhaustive_verify(2, 4, 1)
        assert report.violations == ()
        assert report.class_counts() == {"fig1": 1}
        assert report.bound == 3

    def test_b2_k3_has_both_classes(self):
        report = exhaustive_verify(2, 3, 1)
        assert report.violations == ()
        assert report.class_counts() == {"fig1": 1, "fig2": 1}

    def test_b1_vacuous(self):
        report = exhaustive_verify(1, 3, 1)
        assert report.violations == ()
        assert report.bound == 0
        assert all(len(i.edges) == 0 for i in report.equality_instances)

    def test_b3_k3_finds_a_third_equality_class(self):
        # at b=3, k=3 the bound still holds but a configuration beyond the
        # two named ones attains it: specials 1 and 2 share all three
        # neighbors 5, 6, 7 while special 3 is isolated inside its cell
        report = exhaustive_verify(3, 3, 0)
        assert report.violations == ()
        counts = report.class_counts()
        assert counts == {"fig1": 1, "fig2": 1, "other": 1}
        other = report.equality_instances[report.classification.index("other")]
        degs = sorted((other.degree(i) for i in (1, 2, 3)), reverse=True)
        assert degs == [3, 3, 0]
        assert cover_b(other) is None
        assert len(other.edges) == edge_bound(3, 3)

    def test_b3_k4_only_fig1(self):
        report = exhaustive_verify(3, 4, 0)
        assert report.violations == ()
        assert report.class_counts() == {"fig1": 1}

    def test_workers_do_not_change_the_report(self):
        one = exhaustive_verify(2, 3, 1, workers=1)
        two = exhaustive_verify(2, 3, 1, workers=2)
        assert one == two

    def test_tier_enforced(self):
        with pytest.raises(DomainError):
            exhaustive_verify(4, 3, 1)
        with pytest.raises(DomainError):
            exhaustive_verify(2, 6, 1)
        with pytest.raises(DomainError):
            exhaustive_verify(2, 3, 3)

    def test_report_serialization(self):
        report = exhaustive_verify(2, 4, 1)
        obj = report.to_json_obj()
        for key in ("checked", "violations", "equality_instances", "classification"):
            assert key in obj


class TestSampledVerify:
    def test_clean_and_reproducible(self):
        one = sampled_verify(2, 4, 1, samples=300, seed=5)
        two = sampled_verify(2, 4, 1, samples=300, seed=5)
        assert one == two
        assert one.violations == ()

    def test_reaches_beyond_exhaustive_tier(self):
        report = sampled_verify(4, 4, 1, samples=200, seed=11)
        assert report.violations == ()
