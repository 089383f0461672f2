import pytest

from hitset import brute_force_mhs, make_family, minimize
from hitset.buildup import mmcs
from hitset.errors import ValidationError
from hitset.family import mask_of
from hitset.fullcover import (
    FullCover,
    cover_from_edge,
    cover_from_transversal,
    full_cover_dualize,
)
from hitset.generators import matching_graph

from conftest import seeded_family, sets_of


def covers_every_set(cover: FullCover, sets) -> bool:
    members = [set(c) for c in cover.covers]
    return all(any(set(s) <= c for c in members) for s in sets)


class TestCoverFromTransversal:
    def test_formula(self):
        f = make_family([[0, 1]])
        cover = cover_from_transversal(f, [0])
        assert set(cover.covers) == {(1,), (0,)}

    def test_whole_universe_transversal(self):
        f = make_family([[0, 1], [1, 2]])
        cover = cover_from_transversal(f, [0, 1, 2])
        # every co-singleton plus the universe itself
        assert set(cover.covers) == {(1, 2), (0, 2), (0, 1), (0, 1, 2)}

    def test_degenerate_empty(self):
        cover = cover_from_transversal(make_family([]), [])
        assert cover.covers == ((),)

    def test_rejects_non_hitting(self):
        with pytest.raises(ValidationError):
            cover_from_transversal(make_family([[0], [1]]), [0])

    def test_covers_the_transversal_side(self):
        # every minimal hitting set fits inside some member
        for seed in range(25):
            f = seeded_family(seed)
            tr = brute_force_mhs(f)
            if not tr.sets:
                continue
            cover = cover_from_transversal(f, tr.sets[0])
            assert covers_every_set(cover, tr.sets)


class TestCoverFromEdge:
    def test_formula(self):
        f = make_family([[0, 1]])
        cover = cover_from_edge(f, [0, 1])
        assert set(cover.covers) == {(0,), (1,)}

    def test_singleton_edge_gives_universe(self):
        f = make_family([[0]])
        assert cover_from_edge(f, [0]).covers == ((0,),)

    def test_disjoint_set_contributes_nothing(self):
        f = make_family([[0, 1], [2, 3]])
        cover = cover_from_edge(f, [0, 1])
        # the member count comes only from sets meeting the edge
        assert len(cover.covers) == 2

    def test_rejects_non_edge(self):
        with pytest.raises(ValidationError):
            cover_from_edge(make_family([[0, 1]]), [0])

    def test_covers_the_transversal_side(self):
        for seed in range(25):
            f = seeded_family(seed)
            if f.has_empty_set() or len(f) == 0:
                continue
            tr = brute_force_mhs(f)
            cover = cover_from_edge(f, f.sets[0])
            assert covers_every_set(cover, tr.sets)


class TestDecompositionIdentity:
    def wedge_merge(self, family, cover):
        acc = {0}
        for c in cover:
            cmask = mask_of(c)
            sub = [s for s in family.sets if set(s) <= set(c)]
            subfam = make_family(sub, universe_size=family.universe_size)
            part = [mask_of(t) for t in brute_force_mhs(subfam).sets]
            acc = {a | b for a in acc for b in part}
        from hitset.family import elems_of, minimize_masks

        return {elems_of(x) for x in minimize_masks(acc)}

    def test_lemma_on_valid_covers(self):
        # any full cover of a simple family recombines to its dual
        for seed in range(25):
            f0 = seeded_family(seed, max_m=7, max_n=6)
            if f0.has_empty_set() or len(f0) == 0:
                continue
            f = make_family(minimize(f0.sets), universe_size=f0.universe_size)
            truth = sets_of(brute_force_mhs(f))
            universe = tuple(range(f.universe_size))
            covers = [[universe], list(f.sets)]
            # co-singleton cover from the largest edge is also full for simple input
            t = max(f.sets, key=len)
            covers.append([tuple(e for e in universe if e != i) for i in t] + [t])
            for cover in covers:
                assert self.wedge_merge(f, cover) == truth, (f.sets, cover)


class TestFullCoverDualize:
    def test_worked_example(self, worked_example):
        assert full_cover_dualize(worked_example).sets == ((1, 2), (3,))

    def test_matching_counts(self):
        assert len(full_cover_dualize(matching_graph(4))) == 16

    def test_base_case_equals_mmcs(self):
        for seed in range(10):
            f = seeded_family(seed, max_m=8, max_n=5)
            direct = mmcs(f).collection.sets
            assert full_cover_dualize(f, base_threshold=10).sets == direct

    def test_oracle_equivalence(self):
        for seed in range(60):
            f = seeded_family(seed)
            got = full_cover_dualize(f, base_threshold=2)
            assert sets_of(got) == sets_of(brute_force_mhs(f)), f.sets

    def test_worker_invariance(self):
        for seed in range(6):
            f = seeded_family(seed, max_m=10, max_n=9)
            base = full_cover_dualize(f, base_threshold=2, workers=1).sets
            for w in (2, 4):
                assert full_cover_dualize(f, base_threshold=2, workers=w).sets == base

    def test_cover_has_multiple_members_for_distinct_sets(self):
        # families with two distinct supports always split into >= 2 members
        from hitset.fullcover import _edge_cover

        for seed in range(20):
            f = seeded_family(seed)
            from hitset.family import minimize_masks

            masks = minimize_masks(f.masks)
            if len({s for s in masks}) < 2 or 0 in masks:
                continue
            assert len(_edge_cover(masks, f.universe_size)) >= 2

    def test_empty_and_unhittable(self):
        assert full_cover_dualize(make_family([])).sets == ((),)
        coll = full_cover_dualize(make_family([[], [0]], universe_size=1))
        assert coll.sets == () and coll.unhittable

    def test_bad_parameters(self, worked_example):
        with pytest.raises(ValidationError):
            full_cover_dualize(worked_example, base_threshold=0)
        with pytest.raises(ValidationError):
            full_cover_dualize(worked_example, workers=0)
