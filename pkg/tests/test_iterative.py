import pytest

from hitset import brute_force_mhs, make_family
from hitset.errors import ValidationError
from hitset.generators import matching_graph
from hitset.iterative import _berge_stages, berge, hsdag, hst

from conftest import seeded_family, sets_of

ALGS = [berge, hst, hsdag]


@pytest.mark.parametrize("alg", ALGS)
class TestWorkedExamples:
    def test_cnf_example(self, alg, worked_example):
        assert alg(worked_example).sets == ((1, 2), (3,))

    def test_matching_counts(self, alg):
        for n in range(1, 6):
            assert len(alg(matching_graph(n))) == 2 ** n

    def test_empty_family(self, alg):
        assert alg(make_family([])).sets == ((),)

    def test_unhittable(self, alg):
        coll = alg(make_family([[0], []], universe_size=1))
        assert coll.sets == () and coll.unhittable

    def test_oracle_equivalence(self, alg):
        for seed in range(60):
            f = seeded_family(seed)
            assert sets_of(alg(f)) == sets_of(brute_force_mhs(f)), f.sets

    @pytest.mark.parametrize("cutoff", [1, 2, 3])
    def test_cutoff_filters_exactly(self, alg, cutoff):
        for seed in range(25):
            f = seeded_family(seed)
            full = sets_of(brute_force_mhs(f))
            got = alg(f, cutoff=cutoff)
            assert sets_of(got) == {s for s in full if len(s) <= cutoff}
            assert not got.complete


class TestBerge:
    def test_binding_cutoff_empties_result(self):
        f = make_family([[0, 1], [2]])
        assert berge(f, cutoff=1).sets == ()

    def test_prefix_invariant(self):
        # after processing sets s1..si the working collection answers the prefix
        for seed in range(15):
            f = seeded_family(seed)
            if f.has_empty_set():
                continue
            for i, stage in enumerate(_berge_stages(f.masks, None), start=1):
                prefix = make_family(f.sets[:i], universe_size=f.universe_size)
                expected = {s for s in brute_force_mhs(prefix).sets}
                from hitset.family import elems_of

                assert {elems_of(t) for t in stage} == expected

    def test_size_order_matches_input_order(self):
        for seed in range(20):
            f = seeded_family(seed)
            assert sets_of(berge(f)) == sets_of(berge(f, order="size"))

    def test_unknown_order_rejected(self, worked_example):
        with pytest.raises(ValidationError):
            berge(worked_example, order="sideways")


class TestHst:
    def test_nonbinding_cutoff(self):
        got = hst(matching_graph(2), cutoff=2)
        assert len(got) == 4


class TestHsdag:
    def test_subsumed_branch_pruned(self):
        assert hsdag(make_family([[0], [0, 1]])).sets == ((0,),)

    def test_duplicate_sets(self):
        f = make_family([[0, 1], [0, 1], [1, 2]])
        assert sets_of(hsdag(f)) == sets_of(brute_force_mhs(f))
