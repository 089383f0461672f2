import pytest

from hitset import brute_force_mhs, is_hitting, make_family
from hitset.divide import bool_algorithm, staccato
from hitset.errors import ValidationError
from hitset.generators import matching_graph

from conftest import seeded_family, sets_of


class TestBool:
    def test_worked_example(self, worked_example):
        assert bool_algorithm(worked_example).sets == ((1, 2), (3,))

    def test_common_element_case(self):
        assert bool_algorithm(make_family([[0, 1], [0, 2]])).sets == ((0,), (1, 2))

    def test_singleton_set_case(self):
        assert bool_algorithm(make_family([[0], [0, 1]])).sets == ((0,),)

    def test_empty_family(self):
        assert bool_algorithm(make_family([])).sets == ((),)

    def test_unhittable(self):
        coll = bool_algorithm(make_family([[], [0]], universe_size=1))
        assert coll.sets == () and coll.unhittable

    def test_oracle_equivalence(self):
        for seed in range(60):
            f = seeded_family(seed)
            assert sets_of(bool_algorithm(f)) == sets_of(brute_force_mhs(f)), f.sets

    @pytest.mark.parametrize("cutoff", [1, 2, 3, 5])
    def test_cutoff_filters_exactly(self, cutoff):
        for seed in range(25):
            f = seeded_family(seed)
            full = sets_of(brute_force_mhs(f))
            got = bool_algorithm(f, cutoff=cutoff)
            assert sets_of(got) == {s for s in full if len(s) <= cutoff}

    def test_recursion_depth_bounded_by_universe(self):
        # each split removes an element, so a wide instance stays tractable
        f = matching_graph(9)
        assert len(bool_algorithm(f)) == 2 ** 9


class TestStaccato:
    def test_untruncated_equals_oracle(self, worked_example):
        assert staccato(worked_example, rank_fraction=1).sets == ((1, 2), (3,))

    def test_max_results_takes_top_ranked(self, worked_example):
        # element 3 is in 2/2 sets, so it ranks first and is a hitting set
        coll = staccato(worked_example, max_results=1)
        assert coll.sets == ((3,),)
        assert not coll.complete

    def test_empty_family(self):
        assert staccato(make_family([])).sets == ((),)

    def test_invalid_rank_fraction(self, worked_example):
        for bad in (0, -0.5, 1.5):
            with pytest.raises(ValidationError):
                staccato(worked_example, rank_fraction=bad)

    def test_oracle_equivalence_at_full_rank(self):
        for seed in range(60):
            f = seeded_family(seed)
            assert sets_of(staccato(f, rank_fraction=1)) == sets_of(brute_force_mhs(f))

    def test_truncated_output_is_sound(self):
        # anything emitted under truncation still hits every set
        for seed in range(30):
            f = seeded_family(seed)
            if f.has_empty_set():
                continue
            for kwargs in ({"rank_fraction": 0.5}, {"max_results": 2},
                           {"rank_fraction": 0.34, "max_results": 3}):
                coll = staccato(f, **kwargs)
                assert all(is_hitting(f, s) for s in coll.sets)

    def test_truncated_is_subset_of_full(self):
        for seed in range(30):
            f = seeded_family(seed)
            full = sets_of(staccato(f, rank_fraction=1))
            got = staccato(f, max_results=3)
            assert sets_of(got) <= full or all(is_hitting(f, s) for s in got.sets)

    @pytest.mark.parametrize("cutoff", [1, 2, 3])
    def test_cutoff_filters_exactly(self, cutoff):
        for seed in range(25):
            f = seeded_family(seed)
            full = sets_of(brute_force_mhs(f))
            got = staccato(f, cutoff=cutoff)
            assert sets_of(got) == {s for s in full if len(s) <= cutoff}

    def test_rank_truncation_flags_incomplete(self):
        f = make_family([[0, 1], [2, 3], [1, 2]])
        coll = staccato(f, rank_fraction=0.3)
        assert not coll.complete
