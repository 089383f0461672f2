import pytest

from hitset import brute_force_mhs
from hitset.errors import ValidationError
from hitset.generators import matching_graph, random_family


class TestMatchingGraph:
    def test_two_pairs(self):
        f = matching_graph(2)
        assert f.sets == ((0, 1), (2, 3))
        assert f.universe_size == 4

    def test_zero_pairs(self):
        f = matching_graph(0)
        assert f.sets == ()
        assert f.universe_size == 0

    def test_pairwise_disjoint(self):
        f = matching_graph(7)
        seen = set()
        for s in f.sets:
            assert not seen & set(s)
            seen |= set(s)

    def test_exponential_output(self):
        assert len(brute_force_mhs(matching_graph(10))) == 1024


class TestRandomFamily:
    def test_deterministic(self):
        a = random_family(6, 4, (2, 3), seed=1)
        b = random_family(6, 4, (2, 3), seed=1)
        assert a.sets == b.sets

    def test_different_seeds_differ(self):
        a = random_family(10, 6, (2, 5), seed=1)
        b = random_family(10, 6, (2, 5), seed=2)
        assert a.sets != b.sets

    def test_forced_full_set(self):
        f = random_family(3, 1, (3, 3), seed=99)
        assert f.sets == ((0, 1, 2),)

    def test_infeasible_range(self):
        with pytest.raises(ValidationError):
            random_family(5, 3, (6, 6), seed=0)
        with pytest.raises(ValidationError):
            random_family(5, 3, (0, 2), seed=0)
        with pytest.raises(ValidationError):
            random_family(5, 3, (3, 2), seed=0)

    def test_invariants(self):
        for seed in range(20):
            f = random_family(9, 5, (1, 9), seed=seed)
            assert f.universe_size == 9
            for s in f.sets:
                assert 1 <= len(s) <= 9
                assert list(s) == sorted(set(s))
                assert all(0 <= e < 9 for e in s)
