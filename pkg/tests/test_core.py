from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from ballspaces import (
    BallSpace,
    GroundSet,
    InputError,
    ResourceLimitError,
    SystemKind,
    balls_within,
    intersection,
    intersection_semilattice,
    is_system,
)
from ballspaces.core import (
    BxAssignment,
    canonical_key,
    intersection_semilattice_bruteforce,
    is_centered_literal,
    nest_intersections,
)
from ballspaces.miner import enumerate_spaces
from helpers import as_sets, labels


def families(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.sets(st.integers(1, (1 << n) - 1), min_size=1, max_size=12).map(
            lambda s: BallSpace(GroundSet.range(n), tuple(s))
        )
    )


class TestGroundSet:
    def test_labels_and_masks(self):
        g = GroundSet(("a", "b", "c"))
        assert g.subset(["a", "c"]) == 0b101
        assert g.labels_of(0b110) == ("b", "c")
        assert g.format(0b011) == "{a,b}"
        assert g.full == 0b111

    def test_duplicate_label(self):
        with pytest.raises(InputError, match="duplicate"):
            GroundSet(("a", "a"))

    def test_size_bound(self):
        GroundSet.range(64)
        with pytest.raises(ResourceLimitError):
            GroundSet.range(65)

    def test_empty(self):
        with pytest.raises(InputError):
            GroundSet(())

    def test_unknown_label(self):
        with pytest.raises(InputError, match="unknown label"):
            GroundSet.range(3).subset(["9"])


class TestBallSpace:
    def test_canonical_order_and_dedup(self):
        s = BallSpace(GroundSet.range(3), (7, 3, 1, 3))
        assert s.balls == (1, 3, 7)
        assert BallSpace(GroundSet.range(3), (1, 3, 7)) == s

    def test_rejects_empty_ball(self):
        with pytest.raises(InputError):
            BallSpace(GroundSet.range(2), (0, 1))

    def test_rejects_empty_family(self):
        with pytest.raises(InputError):
            BallSpace(GroundSet.range(2), ())

    def test_rejects_outside_mask(self):
        with pytest.raises(InputError):
            BallSpace(GroundSet.range(2), (4,))

    @given(families())
    def test_sorted_by_popcount_then_mask(self, space):
        assert list(space.balls) == sorted(space.balls, key=canonical_key)
        assert len(set(space.balls)) == len(space.balls)


class TestIntersection:
    def test_examples(self):
        g = GroundSet.range(3)
        assert intersection([g.subset("12"), g.subset("23")]) == g.subset("2")
        assert intersection([g.subset("123")]) == g.subset("123")
        assert intersection([g.subset("1"), g.subset("2")]) == 0

    def test_empty_collection(self):
        with pytest.raises(InputError, match="empty collection"):
            intersection([])


class TestIsSystem:
    def test_examples(self, I1, I2):
        assert is_system(I1, I1.balls, SystemKind.NEST) is False
        assert is_system(I1, I1.balls, SystemKind.CENTERED) is True
        assert is_system(I2, I2.balls, SystemKind.NEST) is True

    def test_examples_against_oracle(self, I1, I2):
        assert oracle.is_nest(as_sets(I1)) is False
        assert oracle.is_centered(as_sets(I1)) is True
        assert oracle.is_nest(as_sets(I2)) is True

    def test_errors(self, I1):
        with pytest.raises(InputError):
            is_system(I1, [], SystemKind.NEST)
        with pytest.raises(InputError):
            is_system(I1, [0b001], SystemKind.NEST)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_nest_directed_centered_chain(self, n):
        for space in enumerate_spaces(n):
            for k in range(1, len(space) + 1):
                for coll in combinations(space.balls, k):
                    nest = is_system(space, coll, SystemKind.NEST)
                    directed = is_system(space, coll, SystemKind.DIRECTED)
                    centered = is_system(space, coll, SystemKind.CENTERED)
                    assert not nest or directed
                    assert not directed or centered

    @settings(max_examples=200)
    @given(families(4))
    def test_centered_shortcut_matches_literal(self, space):
        balls = space.balls[:12]
        for k in range(1, min(len(balls), 4) + 1):
            for coll in combinations(balls, k):
                assert is_system(space, coll, SystemKind.CENTERED) == is_centered_literal(coll)

    def test_directed_matches_oracle(self):
        for space in enumerate_spaces(3):
            for k in range(1, len(space) + 1):
                for coll in combinations(space.balls, k):
                    as_family = [labels(space, b) for b in coll]
                    assert is_system(space, coll, SystemKind.DIRECTED) == oracle.is_directed(as_family)


class TestSemilattice:
    def test_examples(self, I1, I2):
        g = I1.ground
        assert set(intersection_semilattice(I1)) == {g.subset("12"), g.subset("23"), g.subset("2")}
        assert set(intersection_semilattice(I2)) == set(I2.balls)
        y = BallSpace.from_labels("12", [["1"]])
        assert intersection_semilattice(y) == y.balls

    def test_examples_against_oracle(self, I1, I2):
        assert oracle.semilattice(as_sets(I1)) == oracle.family("12", "23", "2")
        assert oracle.semilattice(as_sets(I2)) == as_sets(I2)

    @given(families(4))
    def test_closed_and_extensive(self, space):
        sl = set(intersection_semilattice(space))
        assert set(space.balls) <= sl
        for a in sl:
            for b in sl:
                assert not (a & b) or (a & b) in sl

    @given(families(4))
    def test_matches_bruteforce(self, space):
        if len(space) <= 12:
            assert intersection_semilattice(space) == intersection_semilattice_bruteforce(space)

    def test_matches_oracle_n3(self):
        for space in enumerate_spaces(3):
            got = frozenset(labels(space, m) for m in intersection_semilattice(space))
            assert got == oracle.semilattice(as_sets(space))


class TestBallsWithin:
    def test_examples(self, I1, I2, W4):
        g = I2.ground
        r = balls_within(I2, g.subset("12"))
        assert set(r.all) == {g.subset("1"), g.subset("12")}
        assert r.maximal == (g.subset("12"),)
        assert r.largest == g.subset("12")

        r = balls_within(I1, I1.ground.subset("2"))
        assert r == ((), (), None)

        g = W4.ground
        r = balls_within(W4, g.subset("12"))
        assert set(r.all) == {g.subset("1"), g.subset("2")}
        assert set(r.maximal) == {g.subset("1"), g.subset("2")}
        assert r.largest is None

    def test_empty_region(self, I1):
        assert balls_within(I1, 0) == ((), (), None)

    @given(families(4), st.integers(0, 15))
    def test_largest_is_unique_maximal(self, space, region):
        region &= space.full
        r = balls_within(space, region)
        if r.largest is not None:
            assert r.maximal == (r.largest,)
            assert all(b & ~r.largest == 0 for b in r.all)


def test_nest_intersections_are_balls():
    for space in enumerate_spaces(3):
        assert set(nest_intersections(space)) == set(space.balls)


def test_bx_assignment_validation():
    g = GroundSet.range(2)
    with pytest.raises(InputError):
        BxAssignment(g, (1,))
    with pytest.raises(InputError):
        BxAssignment(g, (1, 0))
    a = BxAssignment(g, (1, 3))
    assert a.family() == (1, 3)
    assert a.covers(BallSpace(g, (1, 3)))
