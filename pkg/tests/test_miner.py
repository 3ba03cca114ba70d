import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from ballspaces import BallSpace, GroundSet, InputError
from ballspaces.hierarchy import classify
from ballspaces.miner import (
    ROW_NAMES,
    canonical_form,
    enumerate_spaces,
    family_count,
    find_witness,
    is_isomorphic,
    oracle_agreement,
    random_spaces,
    verify_equivalence_table,
    verify_implications,
    verify_implications_sample,
)
from helpers import as_sets


def spaces(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.sets(st.integers(1, (1 << n) - 1), min_size=1, max_size=8).map(
            lambda s: BallSpace(GroundSet.range(n), tuple(s))
        )
    )


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 7), (3, 127)])
    def test_counts(self, n, count):
        assert sum(1 for _ in enumerate_spaces(n)) == count == family_count(n)

    def test_n3_matches_oracle_families(self):
        got = {as_sets(s) for s in enumerate_spaces(3)}
        assert got == set(oracle.all_families("123"))

    def test_canonical_counts(self):
        assert [sum(1 for _ in enumerate_spaces(n, True)) for n in (1, 2, 3)] == [1, 5, 39]

    def test_canonical_representatives_cover_orbits(self):
        reps = list(enumerate_spaces(3, True))
        for s in enumerate_spaces(3):
            assert sum(is_isomorphic(s, r) for r in reps) == 1

    def test_n_range(self):
        with pytest.raises(InputError):
            list(enumerate_spaces(5))
        with pytest.raises(InputError):
            list(enumerate_spaces(0))


class TestCanonicalForm:
    @settings(max_examples=200)
    @given(spaces(), st.randoms(use_true_random=False))
    def test_invariant_and_idempotent(self, space, rnd):
        perm = list(range(space.n))
        rnd.shuffle(perm)
        moved = BallSpace(space.ground, tuple(sum(1 << perm[i] for i in range(space.n) if b >> i & 1) for b in space.balls))
        c = canonical_form(space)
        assert canonical_form(moved) == c
        assert canonical_form(c) == c
        assert is_isomorphic(space, moved)

    def test_isomorphism_matches_oracle(self):
        pool = list(enumerate_spaces(3))[::9]
        for a in pool:
            for b in pool:
                assert is_isomorphic(a, b) == oracle.isomorphic("123", as_sets(a), as_sets(b))


class TestImplications:
    @pytest.mark.parametrize("n,spaces_", [(2, 7), (3, 127)])
    def test_exhaustive(self, n, spaces_):
        summary = verify_implications(n)
        assert summary.spaces == spaces_ and summary.violations == 0
        assert summary.format().startswith(f"{spaces_} spaces, 0 violations")

    def test_counts_match_oracle(self):
        summary = verify_implications(3)
        for name in ("S2c", "S4c", "S5c"):
            expected = sum(oracle.hierarchy(f)[name] for f in oracle.all_families("123"))
            assert summary.counts[name] == expected

    def test_weights_cover_all_families(self):
        summary = verify_implications(3, canonical_only=True)
        assert summary.spaces == 39 and summary.families == 127

    def test_jobs_identical(self):
        one = verify_implications(3, jobs=1).to_dict()
        two = verify_implications(3, jobs=2).to_dict()
        assert one == two

    def test_sample(self):
        summary = verify_implications_sample(5, 200, seed=1)
        assert summary.spaces == 200 and summary.violations == 0


class TestEquivalenceTable:
    def test_n3(self):
        summary = verify_equivalence_table(3)
        assert summary.violations == 0
        assert [r.name for r in summary.rows] == list(ROW_NAMES)
        rows = {r.name: r.matching for r in summary.rows}
        assert rows["no condition"] == 127
        closed = sum(oracle.int_closed(f) for f in oracle.all_families("123"))
        tree = sum(oracle.tree_like(f) for f in oracle.all_families("123"))
        assert rows["intersection closed"] == closed
        assert rows["tree-like"] == tree

    def test_jobs_identical(self):
        assert verify_equivalence_table(3, jobs=1).to_dict() == verify_equivalence_table(3, jobs=2).to_dict()


class TestWitness:
    def test_s1c_s2c(self, I1):
        w = find_witness("S1c", "S2c", 3)
        assert is_isomorphic(w.space, I1)
        assert w.report.values == classify(w.space).values
        assert w.report["S1c"] and not w.report["S2c"]

    def test_s3c_s4c_n4(self, W4):
        w = find_witness("S3c", "S4c", 4)
        assert is_isomorphic(w.space, W4)

    def test_s4c_s5c(self):
        assert find_witness("S4c", "S5c", 3) is None
        w = find_witness("S4c", "S5c", 4)
        assert w.report["S4c"] and not w.report["S5c"]
        h = oracle.hierarchy(as_sets(w.space))
        assert h["S4c"] and not h["S5c"]

    def test_distinct_properties(self):
        with pytest.raises(InputError):
            find_witness("S2c", "s2c", 3)
        with pytest.raises(ValueError):
            find_witness("S2c", "bogus", 3)

    def test_impossible_pairs_exhaust(self):
        assert find_witness("S2c", "S1c", 3) is None


def test_random_spaces_seeded():
    a = [s.balls for s in random_spaces(4, 20, seed=5)]
    b = [s.balls for s in random_spaces(4, 20, seed=5)]
    assert a == b
    assert all(len(s) >= 1 for s in random_spaces(4, 20, seed=5))


def test_oracle_agreement_sample():
    rng = random.Random(0)
    pool = list(random_spaces(4, 500, seed=rng.randint(0, 99)))
    summary = oracle_agreement(pool)
    assert summary.checked == 500 and summary.disagreements == 0
