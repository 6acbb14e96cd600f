"""Labeled set-partition combinatorics: arcs, crossings, transport, counting."""

import random
from functools import reduce

import pytest

from superchar.qcoeff import LaurentPoly, laurent_eval
from superchar.setpart import (
    Arc,
    LabeledSetPartition,
    PartitionIndex,
    arcs_of_parts,
    count_sn,
    count_sn_poly,
    enumerate_compatible,
    enumerate_labeled,
    set_partitions,
    union_K,
)

BELL = (1, 1, 2, 5, 15, 52, 203, 877, 4140)

# the running nine-vertex example: parts {1,5,7}, {2,3}, {4}, {6,8,9}
NINE = LabeledSetPartition.from_text("n=9; 1-5:1, 5-7:2, 2-3:1, 6-8:1, 8-9:2")


def random_labeled(rng, universe, p):
    """A random labeled partition on a random subset of ``universe``."""
    verts = sorted(rng.sample(universe, rng.randrange(len(universe) + 1)))
    rng.shuffle(verts)
    parts, i = [], 0
    while i < len(verts):
        size = rng.randrange(1, len(verts) - i + 1)
        parts.append(sorted(verts[i : i + size]))
        i += size
    arcs = [
        (u, v, rng.randrange(1, p)) for part in parts for u, v in arcs_of_parts([part])
    ]
    return LabeledSetPartition(verts, arcs)


class TestValidation:
    def test_rejected_arc_shapes(self):
        with pytest.raises(ValueError):
            LabeledSetPartition(range(1, 3), [Arc(2, 1, 1)])
        with pytest.raises(ValueError):
            LabeledSetPartition(range(1, 3), [Arc(1, 1, 1)])
        with pytest.raises(ValueError):
            LabeledSetPartition(range(1, 3), [Arc(1, 2, 0)])
        with pytest.raises(ValueError):
            LabeledSetPartition(range(1, 3), [Arc(1, 4, 1)])

    def test_each_vertex_carries_at_most_one_arc_end(self):
        with pytest.raises(ValueError):
            LabeledSetPartition(range(1, 5), [Arc(1, 3, 1), Arc(1, 4, 1)])
        with pytest.raises(ValueError):
            LabeledSetPartition(range(1, 5), [Arc(1, 4, 1), Arc(3, 4, 1)])
        # a vertex may close one arc and open another (chains)
        LabeledSetPartition(range(1, 4), [Arc(1, 2, 1), Arc(2, 3, 1)])

    def test_random_arc_sets_accepted_iff_degrees_bounded(self):
        rng = random.Random(5)
        pairs = [(i, j) for i in range(1, 7) for j in range(i + 1, 7)]
        for _ in range(300):
            chosen = rng.sample(pairs, rng.randrange(5))
            lefts = [i for i, _ in chosen]
            rights = [j for _, j in chosen]
            valid = len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)
            try:
                LabeledSetPartition(range(1, 7), [Arc(i, j, 1) for i, j in chosen])
            except ValueError:
                assert not valid
            else:
                assert valid


class TestPartsAndCrossings:
    def test_parts_are_the_arc_chains(self):
        assert NINE.parts() == ((1, 5, 7), (2, 3), (4,), (6, 8, 9))
        assert LabeledSetPartition(range(1, 4), []).parts() == ((1,), (2,), (3,))
        assert LabeledSetPartition(range(1, 3), [Arc(1, 2, 1)]).parts() == ((1, 2),)

    def test_parts_to_arcs_reconstruction(self):
        rng = random.Random(6)
        for _ in range(200):
            lam = random_labeled(rng, range(1, 10), 3)
            rebuilt = arcs_of_parts(lam.parts())
            assert set(rebuilt) == {(a.left, a.right) for a in lam.arcs}

    def test_crossings(self):
        (pair,) = NINE.crossing_pairs()
        assert (pair[0].left, pair[0].right) == (5, 7)
        assert (pair[1].left, pair[1].right) == (6, 8)
        assert NINE.num_crossings() == 1
        assert LabeledSetPartition(range(1, 5), [Arc(1, 3, 1)]).num_crossings() == 0
        two = LabeledSetPartition(range(1, 5), [Arc(1, 3, 1), Arc(2, 4, 1)])
        assert two.num_crossings() == 1

    def test_crossings_within_parts_of_an_index(self):
        lam = LabeledSetPartition(range(1, 5), [Arc(1, 3, 1), Arc(2, 4, 1)])
        assert lam.crossings_within(PartitionIndex.full(4)) == lam.num_crossings()
        assert lam.crossings_within(PartitionIndex(4, [[1, 3], [2, 4]])) == 0
        with pytest.raises(ValueError):
            lam.crossings_within(PartitionIndex(4, [[1, 2], [3, 4]]))


class TestTransport:
    def test_extend(self):
        lam = LabeledSetPartition((2, 3, 5, 7), [Arc(2, 5, 1), Arc(5, 7, 2)])
        assert lam.extend(lam.support) == lam
        big = lam.extend(range(1, 8))
        assert big.parts() == ((1,), (2, 5, 7), (3,), (4,), (6,))
        with pytest.raises(ValueError):
            lam.extend({2, 3})

    def test_standardize(self):
        lam = LabeledSetPartition((2, 3, 5, 7), [Arc(2, 5, 3)])
        std, mapping = lam.standardize()
        assert std.to_text() == "n=4; 1-3:3"
        assert mapping == {2: 1, 3: 2, 5: 3, 7: 4}
        already = LabeledSetPartition(range(1, 5), [Arc(1, 3, 1)])
        assert already.standardize()[0] == already

    def test_standardize_preserves_crossings(self):
        rng = random.Random(7)
        for _ in range(300):
            lam = random_labeled(rng, range(1, 13), 5)
            assert lam.standardize()[0].num_crossings() == lam.num_crossings()

    def test_extend_then_standardize_is_identity_on_initial_segments(self):
        rng = random.Random(8)
        for _ in range(100):
            lam = random_labeled(rng, range(1, 8), 3).standardize()[0]
            n = lam.n()
            assert lam.extend(range(1, n + 1)).standardize()[0] == lam

    def test_reflect(self):
        assert LabeledSetPartition(range(1, 4), [Arc(1, 2, 2)]).reflect().to_text() == "n=3; 2-3:2"
        assert NINE.reflect().num_crossings() == 1
        rng = random.Random(9)
        for _ in range(300):
            lam = random_labeled(rng, range(1, 10), 3).standardize()[0]
            assert lam.reflect().reflect() == lam


class TestUnionK:
    LAM = LabeledSetPartition(range(1, 4), [Arc(2, 3, 1)])
    MU = LabeledSetPartition(range(1, 5), [Arc(1, 2, 2), Arc(2, 4, 3)])

    def test_two_glued_examples(self):
        K = PartitionIndex(7, [[1, 4, 6], [2, 3, 5, 7]])
        assert union_K(self.LAM, self.MU, K).to_text() == "n=7; 2-3:2, 3-7:3, 4-6:1"
        K = PartitionIndex(7, [[2, 3, 7], [1, 4, 5, 6]])
        assert union_K(self.LAM, self.MU, K).to_text() == "n=7; 1-4:2, 3-7:1, 4-6:3"

    def test_empty_factor_leaves_the_other_unchanged(self):
        empty = LabeledSetPartition((), [])
        K = PartitionIndex(4, [range(1, 5)])
        assert union_K(empty, self.MU, K) == self.MU
        assert union_K(self.MU, empty, K) == self.MU

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            union_K(self.LAM, self.MU, PartitionIndex(7, [[1, 2], [3, 4, 5, 6, 7]]))

    def test_gluing_never_loses_crossings(self):
        # exhaustive at q=2 for all two-block shapes with m+n <= 7
        import itertools

        for total in range(2, 8):
            for m in range(1, total):
                n = total - m
                for block1 in itertools.combinations(range(1, total + 1), m):
                    block2 = tuple(v for v in range(1, total + 1) if v not in block1)
                    K = PartitionIndex(total, [block1, block2])
                    for mp in set_partitions(range(1, m + 1)):
                        lam = LabeledSetPartition(range(1, m + 1), [
                            (u, v, 1) for u, v in arcs_of_parts(mp)
                        ])
                        for np_ in set_partitions(range(1, n + 1)):
                            mu = LabeledSetPartition(range(1, n + 1), [
                                (u, v, 1) for u, v in arcs_of_parts(np_)
                            ])
                            glued = union_K(lam, mu, K)
                            assert (
                                glued.num_crossings()
                                >= lam.num_crossings() + mu.num_crossings()
                            )


class TestEnumerationAndCounting:
    def test_counts_match_enumeration(self):
        for p in (2, 3, 5):
            for n in range(0, 7):
                assert count_sn(n, p) == sum(
                    1 for _ in enumerate_labeled(range(1, n + 1), p)
                )

    def test_enumeration_is_deterministic_and_duplicate_free(self):
        seen = [lam.to_text() for lam in enumerate_labeled(range(1, 5), 3)]
        again = [lam.to_text() for lam in enumerate_labeled(range(1, 5), 3)]
        assert seen == again
        assert len(seen) == len(set(seen))

    def test_bell_numbers_at_q_two(self):
        for n, b in enumerate(BELL[:7]):
            assert count_sn(n, 2) == b
        assert count_sn(0, 7) == 1

    def test_counting_polynomial(self):
        # s_3(q) = 1 + 3(q-1) + (q-1)^2 = q^2 + q - 1
        assert count_sn_poly(3) == LaurentPoly({2: 1, 1: 1, 0: -1})
        for p in (2, 3, 5):
            for n in range(0, 8):
                assert laurent_eval(count_sn_poly(n), p) == count_sn(n, p)

    def test_set_partition_stream(self):
        for n in range(0, 8):
            assert sum(1 for _ in set_partitions(range(1, n + 1))) == BELL[n]

    def test_compatible_enumeration_is_per_part(self):
        K = PartitionIndex(5, [[1, 2, 3], [4, 5]])
        for p in (2, 3):
            want = count_sn(3, p) * count_sn(2, p)
            got = list(enumerate_compatible(K, p))
            assert len(got) == want
            for mu in got:
                for arc in mu.arcs:
                    assert K.same_part(arc.left, arc.right)


class TestPartitionIndex:
    def test_text_round_trip(self):
        text = "{1,5,7|2,3|4|6,8,9}"
        K = PartitionIndex.from_text(text)
        assert K.to_text() == text
        assert K.n == 9
        assert PartitionIndex.from_text("{}").n == 0

    def test_interval_shorthand(self):
        K = PartitionIndex.from_text("[2,5]", 7)
        assert K.grouping() == PartitionIndex(7, [[1], [2, 3, 4, 5], [6], [7]]).grouping()
        with pytest.raises(ValueError):
            PartitionIndex.from_text("[2,5]")

    def test_cover_must_be_exact(self):
        with pytest.raises(ValueError):
            PartitionIndex(4, [[1, 2], [2, 3, 4]])
        with pytest.raises(ValueError):
            PartitionIndex(4, [[1, 2], [4]])
        with pytest.raises(ValueError):
            PartitionIndex(3, [[1, 2, 3], []])

    def test_refines(self):
        fine = PartitionIndex(4, [[1], [2], [3], [4]])
        mid = PartitionIndex(4, [[1, 3], [2], [4]])
        coarse = PartitionIndex(4, [[1, 2, 3], [4]])
        assert fine.refines(mid) and fine.refines(coarse)
        assert mid.refines(coarse) and mid.refines(PartitionIndex.full(4))
        assert not coarse.refines(mid)
        assert not PartitionIndex(4, [[1, 2], [3, 4]]).refines(
            PartitionIndex(4, [[1, 3], [2, 4]])
        )

    def test_reflect_and_lookup(self):
        K = PartitionIndex(5, [[1, 4], [2, 3], [5]])
        assert K.reflect().grouping() == PartitionIndex(5, [[1], [2, 5], [3, 4]]).grouping()
        assert K.same_part(1, 4) and not K.same_part(1, 2)
        assert K.induced_on({2, 3, 4}) == [(4,), (2, 3)]
        assert PartitionIndex.full(3).is_full()
        assert not PartitionIndex.discrete(3).is_full()


def test_arcs_of_parts():
    assert arcs_of_parts(((1, 5, 7), (2, 3), (4,))) == ((1, 5), (2, 3), (5, 7))
    assert arcs_of_parts(()) == ()
