"""The supercharacter calculus over a pattern group: values, branching, products."""

import itertools
import random
from fractions import Fraction

import pytest

from superchar.qcoeff import Cyclotomic, LaurentPoly, laurent_eval
from superchar.ring import (
    CharCombo,
    char_value,
    char_value_in,
    chi_to_kappa,
    combo_value,
    degree,
    degree_in,
    inner_product,
    kappa_to_chi,
    reflect_combo,
    restrict,
    sinf,
    star_K,
    superinduce,
    superinduce_trivial_twoblock,
    superinduce_via_permchar,
    tensor,
)
from superchar.ring import _parts_are_intervals_within
from superchar.setpart import (
    Arc,
    LabeledSetPartition,
    PartitionIndex,
    enumerate_compatible,
    enumerate_labeled,
    set_partitions,
    union_K,
)


def lsp(n, arcs):
    return LabeledSetPartition(range(1, n + 1), [Arc(*a) for a in arcs])


class TestDegree:
    def test_spot_values(self):
        assert degree(lsp(3, [])) == LaurentPoly.one()
        assert degree(lsp(7, [(1, 7, 1)])) == LaurentPoly({5: 1})
        # nested arcs multiply: one vertex under 1-4 not counting... each arc
        # contributes q^(right-left-1) regardless of nesting
        assert degree(lsp(4, [(1, 4, 1), (2, 3, 1)])) == LaurentPoly({2: 1})
        nine = LabeledSetPartition.from_text("n=9; 1-5:1, 5-7:2, 2-3:1, 6-8:1, 8-9:2")
        assert degree(nine) == LaurentPoly({5: 1})

    def test_identity_superclass_value_is_the_degree(self):
        for p in (2, 3):
            for lam in enumerate_labeled(range(1, 5), p):
                empty = lsp(4, [])
                want = Cyclotomic.from_rational(p, laurent_eval(degree(lam), p))
                assert char_value(lam, empty, p) == want

    def test_linear_iff_every_arc_is_adjacent(self):
        for lam in enumerate_labeled(range(1, 6), 2):
            linear = degree(lam) == LaurentPoly.one()
            assert linear == all(a.right == a.left + 1 for a in lam.arcs)

    def test_degree_inside_a_subgroup_skips_gap_vertices(self):
        K = PartitionIndex(3, [[1, 3], [2]])
        lam = lsp(3, [(1, 3, 1)])
        assert degree_in(lam, K) == LaurentPoly.one()
        assert degree(lam) == LaurentPoly({1: 1})


class TestCharValue:
    def test_single_arc_on_its_own_superclass(self):
        # n=3: value is q * zeta^(a*b), no crossing correction
        for p in (2, 3, 5):
            for a in range(1, p):
                for b in range(1, p):
                    got = char_value(lsp(3, [(1, 3, a)]), lsp(3, [(1, 3, b)]), p)
                    want = Cyclotomic.from_rational(p, p) * Cyclotomic.zeta_power(
                        p, (a * b) % p
                    )
                    assert got == want

    def test_vanishing_when_a_shorter_arc_nests_strictly(self):
        for p in (2, 3):
            got = char_value(lsp(3, [(1, 3, 1)]), lsp(3, [(1, 2, 1)]), p)
            assert got == Cyclotomic.zero(p)

    def test_support_mismatch_rejected(self):
        with pytest.raises(ValueError):
            char_value(lsp(3, []), lsp(4, []), 2)

    def test_value_inside_subgroup_standardizes_each_part(self):
        K = PartitionIndex(3, [[1, 3], [2]])
        lam = lsp(3, [(1, 3, 1)])
        # inside U_K the part {1,3} is a two-vertex group: value is zeta^1 = -1
        assert char_value_in(lam, lam, K, 2) == -Cyclotomic.one(2)


class TestRestrict:
    def test_pointwise_against_direct_evaluation(self):
        # small sweep; the full one is in the acceptance suite
        for p in (2, 3):
            for lam in enumerate_labeled(range(1, 4), p):
                for parts in set_partitions(range(1, 4)):
                    K = PartitionIndex(3, parts)
                    res = restrict(lam, K, p)
                    for mu in enumerate_compatible(K, p):
                        assert combo_value(res, mu, p) == char_value(lam, mu, p)

    def test_reflection_equivariance(self):
        for n in range(2, 6):
            for lam in enumerate_labeled(range(1, n + 1), 2):
                for parts in set_partitions(range(1, n + 1)):
                    K = PartitionIndex(n, parts)
                    mirrored = restrict(lam.reflect(), K.reflect(), 2)
                    assert mirrored == reflect_combo(restrict(lam, K, 2))


class TestTensor:
    def test_values_multiply_pointwise(self):
        for p in (2, 3):
            full = PartitionIndex.full(3)
            chars = list(enumerate_labeled(range(1, 4), p))
            classes = list(enumerate_compatible(full, p))
            for lam in chars:
                for mu in chars:
                    prod = tensor(CharCombo.of(lam, full), CharCombo.of(mu, full), p)
                    for nu in classes:
                        assert combo_value(prod, nu, p) == char_value(
                            lam, nu, p
                        ) * char_value(mu, nu, p)

    def test_commutes_on_random_pairs(self):
        rng = random.Random(21)
        pool = list(enumerate_labeled(range(1, 7), 2))
        full = PartitionIndex.full(6)
        for _ in range(40):
            lam, mu = rng.choice(pool), rng.choice(pool)
            x, y = CharCombo.of(lam, full), CharCombo.of(mu, full)
            assert tensor(x, y, 2) == tensor(y, x, 2)

    def test_square_of_a_long_arc_at_p_two(self):
        # chi^{1-4} twice: the label sum collapses and every shorter
        # constituent shows up once (checked pointwise by the exhaustive
        # value sweep above and frozen here as a golden)
        x = CharCombo.of(lsp(4, [(1, 4, 1)]))
        got = tensor(x, x, 2)
        want_terms = [
            [],
            [(1, 2, 1)],
            [(1, 2, 1), (2, 4, 1)],
            [(1, 2, 1), (3, 4, 1)],
            [(1, 3, 1)],
            [(1, 3, 1), (2, 4, 1)],
            [(1, 3, 1), (3, 4, 1)],
            [(2, 4, 1)],
            [(3, 4, 1)],
        ]
        want = CharCombo(
            PartitionIndex.full(4), [(lsp(4, arcs), LaurentPoly.one()) for arcs in want_terms]
        )
        assert got == want


class TestSuperinduce:
    def test_frobenius_reciprocity(self):
        for p in (2, 3):
            for n in range(2, 5):
                full = PartitionIndex.full(n)
                for parts in set_partitions(range(1, n + 1)):
                    K = PartitionIndex(n, parts)
                    for mu in enumerate_compatible(K, p):
                        lifted = superinduce(mu, K, p)
                        x_mu = CharCombo.of(mu, K)
                        for lam in enumerate_labeled(range(1, n + 1), p):
                            lhs = inner_product(lifted, CharCombo.of(lam, full))
                            rhs = inner_product(x_mu, restrict(lam, K, p))
                            assert lhs == rhs

    def test_trivial_character_from_an_atom(self):
        got = superinduce(lsp(3, []), PartitionIndex(3, [[1], [2, 3]]), 2)
        want = CharCombo(
            PartitionIndex.full(3),
            [
                (lsp(3, []), LaurentPoly.one()),
                (lsp(3, [(1, 2, 1)]), LaurentPoly.one()),
                (lsp(3, [(1, 3, 1)]), LaurentPoly.one()),
            ],
        )
        assert got == want

    def test_factorized_route_agrees_on_interval_indices(self):
        for p, max_n in ((2, 4), (3, 3)):
            for n in range(2, max_n + 1):
                full = PartitionIndex.full(n)
                for parts in set_partitions(range(1, n + 1)):
                    K = PartitionIndex(n, parts)
                    if not _parts_are_intervals_within(K, full):
                        continue
                    for mu in enumerate_compatible(K, p):
                        a = superinduce(mu, K, p)
                        b = superinduce_via_permchar(mu, K, p)
                        for lam in set(a.terms) | set(b.terms):
                            assert a.coeff(lam).eval_at(Fraction(p)) == b.coeff(
                                lam
                            ).eval_at(Fraction(p))

    def test_factorized_route_refuses_gapped_parts(self):
        # with a gap in a part the factorization is not an identity (the
        # enumeration oracle exhibits value-level failures), so the route
        # refuses rather than answer wrongly
        K = PartitionIndex(4, [[1, 4], [2, 3]])
        with pytest.raises(ValueError):
            superinduce_via_permchar(lsp(4, [(1, 4, 1)]), K, 2)

    def test_empty_character_reduces_to_the_closed_form(self):
        for p in (2, 3):
            for n in range(2, 5):
                for k in range(1, n):
                    K = PartitionIndex(n, [range(1, k + 1), range(k + 1, n + 1)])
                    got = superinduce_via_permchar(lsp(n, []), K, p)
                    assert got == superinduce_trivial_twoblock(k, n, p)

    def test_closed_form_degree_sum_is_a_q_power(self):
        # evaluating the two-block trivial superinduction at the identity
        # must give q^(k(n-k)); the label sums make the coefficients
        # p-specific, so compare at q=p
        for p in (2, 3):
            for n in range(2, 7):
                for k in range(1, n):
                    total = Fraction(0)
                    for lam, coeff in superinduce_trivial_twoblock(k, n, p).terms.items():
                        total += (coeff * degree(lam)).eval_at(Fraction(p))
                    assert total == Fraction(p ** (k * (n - k)))


class TestStarProduct:
    def test_smallest_glued_square(self):
        e1 = LabeledSetPartition((1,), [])
        K = PartitionIndex(2, [[1], [2]])
        got = star_K(e1, e1, K, 2)
        want = CharCombo(
            PartitionIndex.full(2),
            [(lsp(2, []), LaurentPoly.one()), (lsp(2, [(1, 2, 1)]), LaurentPoly.one())],
        )
        assert got == want
        got3 = star_K(e1, e1, K, 3)
        assert set(got3.terms) == {lsp(2, []), lsp(2, [(1, 2, 1)]), lsp(2, [(1, 2, 2)])}

    def test_glued_character_is_a_nonzero_constituent(self):
        p = 2
        for total in range(2, 5):
            for m in range(1, total):
                n = total - m
                for block1 in itertools.combinations(range(1, total + 1), m):
                    block2 = tuple(v for v in range(1, total + 1) if v not in block1)
                    K = PartitionIndex(total, [block1, block2])
                    for lam in enumerate_labeled(range(1, m + 1), p):
                        for mu in enumerate_labeled(range(1, n + 1), p):
                            prod = star_K(lam, mu, K, p)
                            glued = union_K(lam, mu, K)
                            assert prod.coeff(glued) != LaurentPoly.zero(), (
                                lam.to_text(),
                                mu.to_text(),
                                K.to_text(),
                            )

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            star_K(
                lsp(2, []),
                lsp(2, []),
                PartitionIndex(4, [[1], [2, 3, 4]]),
                2,
            )


class TestKappaBasis:
    def test_trivial_character_has_all_ones_values(self):
        for p in (2, 3):
            x = CharCombo.one(PartitionIndex.full(3))
            values = chi_to_kappa(x, p)
            assert len(values) == sum(1 for _ in enumerate_labeled(range(1, 4), p))
            assert all(v == Cyclotomic.one(p) for v in values.values())

    def test_two_by_two_solve(self):
        arc = lsp(2, [(1, 2, 1)])
        triv = lsp(2, [])
        values = {arc: Cyclotomic.one(2), triv: Cyclotomic.zero(2)}
        out = kappa_to_chi(values, 2)
        assert out == {
            triv: Cyclotomic.from_rational(2, Fraction(1, 2)),
            arc: Cyclotomic.from_rational(2, Fraction(-1, 2)),
        }

    def test_round_trips(self):
        for p in (2, 3):
            for n in (2, 3):
                full = PartitionIndex.full(n)
                chars = list(enumerate_labeled(range(1, n + 1), p))
                # basis elements come back as themselves
                for lam in chars:
                    back = kappa_to_chi(chi_to_kappa(CharCombo.of(lam, full), p), p)
                    assert back == {lam: Cyclotomic.one(p)}
                # and a mixed combination survives both directions
                x = CharCombo(
                    full,
                    [(chars[0], LaurentPoly.const(2)), (chars[-1], LaurentPoly({1: 1}))],
                )
                back = kappa_to_chi(chi_to_kappa(x, p), p)
                want = {
                    chars[0]: Cyclotomic.from_rational(p, 2),
                    chars[-1]: Cyclotomic.from_rational(p, p),
                }
                assert back == want


class TestSinf:
    def test_same_arcs_coarser_group(self):
        K = PartitionIndex(4, [[1, 2], [3, 4]])
        lam = lsp(4, [(1, 2, 1), (3, 4, 1)])
        assert sinf(lam, K, PartitionIndex.full(4)) == lam

    def test_validation(self):
        K = PartitionIndex(3, [[1, 2], [3]])
        with pytest.raises(ValueError):
            sinf(lsp(3, [(1, 3, 1)]), K, PartitionIndex.full(3))
        with pytest.raises(ValueError):
            sinf(lsp(3, []), PartitionIndex(3, [[1, 3], [2]]), PartitionIndex(3, [[1, 2], [3]]))


class TestSerialization:
    def test_json_round_trip(self):
        K = PartitionIndex(7, [[1], [2, 3, 4, 5], [6], [7]])
        x = restrict(lsp(7, [(1, 7, 1)]), K, 3)
        assert CharCombo.from_json(x.to_json()) == x
        blob = x.to_json()
        assert blob["ambient"] == K.to_text()
        assert all(set(t) == {"partition", "coeff"} for t in blob["terms"])

    def test_text_round_trip(self):
        full = PartitionIndex.full(4)
        x = CharCombo(
            full,
            [
                (lsp(4, []), LaurentPoly({1: 4, 0: -3})),
                (lsp(4, [(2, 4, 1)]), LaurentPoly({-1: 1})),
            ],
        )
        assert CharCombo.from_text(x.to_text(), full) == x
