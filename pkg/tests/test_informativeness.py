"""Informativeness: accuracy relations, witness search, partition and
covering characterizations."""

from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest

from itcat import (
    IDENTITY,
    POWERSET,
    PROBABILITY,
    FUZZY_MIN,
    arrow,
    compare,
    compose,
    identity_arrow,
    lift,
    more_informative,
    product,
    space,
)
from itcat.informativeness import (
    EQUALITY,
    POINTWISE,
    STRONG,
    WEAK,
    accuracy_le,
    all_partitions,
    candidate_arrows,
    canonical_partition,
    common_refinement,
    covering_le,
    covering_of,
    partition_monoid,
    partition_of_arrow,
    powerset_masks,
    refines,
    row_le,
)
from itcat.kleisli import enumerate_arrows
from itcat.spaces import DetMap, constant_map, identity_map, terminal_map

D3 = space("D", 3)
R2 = space("R", 2)
R3 = space("R", 3)


def pow_arrow(src, dst, *sets):
    return arrow(POWERSET, src, dst, [frozenset(s) for s in sets])


class TestAccuracy:
    def test_equality_mode_is_exact_equality(self):
        a = identity_arrow(POWERSET, D3)
        b = pow_arrow(D3, D3, {0}, {1}, {1, 2})
        assert accuracy_le(EQUALITY, a, a)
        assert not accuracy_le(EQUALITY, a, b)

    def test_pointwise_mode_on_powerset_is_rowwise_inclusion(self):
        tight = pow_arrow(D3, R2, {0}, {1}, {1})
        loose = pow_arrow(D3, R2, {0, 1}, {1}, {0, 1})
        assert accuracy_le(POINTWISE, tight, loose)
        assert not accuracy_le(POINTWISE, loose, tight)

    def test_pointwise_mode_on_fuzzy_is_gradewise(self):
        sharp = arrow(FUZZY_MIN, R2, R2, [(F(1), F(0)), (F(0), F(1))])
        soft = arrow(FUZZY_MIN, R2, R2, [(F(1), F(1, 2)), (F(1, 2), F(1))])
        assert accuracy_le(POINTWISE, sharp, soft)
        assert not accuracy_le(POINTWISE, soft, sharp)

    def test_row_le_per_monad(self):
        assert row_le(POWERSET, frozenset({1}), frozenset({0, 1}))
        assert not row_le(POWERSET, frozenset({0, 1}), frozenset({1}))
        assert row_le(FUZZY_MIN, (F(0), F(1)), (F(1, 2), F(1)))
        assert row_le(IDENTITY, 1, 1)
        assert not row_le(IDENTITY, 0, 1)

    def test_accuracy_requires_matching_spaces(self):
        a = pow_arrow(D3, R2, {0}, {1}, {1})
        b = pow_arrow(R2, R2, {0}, {1})
        with pytest.raises(Exception):
            accuracy_le(EQUALITY, a, b)


class TestWitnessSearch:
    def test_identity_dominates_everything(self):
        for b in enumerate_arrows(POWERSET, D3, R2):
            found = more_informative(EQUALITY, identity_arrow(POWERSET, D3), b)
            assert found.verdict and found.exhaustive
            assert compose(found.witness, identity_arrow(POWERSET, D3)) == b

    def test_witness_actually_turns_a_into_b(self):
        a = pow_arrow(D3, R3, {0}, {1}, {2})
        b = pow_arrow(D3, R2, {0}, {0}, {1})
        found = more_informative(EQUALITY, a, b)
        assert found.verdict
        assert compose(found.witness, a) == b

    def test_constant_cannot_reach_identity(self):
        const = lift(POWERSET, constant_map(D3, R2, 0))
        found = more_informative(EQUALITY, const, identity_arrow(POWERSET, D3))
        assert not found.verdict
        assert found.exhaustive
        assert found.label == "NO"
        assert found.witness is None

    def test_tested_counts_candidates(self):
        a = identity_arrow(POWERSET, R2)
        found = more_informative(EQUALITY, a, a)
        assert found.tested >= 1

    def test_compared_arrows_seed_the_pool(self):
        # b itself is always a candidate, so searching from the identity
        # succeeds however exotic b's denominators are.
        rows = [(F(1, 7), F(6, 7)), (F(6, 7), F(1, 7))]
        target = arrow(PROBABILITY, R2, R2, rows)
        ident = identity_arrow(PROBABILITY, R2)
        found = more_informative(EQUALITY, ident, target, max_den=4)
        assert found.verdict
        assert found.witness == target

    def test_probability_grid_misses_coarse_denominators(self):
        # a is invertible, so c.a = b has the unique solution c with 1/7
        # entries; that lies outside the lifted maps, the denominator-4 grid,
        # the compared arrows, and their mutual composites.
        a = arrow(PROBABILITY, R2, R2, [(F(3, 4), F(1, 4)), (F(1, 4), F(3, 4))])
        needed = arrow(PROBABILITY, R2, R2, [(F(1, 7), F(6, 7)), (F(6, 7), F(1, 7))])
        b = compose(needed, a)
        found = more_informative(EQUALITY, a, b, max_den=4)
        assert not found.verdict
        assert not found.exhaustive
        assert found.label == "NO-WITHIN-SEARCH"

    def test_given_arrows_join_the_candidate_pool(self):
        a = arrow(PROBABILITY, R2, R2, [(F(3, 4), F(1, 4)), (F(1, 4), F(3, 4))])
        needed = arrow(PROBABILITY, R2, R2, [(F(1, 7), F(6, 7)), (F(6, 7), F(1, 7))])
        b = compose(needed, a)
        found = more_informative(EQUALITY, a, b, given=(needed,), max_den=4)
        assert found.verdict
        assert found.witness == needed

    def test_depth_two_composites_of_given_are_searched(self):
        a = arrow(PROBABILITY, R2, R2, [(F(3, 4), F(1, 4)), (F(1, 4), F(3, 4))])
        h1 = arrow(PROBABILITY, R2, R2, [(F(1, 7), F(6, 7)), (F(6, 7), F(1, 7))])
        h2 = arrow(PROBABILITY, R2, R2, [(F(1, 11), F(10, 11)), (F(10, 11), F(1, 11))])
        needed = compose(h2, h1)
        b = compose(needed, a)
        assert not more_informative(EQUALITY, a, b, max_den=4).verdict
        found = more_informative(EQUALITY, a, b, given=(h1, h2), max_den=4)
        assert found.verdict
        assert compose(found.witness, a) == b

    def test_candidate_pool_contents(self):
        pool, exhaustive = candidate_arrows(POWERSET, R2, R2)
        assert exhaustive
        assert len(pool) == 9
        pool_prob, exhaustive_prob = candidate_arrows(PROBABILITY, R2, R2, max_den=2)
        assert not exhaustive_prob
        assert lift(PROBABILITY, identity_map(R2)) in pool_prob

    def test_powerset_pool_cap_reports_non_exhaustive(self):
        big = space("E", 7)
        # Witnesses run from the 7-point target into the 3-point one, and
        # 7**7 candidates exceed the exhaustive cap; with no witness in the
        # reduced pool the NO verdict must be qualified.
        a = pow_arrow(R2, big, {0}, {0})
        b = pow_arrow(R2, R3, {0}, {1})
        blocked = more_informative(EQUALITY, a, b)
        assert not blocked.verdict
        assert not blocked.exhaustive
        assert blocked.label == "NO-WITHIN-SEARCH"


class TestCompare:
    def test_more_and_less(self):
        fine = arrow(IDENTITY, D3, D3, [0, 1, 2])
        coarse = arrow(IDENTITY, D3, R2, [0, 0, 1])
        assert compare(EQUALITY, fine, coarse).verdict == "MORE"
        assert compare(EQUALITY, coarse, fine).verdict == "LESS"

    def test_equivalent_up_to_relabelling(self):
        a = arrow(IDENTITY, D3, R2, [0, 0, 1])
        b = arrow(IDENTITY, D3, R2, [1, 1, 0])
        outcome = compare(EQUALITY, a, b)
        assert outcome.verdict == "EQUIVALENT"
        assert outcome.forward.verdict and outcome.backward.verdict

    def test_incomparable_partitions(self):
        a = arrow(IDENTITY, D3, R2, [0, 0, 1])
        b = arrow(IDENTITY, D3, R2, [0, 1, 1])
        outcome = compare(EQUALITY, a, b)
        assert outcome.verdict == "INCOMPARABLE"
        assert outcome.forward.exhaustive and outcome.backward.exhaustive

    def test_incomparable_within_search_when_pool_is_partial(self):
        a = arrow(PROBABILITY, R2, R2, [(F(1, 7), F(6, 7)), (F(6, 7), F(1, 7))])
        b = arrow(PROBABILITY, R2, R2, [(F(1, 5), F(4, 5)), (F(4, 5), F(1, 5))])
        outcome = compare(EQUALITY, a, b, max_den=3)
        assert outcome.verdict == "INCOMPARABLE-WITHIN-SEARCH"

    def test_product_dominates_factors(self):
        a = pow_arrow(D3, R2, {0}, {0, 1}, {1})
        b = pow_arrow(D3, R2, {1}, {0}, {0})
        p = product(a, b)
        assert compare(EQUALITY, p, a).verdict in ("MORE", "EQUIVALENT")
        assert compare(EQUALITY, p, b).verdict in ("MORE", "EQUIVALENT")


class TestPartitions:
    def test_all_partitions_counts_are_bell_numbers(self):
        assert [len(all_partitions(n)) for n in (1, 2, 3, 4)] == [1, 2, 5, 15]

    def test_refinement_and_common_refinement(self):
        p = canonical_partition([[0, 1], [2]])
        q = canonical_partition([[0], [1, 2]])
        disc = canonical_partition([[0], [1], [2]])
        full = canonical_partition([[0, 1, 2]])
        assert refines(disc, p) and refines(p, full)
        assert not refines(p, q) and not refines(q, p)
        assert common_refinement(p, q) == disc
        assert common_refinement(p, p) == p

    def test_partition_of_arrow_is_the_kernel(self):
        a = arrow(IDENTITY, D3, R2, [0, 0, 1])
        assert partition_of_arrow(a) == canonical_partition([[0, 1], [2]])

    def test_monoid_structure_card3(self):
        monoid = partition_monoid(3)
        assert len(monoid.carrier) == 5
        one, zero = monoid.one, monoid.zero
        assert monoid.carrier[one] == canonical_partition([[0], [1], [2]])
        assert monoid.carrier[zero] == canonical_partition([[0, 1, 2]])
        n = len(monoid.carrier)
        for i in range(n):
            # zero is neutral, one absorbs, and the order has top and bottom.
            assert monoid.product[i][zero] == i
            assert monoid.product[i][one] == one
            assert monoid.ge[one][i]
            assert monoid.ge[i][zero]
        for i, j in itertools.product(range(n), repeat=2):
            assert monoid.product[i][j] == monoid.product[j][i]
            assert monoid.ge[monoid.product[i][j]][i]
        for i, j, k in itertools.product(range(n), repeat=3):
            assert (
                monoid.product[monoid.product[i][j]][k]
                == monoid.product[i][monoid.product[j][k]]
            )

    def test_monoid_order_is_a_partial_order(self):
        monoid = partition_monoid(4)
        n = len(monoid.carrier)
        for i in range(n):
            assert monoid.ge[i][i]
        for i, j in itertools.product(range(n), repeat=2):
            if i != j:
                assert not (monoid.ge[i][j] and monoid.ge[j][i])
        for i, j, k in itertools.product(range(n), repeat=3):
            if monoid.ge[i][j] and monoid.ge[j][k]:
                assert monoid.ge[i][k]

    def test_monoid_card_limit(self):
        with pytest.raises(ValueError):
            partition_monoid(7)


class TestCoverings:
    def test_weak_family_is_a_maximal_antichain(self):
        a = pow_arrow(D3, R3, {0, 1}, {1}, {1, 2})
        weak = covering_of(a, WEAK)
        fam = list(weak.family)
        for s, t in itertools.permutations(fam, 2):
            assert not s < t

    def test_strong_family_is_member_bounded_union_closed(self):
        a = pow_arrow(D3, R3, {0, 1}, {1}, {1, 2})
        strong = covering_of(a, STRONG)
        fam = strong.family
        for s, t in itertools.product(fam, repeat=2):
            union = s | t
            if any(union <= m for m in fam):
                assert union in fam

    def test_mode_mismatch_rejected(self):
        a = pow_arrow(R2, R2, {0}, {1})
        with pytest.raises(ValueError):
            covering_le(covering_of(a, WEAK), covering_of(a, STRONG))

    @pytest.mark.parametrize("mode", [WEAK, STRONG])
    def test_covering_le_matches_witness_search_exhaustively(self, mode):
        accuracy = EQUALITY if mode == STRONG else POINTWISE
        src = R2
        arrows = list(enumerate_arrows(POWERSET, src, R2))
        for a, b in itertools.product(arrows, repeat=2):
            by_covering = covering_le(covering_of(a, mode), covering_of(b, mode))
            by_search = more_informative(accuracy, a, b).verdict
            assert by_covering == by_search, (a.rows, b.rows, mode)

    def test_nested_generators_matter_in_strong_mode(self):
        # Rows give preimage families {{0,1},{0}} versus {{0,1}}: weakly the
        # two arrows are equivalent (same maximal sets), strongly the first
        # is finer because {0} can be covered only by the first family.
        two = space("D", 2)
        a = pow_arrow(two, R2, {0}, {0, 1})
        b = pow_arrow(two, R2, {0, 1}, {0, 1})
        assert covering_le(covering_of(a, WEAK), covering_of(b, WEAK))
        assert covering_le(covering_of(b, WEAK), covering_of(a, WEAK))
        assert covering_le(covering_of(a, STRONG), covering_of(b, STRONG))
        assert not covering_le(covering_of(b, STRONG), covering_of(a, STRONG))

    def test_powerset_masks_round_trip(self):
        a = pow_arrow(D3, R3, {0, 1}, {1}, {1, 2})
        masks = powerset_masks(a)
        assert masks == (0b011, 0b010, 0b110)


class TestCoveringInvariance:
    """Equivalent arrows share a covering; the covering ignores labelling."""

    def test_covering_is_invariant_under_target_bijections(self):
        a = pow_arrow(D3, R3, {0, 1}, {1}, {1, 2})
        relabel = lift(POWERSET, DetMap(R3, R3, (2, 0, 1)))
        shuffled = compose(relabel, a)
        for mode in (WEAK, STRONG):
            assert covering_of(a, mode) == covering_of(shuffled, mode)

    def test_terminal_arrow_has_the_indiscrete_covering(self):
        z = lift(POWERSET, terminal_map(D3))
        for mode in (WEAK, STRONG):
            fam = covering_of(z, mode).family
            assert frozenset(range(3)) in fam
