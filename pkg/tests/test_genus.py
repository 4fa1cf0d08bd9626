import itertools

import pytest
from fractions import Fraction

from pretzel_pcsc.conway import conway_even_first
from pretzel_pcsc.errors import BadShape, GenusTooSmall, NotAKnot, Unnormalized
from pretzel_pcsc.genus import (
    PAPER_3STRAND_GENUS2,
    _canon_qr,
    delta_gradings,
    genus,
    genus2_exceptions_3strand,
    genus2_exceptions_even_first,
    hanselman_q_bound,
    paper_even_first_items,
    tau_nonzero,
)
from pretzel_pcsc.pretzel import mirror

from conftest import even_first_normalized


class TestGenus:
    def test_all_odd_three_strand(self):
        g = genus((3, 5, 7))
        assert (g.value, g.exact, g.source) == (1, True, "KimLee3")

    def test_three_strand_even_same_sign(self):
        # negative l with this tail violates the {-2,1} exclusion at l=-1
        # and mirrors to the same family, so positive l suffices
        for ell in (1, 2, 3):
            g = genus((2 * ell, 3, 1))
            assert (g.value, g.exact) == (2, True)
        g = genus((-4, 3, 1))
        assert (g.value, g.exact) == (2, True)

    def test_three_strand_even_opposite_sign(self):
        g = genus((-2, 3, 7))
        assert (g.value, g.source) == (5, "KimLee3")

    def test_gabai(self):
        g = genus((3, 3, 3, -3, -3))
        assert (g.value, g.exact, g.source) == (2, True, "Gabai")
        assert genus((3, 3, 3, 3, 3, 3, 3)).value == 3

    def test_gabai_agrees_with_three_strand_case(self):
        # (n-1)/2 at n = 3 reproduces the all-odd 3-strand value 1
        for t in [(3, 5, 7), (3, -5, 3), (9, 9, 9)]:
            assert genus(t).value == (len(t) - 1) // 2 == 1

    def test_kim_lee_even_exact(self):
        g = genus((2, 3, 3, 3))
        assert (g.value, g.exact, g.source) == (4, True, "KimLeeEven")
        assert (g.alpha, g.delta_param) == (3, 6)

    def test_kim_lee_even_bound_only_with_units(self):
        g = genus((4, 3, -1, -1))
        assert g.source == "KimLeeEven"
        assert not g.exact

    def test_rejects_unnormalized(self):
        with pytest.raises(Unnormalized):
            genus((1, -1, 3, 3, 3))

    def test_rejects_link(self):
        with pytest.raises(NotAKnot):
            genus((3, 3, 3, 3))

    def test_mirror_invariant(self):
        for t in [(3, 5, 7), (2, 3, 3, 3), (-2, 3, 7), (4, 3, -3, 5)]:
            assert genus(t).value == genus(mirror(t)).value

    def test_degree_is_twice_genus_no_units(self):
        for t in even_first_normalized(4, 5, max_sum=14, allow_units=False):
            g = genus(t)
            assert g.exact
            assert conway_even_first(t).degree() == 2 * g.value, t


class TestGenus2Exceptions:
    def test_three_strand_list(self):
        expected = sorted({_canon_qr(q, r) for q, r in PAPER_3STRAND_GENUS2})
        assert genus2_exceptions_3strand() == expected

    def test_even_first_matches_paper_items(self):
        bounds = dict(abs_bound=5, n_max=7, ell_bound=3)
        hits = set(genus2_exceptions_even_first(**bounds))
        items = paper_even_first_items(**bounds)
        expansion = set().union(*items.values())
        assert hits == expansion

    def test_item_families_nonempty(self):
        items = paper_even_first_items(abs_bound=5, n_max=7, ell_bound=3)
        # family 6 requires a -1 next to a1 = 2 (or the mirror), which the
        # standing exclusions forbid; every realization drops out
        for i in (1, 2, 3, 4, 5, 7):
            assert items[i], f"family {i} should have realizations"
        assert not items[6]
        assert (2, -3, -3, 1) in items[7]

    def test_five_strand_exception_pattern(self):
        # (2l, +-3, +-1, +-1, +-1) with equal tail signs realizes family 2
        items = paper_even_first_items(abs_bound=3, n_max=5, ell_bound=2)
        fam2_n5 = {t for t in items[2] if len(t) == 5}
        assert (2, 3, 1, 1, 1) in fam2_n5 or (2, -3, 1, 1, 1) in fam2_n5


class TestDeltaGradings:
    def test_case1_example(self):
        grad = delta_gradings((3, 5, 7))
        assert grad.case_tag == "I"
        assert grad.values == frozenset({Fraction(-2), Fraction(-1)})
        assert grad.thickness == 1
        assert (grad.neg_count, grad.pos_count) == (0, 3)

    def test_case1_all_positive_five(self):
        grad = delta_gradings((3, 3, 3, 3, 3))
        assert grad.values == frozenset({Fraction(-3), Fraction(-2)})

    def test_case2(self):
        grad = delta_gradings((2, 3, 3))
        assert grad.case_tag == "II"
        assert len(grad.values) <= 2
        assert max(grad.values) - min(grad.values) <= 1

    def test_case3(self):
        grad = delta_gradings((2, 3, 3, 3))
        assert grad.case_tag == "III"
        assert len(grad.values) == 2
        assert max(grad.values) - min(grad.values) == 1

    def test_rejects_unnormalized(self):
        with pytest.raises(Unnormalized):
            delta_gradings((1, 1, 1, -1, -1))

    def test_gap_at_most_one_on_grid(self):
        odds = [-5, -3, -1, 1, 3, 5]
        evens = [-4, -2, 2, 4]
        knots = []
        for t in itertools.product(odds, repeat=3):
            if 1 in t and -1 in t:
                continue
            knots.append(t)
        for e in evens:
            for tail in itertools.product(odds, repeat=2):
                t = (e,) + tail
                vals = set(t)
                if {1, -1} <= vals or {2, -1} <= vals or {-2, 1} <= vals:
                    continue
                knots.append(t)
        for t in knots:
            grad = delta_gradings(t)
            assert 1 <= len(grad.values) <= 2
            assert max(grad.values) - min(grad.values) <= 1


class TestTau:
    def test_no_negatives(self):
        assert tau_nonzero((3, 5, 7, 9, 11)).certified

    def test_two_negatives_uncertified(self):
        assert not tau_nonzero((3, 3, 3, -3, -3)).certified

    def test_four_negatives(self):
        assert tau_nonzero((-3, -5, -7, -9, 3)).certified

    def test_exhaustive_sign_cases(self):
        # certificate iff 0, 1, 4 or 5 negative parameters
        for signs in itertools.product((1, -1), repeat=5):
            t = tuple(3 * s for s in signs)
            neg = sum(1 for s in signs if s < 0)
            assert tau_nonzero(t).certified == (neg in (0, 1, 4, 5))

    def test_rejects_wrong_shape(self):
        with pytest.raises(BadShape):
            tau_nonzero((3, 5, 7))


class TestHanselmanBound:
    def test_examples(self):
        qb = hanselman_q_bound(1, 3)
        assert (qb.bound, qb.admissible_q) == (Fraction(7, 12), ())
        qb = hanselman_q_bound(5, 3)
        assert (qb.bound, qb.admissible_q) == (Fraction(11, 12), ())
        qb = hanselman_q_bound(1, 2)
        assert (qb.bound, qb.admissible_q) == (Fraction(5, 4), (1,))

    def test_rejects_small_genus(self):
        with pytest.raises(GenusTooSmall):
            hanselman_q_bound(1, 1)
