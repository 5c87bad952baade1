"""Tests for integral forms, KS arithmetic, recipes and doubles."""

import itertools

import pytest

from flatembed.errors import (
    EmptyDecompositionError,
    FlatEmbedError,
    InconsistentInvariantsError,
    InvalidDecompositionError,
    KsNotApplicableError,
    NonSquareError,
    NotIndefiniteError,
    NotSymmetricError,
    NotUnimodularError,
    OddRankError,
)
from flatembed.intersection_form import (
    DOUBLE_TARGET,
    SMOOTHING_NOTE,
    CanonicalDecomposition,
    FormInvariants,
    IntegralSymmetricForm,
    Parity,
    classify_indefinite,
    decomposition_from_invariants,
    direct_sum,
    double_class,
    e8_form,
    invariants,
    is_isomorphic_indefinite,
    ks_fold,
    ks_sum,
    negate,
    piece,
    realize_recipe,
    universal_target_pieces,
)


def _sum(*forms: IntegralSymmetricForm) -> IntegralSymmetricForm:
    result = IntegralSymmetricForm.empty()
    for form in forms:
        result = direct_sum(result, form)
    return result


def _random_symmetric(rng, n: int) -> IntegralSymmetricForm:
    grid = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            grid[i][j] = grid[j][i] = rng.randint(-3, 3)
    return IntegralSymmetricForm(tuple(tuple(row) for row in grid))


class TestIntegralSymmetricForm:
    """Construction checks."""

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            IntegralSymmetricForm(((1, 0),))

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetricError):
            IntegralSymmetricForm(((1, 2), (3, 1)))

    def test_rejects_non_integers(self):
        with pytest.raises(FlatEmbedError):
            IntegralSymmetricForm(((True, 0), (0, 1)))

    def test_pair(self, hyperbolic):
        assert hyperbolic.pair((1, 1), (1, 1)) == 2
        assert hyperbolic.pair((1, 0), (1, 0)) == 0


class TestInvariants:
    """Rank, signature, parity and determinant."""

    def test_hyperbolic(self, hyperbolic):
        inv = invariants(hyperbolic)
        assert (inv.rank, inv.signature, inv.parity, inv.determinant) == (
            2,
            0,
            Parity.EVEN,
            -1,
        )
        assert inv.unimodular and inv.indefinite

    def test_odd_diagonal(self):
        inv = invariants(IntegralSymmetricForm.diagonal([1, 1, -1]))
        assert (inv.rank, inv.signature, inv.parity, inv.determinant) == (
            3,
            1,
            Parity.ODD,
            -1,
        )
        assert inv.unimodular and inv.indefinite

    def test_e8(self):
        inv = invariants(e8_form())
        assert (inv.rank, inv.signature, inv.parity, inv.determinant) == (
            8,
            8,
            Parity.EVEN,
            1,
        )
        assert not inv.indefinite
        assert IntegralSymmetricForm.e8() is e8_form()

    def test_degenerate_form(self):
        inv = invariants(IntegralSymmetricForm(((1, 1), (1, 1))))
        assert inv.zeros == 1
        assert not inv.unimodular

    def test_parity_criterion_matches_brute_force(self, rng):
        vectors = list(itertools.product(range(-2, 3), repeat=4))
        for _ in range(10):
            Q = _random_symmetric(rng, 4)
            brute_even = all(Q.pair(a, a) % 2 == 0 for a in vectors)
            assert brute_even == (invariants(Q).parity is Parity.EVEN)

    def test_signature_additive(self, rng):
        for _ in range(10):
            Q1, Q2 = _random_symmetric(rng, 3), _random_symmetric(rng, 2)
            total = invariants(direct_sum(Q1, Q2))
            inv1, inv2 = invariants(Q1), invariants(Q2)
            assert total.signature == inv1.signature + inv2.signature
            assert total.rank == 5
            both_even = inv1.parity is Parity.EVEN and inv2.parity is Parity.EVEN
            assert (total.parity is Parity.EVEN) == both_even


class TestSumsAndNegation:
    """Direct sums and orientation reversal."""

    def test_two_hyperbolics(self, hyperbolic):
        inv = invariants(direct_sum(hyperbolic, hyperbolic))
        assert (inv.rank, inv.signature, inv.parity) == (4, 0, Parity.EVEN)

    def test_plus_minus_one(self):
        Q = direct_sum(
            IntegralSymmetricForm.diagonal([1]), IntegralSymmetricForm.diagonal([-1])
        )
        inv = invariants(Q)
        assert (inv.rank, inv.signature, inv.parity) == (2, 0, Parity.ODD)

    def test_empty_is_neutral(self, hyperbolic):
        assert direct_sum(hyperbolic, IntegralSymmetricForm.empty()) == hyperbolic
        assert direct_sum(IntegralSymmetricForm.empty(), hyperbolic) == hyperbolic

    def test_negate_e8(self):
        inv = invariants(negate(e8_form()))
        assert (inv.signature, inv.parity) == (-8, Parity.EVEN)

    def test_negate_is_involution(self, rng, hyperbolic):
        assert invariants(negate(hyperbolic)).signature == 0
        Q = _random_symmetric(rng, 4)
        assert negate(negate(Q)) == Q


class TestClassification:
    """Normal forms of indefinite unimodular forms."""

    def test_odd(self):
        dec = classify_indefinite(IntegralSymmetricForm.diagonal([1, 1, -1]))
        assert dec == CanonicalDecomposition(Parity.ODD, 2, 1)
        assert dec.describe() == "2⟨+1⟩ ⊕ 1⟨−1⟩"

    def test_hyperbolic(self, hyperbolic):
        dec = classify_indefinite(hyperbolic)
        assert (dec.e8_count, dec.h_count) == (0, 1)
        assert dec.describe() == "0·E₈ ⊕ 1·H"

    def test_e8_plus_minus_e8(self):
        dec = classify_indefinite(direct_sum(e8_form(), negate(e8_form())))
        assert dec == CanonicalDecomposition(Parity.EVEN, e8_count=0, h_count=8)

    def test_reconstruction_keeps_invariants(self, hyperbolic):
        forms = [
            IntegralSymmetricForm.diagonal([1, -1, -1, 1, 1]),
            _sum(e8_form(), hyperbolic, hyperbolic),
            _sum(negate(e8_form()), negate(e8_form()), hyperbolic),
            IntegralSymmetricForm(((1, 2), (2, 3))),
        ]
        for Q in forms:
            rebuilt = classify_indefinite(Q).to_form()
            a, b = invariants(Q), invariants(rebuilt)
            assert (a.rank, a.signature, a.parity) == (b.rank, b.signature, b.parity)
            assert abs(b.determinant) == 1

    def test_negative_e8_count(self, hyperbolic):
        dec = classify_indefinite(_sum(negate(e8_form()), hyperbolic))
        assert dec.e8_count == -1
        assert dec.describe() == "1·(−E₈) ⊕ 1·H"

    def test_definite_refused(self):
        with pytest.raises(NotIndefiniteError):
            classify_indefinite(e8_form())

    def test_non_unimodular_refused(self):
        with pytest.raises(NotUnimodularError):
            classify_indefinite(IntegralSymmetricForm.diagonal([2, -1]))

    def test_inconsistent_invariants(self):
        bogus = FormInvariants(
            rank=4,
            b_plus=3,
            b_minus=1,
            signature=2,
            parity=Parity.EVEN,
            determinant=-1,
            unimodular=True,
            indefinite=True,
        )
        with pytest.raises(InconsistentInvariantsError):
            decomposition_from_invariants(bogus)

    def test_isomorphism(self, hyperbolic):
        odd = IntegralSymmetricForm.diagonal([1, -1])
        assert not is_isomorphic_indefinite(odd, hyperbolic)
        eight_h = _sum(*([hyperbolic] * 8))
        e8_minus_e8 = direct_sum(e8_form(), negate(e8_form()))
        assert is_isomorphic_indefinite(e8_minus_e8, eight_h)
        assert is_isomorphic_indefinite(odd, odd)

    def test_isomorphism_refuses_definite(self, hyperbolic):
        with pytest.raises(NotIndefiniteError):
            is_isomorphic_indefinite(e8_form(), hyperbolic)


class TestKirbySiebenmann:
    """Z/2 arithmetic of KS."""

    def test_sum(self):
        assert ks_sum(1, 1) == 0
        assert ks_sum(0, 1) == 1
        assert ks_sum(0, 0) == 0

    def test_fold(self):
        assert ks_fold([1, 0, 1, 1]) == 1
        assert ks_fold([]) == 0

    def test_group_laws(self):
        for a, b, c in itertools.product((0, 1), repeat=3):
            assert ks_sum(ks_sum(a, b), c) == ks_sum(a, ks_sum(b, c))
            assert ks_sum(a, 0) == a
            assert ks_sum(a, a) == 0

    @pytest.mark.parametrize("value", [2, -1, True])
    def test_rejects_out_of_range(self, value):
        with pytest.raises(FlatEmbedError):
            ks_sum(value, 0)


class TestRecipes:
    """Connected sums of standard pieces."""

    def test_odd_ks_zero(self):
        recipe = realize_recipe(CanonicalDecomposition(Parity.ODD, 2, 1), 0)
        assert recipe.summands == (("CP2", 2), ("CP2bar", 1))
        assert recipe.ks == 0
        assert recipe.manifold.note == SMOOTHING_NOTE

    def test_odd_ks_one(self):
        recipe = realize_recipe(CanonicalDecomposition(Parity.ODD, 2, 1), 1)
        assert recipe.summands == (("X1", 1), ("CP2", 1), ("CP2bar", 1))
        assert recipe.ks == 1

    def test_odd_defaults_to_ks_zero(self):
        recipe = realize_recipe(CanonicalDecomposition(Parity.ODD, 1, 1))
        assert recipe.manifold.ks == 0

    def test_even(self):
        dec = CanonicalDecomposition(Parity.EVEN, e8_count=1, h_count=2)
        recipe = realize_recipe(dec)
        assert recipe.summands == (("X_E8", 1), ("S2xS2", 2))
        assert recipe.ks == 1
        assert recipe.manifold.ks is None

    def test_even_negative_e8(self):
        dec = CanonicalDecomposition(Parity.EVEN, e8_count=-2, h_count=1)
        assert realize_recipe(dec).summands == (("X_-E8", 2), ("S2xS2", 1))

    def test_even_rejects_ks(self):
        dec = CanonicalDecomposition(Parity.EVEN, h_count=1)
        with pytest.raises(KsNotApplicableError):
            realize_recipe(dec, 0)

    def test_empty(self):
        with pytest.raises(EmptyDecompositionError):
            realize_recipe(CanonicalDecomposition(Parity.ODD))

    @pytest.mark.parametrize(
        "counts",
        [
            {"plus_count": -1, "minus_count": 3},
            {"minus_count": -2},
        ],
    )
    def test_negative_odd_counts(self, counts):
        with pytest.raises(InvalidDecompositionError):
            CanonicalDecomposition(Parity.ODD, **counts)

    def test_negative_h_count(self):
        with pytest.raises(InvalidDecompositionError):
            CanonicalDecomposition(Parity.EVEN, e8_count=1, h_count=-1)

    def test_counts_of_other_parity(self):
        with pytest.raises(InvalidDecompositionError):
            CanonicalDecomposition(Parity.EVEN, plus_count=1, h_count=1)
        with pytest.raises(InvalidDecompositionError):
            CanonicalDecomposition(Parity.ODD, 1, 1, e8_count=1)

    def test_recipe_form_matches_decomposition(self):
        cases = [
            (CanonicalDecomposition(Parity.ODD, 3, 2), 0),
            (CanonicalDecomposition(Parity.ODD, 1, 4), 1),
            (CanonicalDecomposition(Parity.EVEN, e8_count=-1, h_count=3), None),
        ]
        for dec, ks in cases:
            recipe = realize_recipe(dec, ks)
            assert classify_indefinite(recipe.form()) == dec
            if ks is not None:
                assert recipe.ks == ks

    def test_describe(self):
        recipe = realize_recipe(CanonicalDecomposition(Parity.ODD, 2, 1), 1)
        assert recipe.describe() == "1·X₁ # 1·ℂP² # 1·ℂP²̄"

    def test_pieces(self):
        names = [p.name for p in universal_target_pieces()]
        assert names == ["X1", "X-1", "CP2", "CP2bar", "X_E8", "X_-E8", "S2xS2"]
        assert piece("X_E8").ks == 1
        assert piece("S2xS2").ks == 0
        with pytest.raises(FlatEmbedError):
            piece("K3")


class TestDoubles:
    """Labels of doubles."""

    @pytest.mark.parametrize(
        "parity, rank, label",
        [
            (Parity.EVEN, 4, "#2 S²×S²"),
            (Parity.ODD, 2, "S²×̃S²"),
            (Parity.EVEN, 0, "S⁴"),
            (Parity.ODD, 6, "#2 S²×S² # S²×̃S²"),
        ],
    )
    def test_labels(self, parity, rank, label):
        double = double_class(parity, rank)
        assert double.label == label
        assert double.embeds_in == DOUBLE_TARGET

    def test_accepts_string_parity(self):
        assert double_class("even", 2).label == "#1 S²×S²"

    def test_odd_rank(self):
        with pytest.raises(OddRankError):
            double_class(Parity.EVEN, 3)
