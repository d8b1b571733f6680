import random

import pytest
import sympy

from app.algebra.int_poly import IntPoly
from app.algebra.polynomials import FFPoly
from app.algebra.witt_ring import FiniteField
from app.models.polygon_models import YoungPolygon
from app.models.torsion_models import DistinguishedScheme, TorsionClass
from app.torsion.isogeny_torsion import (
    classify_torsion,
    dual_polygon_map,
    dual_torsion_class,
    dual_weil,
    is_squarefree,
    local_decomposition,
    rational_point_group,
    scheme_point_counts,
    validate_weil,
)
from app.utils.errors import (
    EllEqualsP,
    FunctionalEquationViolated,
    MalformedPolynomial,
    NotPrimePower,
    NotSquarefree,
    RootModulusSuspect,
    ZeroConstantTerm,
)

F5 = FiniteField(5)
T_MINUS_1 = FFPoly.from_ints(F5, [-1, 1])
T_MINUS_2 = FFPoly.from_ints(F5, [-2, 1])


def torsion_class(*items):
    return TorsionClass(
        summands=tuple(DistinguishedScheme(hbar=hbar, partition=YoungPolygon(partition=p)) for hbar, p in items)
    )


def random_squarefree_weil(rng, ell):
    """Produit de 1 à 3 facteurs distincts t² − at + q, |a| < 2√q, avec p ≠ ℓ."""
    q = rng.choice([q for q in (5, 7, 11, 13) if q != ell])
    traces = [a for a in range(-7, 8) if a * a < 4 * q]
    f = IntPoly([1])
    for a in rng.sample(traces, rng.randint(1, 3)):
        f = f * IntPoly([q, -a, 1])
    return validate_weil(f, q)


class TestValidateWeil:
    def test_elliptic_curve(self, curve_q7):
        assert curve_q7.genus == 1
        assert curve_q7.p == 7

    def test_functional_equation(self):
        with pytest.raises(FunctionalEquationViolated):
            validate_weil(IntPoly.from_leading_first([1, 1, 5]), 7)

    def test_root_modulus(self):
        f = IntPoly.from_leading_first([1, 6, 7])
        with pytest.raises(RootModulusSuspect):
            validate_weil(f, 7)
        assert validate_weil(f, 7, force=True).q == 7

    def test_q_must_be_prime_power(self):
        with pytest.raises(NotPrimePower):
            validate_weil(IntPoly.from_leading_first([1, 2, 6]), 6)

    @pytest.mark.parametrize("coeffs", [[1, 2, 3, 4], [2, 2, 14], [1]])
    def test_shape(self, coeffs):
        with pytest.raises(MalformedPolynomial):
            validate_weil(IntPoly.from_leading_first(coeffs), 7)

    def test_squarefree(self):
        assert is_squarefree(IntPoly.from_leading_first([1, 2, 7]))
        assert not is_squarefree(IntPoly.from_leading_first([1, 2, 7, 6, 9]))


class TestLocalDecomposition:
    def test_two_double_factors(self, surface_q7_ell5):
        factors = local_decomposition(surface_q7_ell5, 5)
        assert [str(lf.hbar) for lf in factors] == ["t + 3", "t + 4"]
        assert [lf.d for lf in factors] == [2, 2]
        for lf in factors:
            assert lf.Q.reduce() == FFPoly.monomial(F5, 2)

    def test_product_of_lifts(self, surface_q7_ell5):
        factors = local_decomposition(surface_q7_ell5, 5, precision=7)
        product = factors[0].f_lift * factors[1].f_lift
        assert product == surface_q7_ell5.coeffs.to_witt(factors[0].f_lift.ring)

    def test_quadratic_residue_factor(self, weil):
        # t² + t + 2 est irréductible sur F_3
        (lf,) = local_decomposition(weil([1, 1, 2], 2), 3)
        assert lf.hbar.degree == 2
        assert lf.ring.degree == 2
        assert lf.Q.degree == 1

    def test_ell_equals_p(self, curve_q7):
        with pytest.raises(EllEqualsP):
            local_decomposition(curve_q7, 7)


class TestClassifyTorsion:
    def test_four_classes(self, surface_q7_ell5):
        classes = classify_torsion(surface_q7_ell5, 5)
        assert len(classes) == 4
        assert all(c.dimension == 4 for c in classes)

    def test_independent_of_lift_choice(self, surface_q7_ell5):
        reference = [c.to_json() for c in classify_torsion(surface_q7_ell5, 5)]
        for k in range(5):
            rng = random.Random(k)
            assert [c.to_json() for c in classify_torsion(surface_q7_ell5, 5, alpha_rng=rng)] == reference

    def test_independent_of_lift_choice_on_random_corpus(self):
        rng = random.Random(31)
        for _ in range(50):
            ell = rng.choice([2, 3, 5])
            weil = random_squarefree_weil(rng, ell)
            reference = [c.to_json() for c in classify_torsion(weil, ell)]
            for k in range(3):
                shifted = classify_torsion(weil, ell, alpha_rng=random.Random(k))
                assert [c.to_json() for c in shifted] == reference, (weil.coeffs, ell)

    def test_independent_of_factorization_seed(self, surface_q7_ell5):
        assert classify_torsion(surface_q7_ell5, 5, seed=1) == classify_torsion(surface_q7_ell5, 5, seed=9)

    def test_multiple_root_is_rejected(self, weil):
        with pytest.raises(NotSquarefree):
            classify_torsion(weil([1, 2, 7, 6, 9], 3), 2)

    def test_ordinary_curve_mod_three(self, curve_q7):
        # t² + 2t + 7 ≡ t² + 2t + 1 = (t + 1)² modulo 3, et f(−1) = 6
        classes = classify_torsion(curve_q7, 3)
        assert [c.summands[0].partition.partition for c in classes] == [(2,)]


class TestSchemePointCounts:
    def test_unipotent_block(self):
        f2 = FiniteField(2)
        cls = torsion_class((FFPoly.from_ints(f2, [1, 1]), (4,)))
        assert scheme_point_counts(cls, 2).label() == "b1=2,b2=1,b4=3"

    def test_points_fill_the_group(self, surface_q7_ell5):
        for cls in classify_torsion(surface_q7_ell5, 5):
            assert scheme_point_counts(cls, 5).total == 5 ** 4

    def test_rational_points_match_kernel(self, surface_q7_ell5):
        cls = torsion_class((T_MINUS_1, (1, 1)), (T_MINUS_2, (2,)))
        assert scheme_point_counts(cls, 5).get(1) == 5 ** 2


class TestDuality:
    def test_dual_weil(self, curve_q7):
        assert dual_weil(IntPoly.from_leading_first([1, -1]), 7).leading_first() == [1, -7]
        assert dual_weil(curve_q7, 7) == curve_q7.coeffs

    def test_zero_constant(self):
        with pytest.raises(ZeroConstantTerm):
            dual_weil(IntPoly.from_leading_first([1, 0]), 7)

    def test_pairing_swaps_residues(self, surface_q7_ell5):
        decomposition = local_decomposition(surface_q7_ell5, 5)
        assert dual_polygon_map(decomposition, 7) == {0: 1, 1: 0}

    def test_dual_class(self, surface_q7_ell5):
        decomposition = local_decomposition(surface_q7_ell5, 5)
        cls = torsion_class((T_MINUS_1, (1, 1)), (T_MINUS_2, (2,)))
        assert dual_torsion_class(decomposition, cls, 7) == torsion_class((T_MINUS_1, (2,)), (T_MINUS_2, (1, 1)))


class TestRationalPointGroup:
    def test_group_and_dual_group(self, surface_q7_ell5):
        cls = torsion_class((T_MINUS_1, (1, 1)), (T_MINUS_2, (2,)))
        dual = torsion_class((T_MINUS_1, (2,)), (T_MINUS_2, (1, 1)))
        assert rational_point_group(surface_q7_ell5, 5, cls) == [1, 1]
        assert rational_point_group(surface_q7_ell5, 5, dual) == [2]

    @pytest.mark.parametrize("degree", [1, 2])
    def test_order_is_ell_part_of_point_count(self, surface_q7_ell5, degree):
        expected = sympy.multiplicity(5, abs(surface_q7_ell5.coeffs.base_change(degree)(1)))
        for cls in classify_torsion(surface_q7_ell5, 5):
            assert sum(rational_point_group(surface_q7_ell5, 5, cls, degree)) == expected
