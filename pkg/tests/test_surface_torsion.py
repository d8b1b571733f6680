import random

import pytest

from app.algebra.int_poly import IntPoly
from app.algebra.polynomials import FFPoly
from app.algebra.witt_ring import FiniteField
from app.models.torsion_models import sort_classes
from app.torsion.isogeny_torsion import classify_torsion, scheme_point_counts, validate_weil
from app.torsion.surface_torsion import classify_surface, dedekind_regular, regularity_test
from app.utils.errors import EllEqualsP, WrongDegree


def partitions_at(case, hbar):
    return sorted(c.partition_of(hbar).partition for c in case.classes)


# un représentant (coefficients, q, ℓ) par cas
REPRESENTATIVES = [
    ([1, -3, 16, -21, 49], 7, 5),
    ([1, -2, 14, -14, 49], 7, 3),
    ([1, -1, 8, -7, 49], 7, 5),
    ([1, -3, 14, -21, 49], 7, 3),
    ([1, -1, 12, -7, 49], 7, 3),
    ([1, 2, 7, 6, 9], 3, 2),
    ([1, -4, 18, -28, 49], 7, 3),
    ([1, -5, 12, -45, 81], 9, 2),
    ([1, -10, 42, -90, 81], 9, 5),
    ([1, -6, 18, -54, 81], 9, 2),
    ([1, -8, 30, -72, 81], 9, 2),
    ([1, -8, 24, -32, 16], 4, 3),
]

ALL_CASES = {"1", "2", "3", "4", "5", "6a", "6b", "7a", "7b", "7c_i", "7c_ii", "8"}


def random_surface(rng):
    """Polynôme de Weil de degré 4 aléatoire, avec racines multiples possibles si q est un carré."""
    q = rng.choice([3, 4, 5, 7, 9])
    ell = rng.choice([l for l in (2, 3, 5, 7) if q % l])
    traces = [a for a in range(-5, 6) if a * a < 4 * q]

    def quadratic():
        return IntPoly([q, -rng.choice(traces), 1])

    kind = rng.choice(["paire", "racine_double", "quadruple", "opposees"]) if q in (4, 9) else "paire"
    r = rng.choice([-1, 1]) * (2 if q == 4 else 3)
    linear = IntPoly([-r, 1])
    if kind == "paire":
        f = quadratic() * quadratic()
    elif kind == "racine_double":
        f = linear * linear * quadratic()
    elif kind == "quadruple":
        f = linear * linear * linear * linear
    else:
        f = linear * linear * IntPoly([r, 1]) * IntPoly([r, 1])
    return validate_weil(f, q), ell


class TestRegularity:
    def test_closed_form(self):
        assert regularity_test(1, 1, 2, 3)
        assert not regularity_test(3, 5, 7, 3)

    def test_closed_form_for_two(self):
        # a₁ + a₂ + 1 − 2q modulo 4
        assert regularity_test(3, 2, 3, 2) is False
        assert regularity_test(1, 2, 3, 2) is True

    def test_dedekind_criterion(self):
        assert not dedekind_regular(IntPoly.from_leading_first([1, -3, 14, -21, 49]), 3)
        assert dedekind_regular(IntPoly.from_leading_first([1, 0, 2, 0, 49]), 3)


class TestSquarefreeCases:
    def test_case_1(self, weil):
        case = classify_surface(weil([1, -3, 16, -21, 49], 7), 5)
        assert case.case_id == "1"
        assert case.conditions.squarefree

    def test_case_2(self, weil):
        case = classify_surface(weil([1, -2, 14, -14, 49], 7), 3)
        assert case.case_id == "2"

    def test_case_3(self, surface_q7_ell5):
        case = classify_surface(surface_q7_ell5, 5)
        assert case.case_id == "3"
        assert len(case.classes) == 4

    def test_case_4_not_regular(self, weil):
        case = classify_surface(weil([1, -3, 14, -21, 49], 7), 3)
        assert case.case_id == "4"
        assert case.conditions.regularity_quantity == 9
        assert case.conditions.regular is False
        assert len(case.classes) == 2

    def test_case_4_regular(self, weil):
        case = classify_surface(weil([1, 0, 2, 0, 49], 7), 3)
        assert case.case_id == "4"
        assert case.conditions.regularity_quantity == 48
        assert case.conditions.regular is True
        assert case.conditions.dedekind_regular is True
        assert len(case.classes) == 1

    def test_case_4_criteria_disagree(self, weil):
        # f̄ = (t² + 1)² modulo 3 ; forme close et critère exact divergent
        case = classify_surface(weil([1, 0, -1, 0, 25], 5), 3)
        assert case.case_id == "4"
        assert case.conditions.regular is True
        assert case.conditions.dedekind_regular is False

    def test_case_5(self, weil):
        case = classify_surface(weil([1, -1, 12, -7, 49], 7), 3)
        assert case.case_id == "5"


class TestRepeatedFactorCases:
    def test_case_6a(self, weil):
        f2 = FiniteField(2)
        case = classify_surface(weil([1, 2, 7, 6, 9], 3), 2)
        assert case.case_id == "6a"
        (cls,) = case.classes
        assert cls.partition_of(FFPoly.from_ints(f2, [1, 1, 1])).partition == (1, 1)
        assert scheme_point_counts(cls, 2).label() == "b1=1,b3=5"

    def test_case_6b(self, weil):
        f3 = FiniteField(3)
        case = classify_surface(weil([1, -4, 18, -28, 49], 7), 3)
        assert case.case_id == "6b"
        assert partitions_at(case, FFPoly.from_ints(f3, [-1, 1])) == [(2, 2)]

    def test_case_7a(self, weil):
        case = classify_surface(weil([1, -5, 12, -45, 81], 9), 2)
        assert case.case_id == "7a"
        assert len(case.classes) == 1

    def test_case_7b(self, weil):
        case = classify_surface(weil([1, -10, 42, -90, 81], 9), 5)
        assert case.case_id == "7b"
        assert len(case.classes) == 1

    def test_case_7c_i(self, weil):
        f2 = FiniteField(2)
        case = classify_surface(weil([1, -6, 18, -54, 81], 9), 2)
        assert case.case_id == "7c_i"
        assert partitions_at(case, FFPoly.from_ints(f2, [1, 1])) == [(2, 1, 1), (3, 1)]

    def test_case_7c_ii(self, weil):
        f2 = FiniteField(2)
        case = classify_surface(weil([1, -8, 30, -72, 81], 9), 2)
        assert case.case_id == "7c_ii"
        assert case.conditions.p1_at_root == 12
        assert case.conditions.ell_squared_divides_p1
        assert len(case.classes) == 4
        assert (2, 2) in partitions_at(case, FFPoly.from_ints(f2, [1, 1]))

    def test_case_8(self, weil):
        f3 = FiniteField(3)
        case = classify_surface(weil([1, -8, 24, -32, 16], 4), 3)
        assert case.case_id == "8"
        assert partitions_at(case, FFPoly.from_ints(f3, [-2, 1])) == [(1, 1, 1, 1)]


class TestPreconditions:
    def test_degree_must_be_four(self, curve_q7):
        with pytest.raises(WrongDegree):
            classify_surface(curve_q7, 3)

    def test_ell_equals_p(self, surface_q7_ell5):
        with pytest.raises(EllEqualsP):
            classify_surface(surface_q7_ell5, 7)

    def test_json_payload(self, surface_q7_ell5):
        payload = classify_surface(surface_q7_ell5, 5).to_json()
        assert payload["case"] == "3"
        assert payload["conditions"]["residue_shape"] == [[1, 2], [1, 2]]
        assert len(payload["classes"]) == 4


class TestCorpus:
    def test_random_corpus_reaches_every_case(self, weil):
        rng = random.Random(12)
        corpus = [(weil(coeffs, q), ell) for coeffs, q, ell in REPRESENTATIVES]
        corpus += [random_surface(rng) for _ in range(40)]
        reached = set()
        for surface, ell in corpus:
            case = classify_surface(surface, ell)
            reached.add(case.case_id)
            if case.conditions.squarefree:
                expected = sort_classes(classify_torsion(surface, ell))
                assert list(case.classes) == expected, (surface.coeffs, ell)
        assert reached == ALL_CASES
