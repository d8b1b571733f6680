"""
Fixtures partagées : polynômes de Weil de référence et anneaux de travail.
"""
import pytest

from app.algebra.int_poly import IntPoly
from app.algebra.witt_ring import FiniteField, WittRing
from app.torsion.isogeny_torsion import validate_weil


def make_weil(coeffs, q, force=False):
    """Polynôme de Weil validé à partir de coefficients dominant en premier."""
    return validate_weil(IntPoly.from_leading_first(coeffs), q, force=force)


@pytest.fixture
def weil():
    return make_weil


@pytest.fixture
def surface_q7_ell5():
    """t⁴ − t³ + 8t² − 7t + 49 : f̄ = (t − 1)²(t − 2)² modulo 5."""
    return make_weil([1, -1, 8, -7, 49], 7)


@pytest.fixture
def curve_q7():
    return make_weil([1, 2, 7], 7)


@pytest.fixture
def f2():
    return FiniteField(2)


@pytest.fixture
def f5():
    return FiniteField(5)


@pytest.fixture
def w5():
    return WittRing(5, precision=4)
