import pytest

from app.algebra.polynomials import WittPoly
from app.models.polygon_models import YoungPolygon
from app.models.torsion_models import LatticeModel
from app.torsion.lattice_lift import construct_lift
from app.torsion.matrix_factor import (
    cokernel_module_type,
    factorization_from_generators,
    swap_partner,
    verify_factorization,
)
from app.utils.errors import InputError, NotNilpotent, SingularPresentation


@pytest.fixture
def eisenstein(w5):
    return construct_lift(WittPoly.from_ints(w5, [-5, -5, 1]), YoungPolygon.of(2))


@pytest.fixture
def split(w5):
    return construct_lift(WittPoly.from_ints(w5, [-25, -25, 1]), YoungPolygon.of(1, 1))


class TestFactorizationFromGenerators:
    def test_single_generator(self, eisenstein, w5):
        mf = factorization_from_generators(eisenstein)
        assert mf.r == 1
        assert mf.X[0, 0] == WittPoly.from_ints(w5, [-5, -5, 1])
        assert mf.Y[0, 0].is_one()
        assert mf.f == eisenstein.Q
        assert verify_factorization(mf)

    def test_two_generators(self, split):
        mf = factorization_from_generators(split)
        assert mf.r == 2
        assert mf.f == split.Q
        assert verify_factorization(mf)

    def test_requires_partition(self, eisenstein):
        bare = LatticeModel(W=eisenstein.W, F_matrix=eisenstein.F_matrix, Q=eisenstein.Q)
        with pytest.raises(InputError):
            factorization_from_generators(bare)


class TestCokernelModuleType:
    def test_single_block(self, eisenstein):
        mf = factorization_from_generators(eisenstein)
        assert cokernel_module_type(mf.X, mf.f1) == (2, YoungPolygon.of(2))

    def test_two_blocks(self, split):
        mf = factorization_from_generators(split)
        assert cokernel_module_type(mf.X, mf.f1) == (2, YoungPolygon.of(1, 1))

    def test_annihilator_must_be_nilpotent(self, eisenstein, w5):
        mf = factorization_from_generators(eisenstein)
        with pytest.raises(NotNilpotent):
            cokernel_module_type(mf.X, WittPoly.from_ints(w5, [1, 1]))


class TestSwapPartner:
    def test_partner_of_two_blocks(self, split):
        partner = swap_partner(factorization_from_generators(split))
        assert partner.f == split.Q
        assert verify_factorization(partner)
        assert cokernel_module_type(partner.X, partner.f1) == (2, YoungPolygon.of(1, 1))

    def test_partner_of_single_generator_is_trivial(self, eisenstein):
        partner = swap_partner(factorization_from_generators(eisenstein))
        assert partner.f.is_one()
        with pytest.raises(SingularPresentation):
            cokernel_module_type(partner.X, partner.f1)
