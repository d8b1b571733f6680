import random

import pytest

from app.algebra.matrices import WittMatrix
from app.algebra.polynomials import FFPoly, WittPoly
from app.algebra.witt_ring import WittRing
from app.models.polygon_models import YoungPolygon
from app.torsion.lattice_lift import (
    canonical_nilpotent,
    cokernel_group,
    construct_lift,
    enumerate_invariant_sublattices,
    frobenius_matrix,
    nilpotent_jordan_type,
)
from app.torsion.polygons import admissible_partitions, clamp, newton_polygon
from app.utils.errors import DimensionMismatch, NotDominated, NotIrreducible, NotNilpotent, PrecisionExhausted


class TestConstructLift:
    @pytest.mark.parametrize("ell", [2, 3, 5])
    def test_single_block(self, ell):
        Q = WittPoly.from_ints(WittRing(ell, precision=4), [-ell, -ell, 1])
        model = construct_lift(Q, YoungPolygon.of(2))
        assert model.F_matrix.to_ints() == [[0, ell], [1, ell]]
        assert nilpotent_jordan_type(model.F_matrix.reduce()) == YoungPolygon.of(2)

    def test_two_blocks(self, w5):
        Q = WittPoly.from_ints(w5, [-25, -25, 1])
        model = construct_lift(Q, YoungPolygon.of(1, 1))
        # entrées significatives modulo ℓ^{N−1}
        assert [[x % 125 for x in row] for row in model.F_matrix.to_ints()] == [[25, 5], [5, 0]]
        assert model.F_matrix.charpoly() == Q

    @pytest.mark.parametrize("ell", [2, 3, 5])
    def test_not_dominated(self, ell):
        Q = WittPoly.from_ints(WittRing(ell, precision=4), [-ell, -ell, 1])
        with pytest.raises(NotDominated):
            construct_lift(Q, YoungPolygon.of(1, 1))

    def test_size_mismatch(self, w5):
        with pytest.raises(DimensionMismatch):
            construct_lift(WittPoly.from_ints(w5, [-5, -5, 1]), YoungPolygon.of(3))

    def test_alpha_is_kept_in_frobenius(self, w5):
        alpha = w5(2)
        model = construct_lift(WittPoly.from_ints(w5, [-5, 1]), YoungPolygon.of(1), alpha)
        assert model.frobenius.to_ints() == [[7]]

    def test_random_lifts_have_requested_reduction(self):
        rng = random.Random(2024)
        rings = {ell: WittRing(ell, precision=8) for ell in (2, 3, 5, 7)}
        for _ in range(200):
            ell = rng.choice([2, 3, 5, 7])
            ring = rings[ell]
            d = rng.randint(1, 6)
            coeffs = [ell * rng.randint(-ell ** 5, ell ** 5) for _ in range(d)] + [1]
            Q = WittPoly.from_ints(ring, coeffs)
            for partition in admissible_partitions(clamp(newton_polygon(Q)), d):
                model = construct_lift(Q, partition)
                assert model.F_matrix.charpoly() == Q
                assert nilpotent_jordan_type(model.F_matrix.reduce()) == partition


class TestJordanType:
    @pytest.mark.parametrize("parts", [(1,), (3,), (2, 1), (2, 2), (3, 1, 1)])
    def test_canonical_nilpotent(self, f5, parts):
        partition = YoungPolygon(partition=parts)
        assert nilpotent_jordan_type(canonical_nilpotent(f5, partition)) == partition

    def test_identity_is_not_nilpotent(self, f5):
        with pytest.raises(NotNilpotent):
            nilpotent_jordan_type(WittMatrix.identity(f5, 2))


class TestFrobeniusMatrix:
    def test_quadratic_residue_factor(self, f2):
        hbar = FFPoly.from_ints(f2, [1, 1, 1])
        matrix = frobenius_matrix(hbar, YoungPolygon.of(2))
        assert matrix.to_ints() == [[0, 0, 1, 0], [1, 0, 0, 1], [1, 0, 1, 0], [0, 1, 1, 1]]
        assert matrix.charpoly() == hbar ** 2

    def test_reducible_residue(self, f2):
        with pytest.raises(NotIrreducible):
            frobenius_matrix(FFPoly.from_ints(f2, [1, 0, 1]), YoungPolygon.of(1))


def sublattice_types(Q, depth=3):
    model = construct_lift(Q, YoungPolygon.of(Q.degree))
    sublattices = enumerate_invariant_sublattices(model, depth)
    return {nilpotent_jordan_type(sub.F_matrix.reduce()).partition for sub in sublattices}


def admissible_types(Q):
    return {p.partition for p in admissible_partitions(clamp(newton_polygon(Q)), Q.degree)}


class TestInvariantSublattices:
    @pytest.mark.parametrize(
        "ell, coeffs, expected",
        [
            (3, [-27, 0, 1], {(2,), (1, 1)}),
            (3, [-3, -3, 1], {(2,)}),
            (3, [-9, 0, 0, 1], {(3,), (2, 1)}),
            (3, [-3, 1], {(1,)}),
            (2, [-8, 0, 1], {(2,), (1, 1)}),
            (5, [-25, 0, 0, 1], {(3,), (2, 1)}),
        ],
    )
    def test_sublattices_realize_exactly_the_admissible_types(self, ell, coeffs, expected):
        Q = WittPoly.from_ints(WittRing(ell, precision=6), coeffs)
        assert sublattice_types(Q) == admissible_types(Q) == expected

    def test_generated_polynomials_up_to_degree_three(self):
        rng = random.Random(5)
        for ell in (2, 3):
            ring = WittRing(ell, precision=6)
            for d in (1, 2, 3):
                for _ in range(4):
                    coeffs = [
                        0 if rng.random() < 0.2 else rng.choice([-1, 1]) * rng.randint(1, ell - 1) * ell ** rng.randint(1, 4)
                        for _ in range(d)
                    ]
                    Q = WittPoly.from_ints(ring, coeffs + [1])
                    assert sublattice_types(Q) == admissible_types(Q), coeffs

    def test_depth_bounded_by_precision(self, w5):
        model = construct_lift(WittPoly.from_ints(w5, [-5, 1]), YoungPolygon.of(1))
        with pytest.raises(PrecisionExhausted):
            enumerate_invariant_sublattices(model, 4)


class TestCokernel:
    def test_uniformizer(self, w5):
        model = construct_lift(WittPoly.from_ints(w5, [-5, 1]), YoungPolygon.of(1))
        assert cokernel_group(model, 0) == [1]

    def test_two_blocks(self, w5):
        model = construct_lift(WittPoly.from_ints(w5, [-25, -25, 1]), YoungPolygon.of(1, 1))
        assert cokernel_group(model, 0) == [1, 1]

    def test_unit_determinant_gives_trivial_group(self, w5):
        model = construct_lift(WittPoly.from_ints(w5, [-5, -5, 1]), YoungPolygon.of(2))
        assert cokernel_group(model, 1) == []

    def test_degree_uses_power_of_frobenius(self, w5):
        model = construct_lift(WittPoly.from_ints(w5, [-5, 1]), YoungPolygon.of(1), w5(-1))
        # F = −1 + 5 = 4, F² − 1 = 15
        assert cokernel_group(model, 1, 2) == [1]
