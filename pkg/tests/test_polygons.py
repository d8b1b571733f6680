import random
from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.algebra.extval import TOP
from app.algebra.polynomials import WittPoly
from app.algebra.witt_ring import WittRing
from app.models.polygon_models import NewtonPolygon, YoungPolygon
from app.torsion.polygons import (
    admissible_partitions,
    all_partitions,
    clamp,
    dominates,
    newton_polygon,
    paired_quadratic_partitions,
)
from app.utils.errors import DimensionMismatch, MalformedPolynomial


def labels(partitions):
    return [str(p) for p in partitions]


class TestNewtonPolygon:
    def test_polygon_of_local_factor(self, w5):
        np = newton_polygon(WittPoly.from_ints(w5, [-5, -5, 1]))
        assert np.vertices == ((0, 0), (2, 1))
        assert np.slope_label() == "(1/2)"

    def test_zero_constant_gives_top_endpoint(self, w5):
        np = newton_polygon(WittPoly.monomial(w5, 2))
        assert np.vertices == ((0, 0), (2, TOP))
        assert np.right_is_top
        assert np.evaluate(1) is TOP
        assert clamp(np).vertices == ((0, 0), (2, 2))

    def test_non_monic_is_rejected(self, w5):
        with pytest.raises(MalformedPolynomial):
            newton_polygon(WittPoly.from_ints(w5, [1, 5]))

    @pytest.mark.parametrize("label", ["(1/4)", "(1/3,1)", "(1/2,1/2)", "(2/3,1)", "(1/2,1,1)", "(3/4)", "(1,1,1,1)"])
    def test_slope_label_of_table_rows(self, label):
        assert NewtonPolygon.from_slopes(label).slope_label() == label

    def test_slopes_and_evaluation(self):
        np = NewtonPolygon.from_slopes("(1/3,1)")
        assert np.slopes() == [Fraction(1, 3)] * 3 + [Fraction(1)]
        assert np.evaluate(Fraction(3, 2)) == Fraction(1, 2)
        assert np.evaluate(4) == 2

    def test_dilate(self):
        assert NewtonPolygon.from_slopes("(1/2)").dilate(2).vertices == ((0, 0), (4, 2))

    def test_vertices_must_start_at_origin(self):
        with pytest.raises(ValidationError):
            NewtonPolygon(vertices=((1, 0), (2, 1)))

    def test_json_round_trip_keeps_top(self):
        np = NewtonPolygon(vertices=((0, 0), (1, 1), (3, TOP)))
        assert NewtonPolygon.from_json(np.to_json()) == np


class TestYoungPolygon:
    def test_vertices(self):
        assert YoungPolygon.of(2, 1).vertices() == [(0, 0), (2, 1), (3, 2)]

    def test_partition_is_sorted(self):
        assert YoungPolygon.of(1, 3).partition == (3, 1)

    def test_conjugate_and_union(self):
        assert YoungPolygon.of(3, 1).conjugate() == (2, 1, 1)
        assert YoungPolygon.of(2).union(YoungPolygon.of(1)) == YoungPolygon.of(2, 1)


class TestAdmissiblePartitions:
    def test_all_partitions_order(self):
        assert labels(all_partitions(4)) == ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]

    def test_table_label(self):
        assert labels(admissible_partitions(NewtonPolygon.from_slopes("(1/3,1)"), 4)) == ["(4)", "(3,1)"]

    def test_supersingular_slopes_allow_everything_of_slope_one(self):
        np = NewtonPolygon.from_slopes("(1,1,1,1)")
        assert len(admissible_partitions(np, 4)) == 5

    def test_steep_polygon_after_clamp(self):
        ring = WittRing(3, precision=6)
        np = newton_polygon(WittPoly.from_ints(ring, [-27, 0, 1]))
        assert labels(admissible_partitions(clamp(np), 2)) == ["(2)", "(1,1)"]

    def test_cube_root_polygon(self):
        ring = WittRing(3, precision=6)
        np = newton_polygon(WittPoly.from_ints(ring, [-9, 0, 0, 1]))
        assert labels(admissible_partitions(clamp(np), 3)) == ["(3)", "(2,1)"]

    def test_width_mismatch(self):
        with pytest.raises(DimensionMismatch):
            dominates(NewtonPolygon.from_slopes("(1/2)"), YoungPolygon.of(3))

    def test_clamping_preserves_admissible_set(self):
        rng = random.Random(11)
        for ell in (2, 3, 5):
            ring = WittRing(ell, precision=8)
            for _ in range(40):
                d = rng.randint(1, 6)
                coeffs = [ell ** rng.randint(0, 7) * rng.randint(1, ell - 1) for _ in range(d)]
                np = newton_polygon(WittPoly.from_ints(ring, coeffs + [1]))
                assert admissible_partitions(np, d) == admissible_partitions(clamp(np), d)

    def test_dominance_agrees_with_clamping_and_sampling(self):
        rng = random.Random(6)
        rings = {ell: WittRing(ell, precision=8) for ell in (2, 3, 5)}
        for _ in range(1000):
            ell = rng.choice([2, 3, 5])
            d = rng.randint(1, 6)
            coeffs = [0 if rng.random() < 0.1 else ell ** rng.randint(0, 7) * rng.randint(1, ell - 1) for _ in range(d)]
            np = newton_polygon(WittPoly.from_ints(rings[ell], coeffs + [1]))
            yp = rng.choice(all_partitions(d))
            decision = dominates(np, yp)
            assert dominates(clamp(np), yp) == decision, (coeffs, yp)
            # NP et YP sont affines entre deux abscisses entières
            sampled = all(np.evaluate(Fraction(k, 12)) >= yp.evaluate(Fraction(k, 12)) for k in range(12 * d + 1))
            assert sampled == decision, (coeffs, yp)


class TestPairedQuadratic:
    def test_ordinary_square(self):
        np_power = NewtonPolygon.from_slopes("(1/2)").dilate(2)
        assert labels(paired_quadratic_partitions(np_power, 2)) == ["(2,2)"]

    def test_steep_square(self):
        np_power = NewtonPolygon.from_slopes("(1,1)").dilate(2)
        assert labels(paired_quadratic_partitions(np_power, 2)) == ["(2,2)", "(2,1,1)", "(1,1,1,1)"]
