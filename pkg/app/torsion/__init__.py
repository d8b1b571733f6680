"""
Package de classification de la ℓ-torsion : polygones, relèvements de réseaux,
factorisations matricielles, classification générale et surfaces.
"""
from app.torsion.polygons import admissible_partitions, clamp, dominates, newton_polygon
from app.torsion.lattice_lift import construct_lift, frobenius_matrix, nilpotent_jordan_type
from app.torsion.isogeny_torsion import (
    classify_torsion,
    dual_polygon_map,
    dual_weil,
    local_decomposition,
    scheme_point_counts,
    validate_weil,
)
from app.torsion.surface_torsion import classify_surface, regularity_test

__all__ = [
    'admissible_partitions',
    'clamp',
    'dominates',
    'newton_polygon',
    'construct_lift',
    'frobenius_matrix',
    'nilpotent_jordan_type',
    'classify_torsion',
    'dual_polygon_map',
    'dual_weil',
    'local_decomposition',
    'scheme_point_counts',
    'validate_weil',
    'classify_surface',
    'regularity_test',
]
