"""
Package des surfaces de Kummer : fonctions zêta et tables de b-vecteurs.
"""
from app.kummer.zeta import (
    enumerate_kummer_zetas,
    exterior_square_poly,
    kummer_point_count,
    kummer_zeta,
    zeta_abelian,
)
from app.kummer.tables import generate_tables, render_json, render_tsv, write_tables

__all__ = [
    'enumerate_kummer_zetas',
    'exterior_square_poly',
    'kummer_point_count',
    'kummer_zeta',
    'zeta_abelian',
    'generate_tables',
    'render_json',
    'render_tsv',
    'write_tables',
]
