"""
Arithmétique exacte : anneaux de Witt tronqués, polynômes, matrices et forme de Smith.
"""
from app.algebra.extval import TOP
from app.algebra.int_poly import IntPoly
from app.algebra.witt_ring import FiniteField, WittElem, WittRing, teichmueller_lift
from app.algebra.polynomials import FFPoly, PolyRing, WittPoly, ff_factor
from app.algebra.matrices import WittMatrix, block_diag

__all__ = [
    'TOP',
    'IntPoly',
    'FiniteField',
    'WittElem',
    'WittRing',
    'teichmueller_lift',
    'FFPoly',
    'PolyRing',
    'WittPoly',
    'ff_factor',
    'WittMatrix',
    'block_diag',
]
