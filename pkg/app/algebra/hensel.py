"""
Relèvement de Hensel d'une factorisation modulo ℓ en facteurs premiers entre eux.

On relève une paire f ≡ g·h chiffre par chiffre (Hensel linéaire) : à
l'étape k, e = (f − g·h)/ℓ^k est réduit mod ℓ, puis corrigé grâce aux
coefficients de Bézout s·ḡ + t·h̄ = 1. Une liste de groupes est traitée en
détachant les groupes un par un.
"""
from typing import List, Sequence, Tuple

from app.algebra.int_poly import IntPoly
from app.algebra.polynomials import FFPoly, WittPoly
from app.algebra.witt_ring import FiniteField, WittRing
from app.utils.errors import FactorizationMismatch, MalformedPolynomial, NotCoprime
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
Group = Tuple[FFPoly, int]


def _lift_residue(poly: FFPoly, ring: WittRing) -> WittPoly:
    return WittPoly(ring, [ring(c.coeffs) for c in poly.coeffs])


def _lift_pair(f: WittPoly, g_bar: FFPoly, h_bar: FFPoly) -> Tuple[WittPoly, WittPoly]:
    """Relève f ≡ ḡ·h̄ (unitaires, premiers entre eux) en f = g·h à la précision de f."""
    ring = f.ring
    gcd, s_bar, t_bar = g_bar.xgcd(h_bar)
    if gcd.degree != 0:
        raise NotCoprime(f"Facteurs modulo {ring.ell} non premiers entre eux : pgcd {gcd}")
    g, h = _lift_residue(g_bar, ring), _lift_residue(h_bar, ring)
    for k in range(1, ring.precision):
        error = f - g * h
        if error.is_zero():
            break
        e_bar = error.divide_by_ell_power(k).reduce()
        b_bar = (t_bar * e_bar) % g_bar
        a_bar = (e_bar - b_bar * h_bar).exact_div(g_bar)
        step = ring.ell ** k
        g = g + _lift_residue(b_bar, ring).scale(step)
        h = h + _lift_residue(a_bar, ring).scale(step)
        logger.debug(f"Hensel : étape {k} sur {ring.precision - 1}")
    return g, h


def hensel_lift(f: WittPoly, factors: Sequence[FFPoly]) -> List[WittPoly]:
    """
    Relève une factorisation f̄ = ∏ ḡ_i (ḡ_i unitaires, deux à deux premiers entre eux).

    Args:
        f (WittPoly): polynôme unitaire sur W
        factors (Sequence[FFPoly]): facteurs résiduels sur le corps résiduel de W

    Returns:
        List[WittPoly]: relèvements unitaires g_i ≡ ḡ_i avec ∏ g_i = f à la précision de W

    Raises:
        NotCoprime: si deux facteurs partagent un facteur commun
        FactorizationMismatch: si ∏ ḡ_i ≠ f̄
    """
    if not f.monic_exact:
        raise MalformedPolynomial("Le relèvement de Hensel exige un polynôme unitaire")
    f_bar = f.reduce()
    product = FFPoly(f_bar.ring, [1])
    for factor in factors:
        product = product * factor
    if product != f_bar:
        raise FactorizationMismatch(f"Le produit des groupes ne vaut pas {f_bar}")
    lifted: List[WittPoly] = []
    rest = f
    for index, g_bar in enumerate(factors[:-1]):
        h_bar = FFPoly(f_bar.ring, [1])
        for other in factors[index + 1:]:
            h_bar = h_bar * other
        g, rest = _lift_pair(rest, g_bar.monic(), h_bar.monic())
        lifted.append(g)
    if factors:
        lifted.append(rest)
    return lifted


def hensel_lift_grouped(f: IntPoly, groups: Sequence[Group], ell: int, precision: int) -> List[WittPoly]:
    """
    Relève les groupes (h̄_i, d_i) de f̄ en facteurs unitaires f_i ≡ h̄_i^{d_i} mod ℓ.

    Args:
        f (IntPoly): polynôme unitaire à coefficients entiers
        groups (Sequence[Group]): couples (h̄_i irréductible sur F_ℓ, multiplicité d_i)
        ell (int): nombre premier ℓ
        precision (int): précision N

    Returns:
        List[WittPoly]: f_i sur ℤ/ℓ^N avec ∏ f_i ≡ f mod ℓ^N

    Example:
        >>> f = IntPoly.from_leading_first([1, -1, 8, -7, 49])
        >>> F5 = FiniteField(5)
        >>> groups = [(FFPoly.from_ints(F5, [-1, 1]), 2), (FFPoly.from_ints(F5, [-2, 1]), 2)]
        >>> [g.to_int_poly().leading_first() for g in hensel_lift_grouped(f, groups, 5, 2)]
        [[1, 8, 16], [1, 16, 14]]
    """
    if not f.is_monic:
        raise MalformedPolynomial("Le polynôme doit être unitaire")
    ring = WittRing(ell, None, precision)
    field = FiniteField(ell)
    powers = [FFPoly(field, [field(c) for c in h_bar.coeffs]) ** d for h_bar, d in groups]
    lifted = hensel_lift(f.to_witt(ring), powers)
    logger.debug(f"Relèvement de Hensel de {len(groups)} groupe(s) à la précision {ell}^{precision}")
    return lifted
