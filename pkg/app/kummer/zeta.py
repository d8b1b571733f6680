"""
Fonctions zêta des surfaces abéliennes et de leurs surfaces de Kummer.

P_i(t) = det(1 − tF | ⋀^i V_ℓ(A)) se calcule exactement à partir des sommes
de Newton de f_A : la trace de ⋀^i F^m est le i-ème polynôme symétrique
élémentaire des ω^m, lu sur le polynôme changé de base f_m.
"""
from math import comb
from typing import List, Optional, Tuple, Union

from app.algebra.int_poly import IntPoly
from app.models.kummer_models import BVector, ZetaFactored, sort_bvectors
from app.models.torsion_models import WeilPolynomial
from app.torsion.isogeny_torsion import scheme_point_counts
from app.torsion.surface_torsion import classify_surface
from app.utils.errors import BadBVector, CharacteristicTwo, WrongDegree
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
KummerEntry = Tuple[BVector, ZetaFactored]

A2_ORDER = 16


def _as_poly(f: Union[WeilPolynomial, IntPoly]) -> IntPoly:
    return f.coeffs if isinstance(f, WeilPolynomial) else f


def exterior_square_poly(f: Union[WeilPolynomial, IntPoly]) -> IntPoly:
    """
    P₂(t) = ∏_{i<j} (1 − ω_iω_j t), par les sommes (p_k² − p_{2k})/2.

    Example:
        >>> exterior_square_poly(IntPoly.from_leading_first([1, -4])).leading_first()
        [1]
        >>> exterior_square_poly(IntPoly.from_leading_first([1, 2, 7])).leading_first()
        [-7, 1]
    """
    poly = _as_poly(f)
    n = poly.degree
    size = comb(n, 2)
    sums = poly.power_sums(2 * size)
    pair_sums = [(sums[k - 1] ** 2 - sums[2 * k - 1]) // 2 for k in range(1, size + 1)]
    return IntPoly.from_power_sums(size, pair_sums).reverse(size)


def exterior_power_poly(f: Union[WeilPolynomial, IntPoly], k: int) -> IntPoly:
    """P_k(t) = ∏_{|J|=k} (1 − t·∏_{j∈J} ω_j), pour 0 ≤ k ≤ deg f."""
    poly = _as_poly(f)
    n = poly.degree
    if not 0 <= k <= n:
        raise WrongDegree(f"Puissance extérieure {k} d'un polynôme de degré {n}")
    size = comb(n, k)
    sign = -1 if k % 2 else 1
    sums = [sign * poly.base_change(m).coeff(n - k) for m in range(1, size + 1)]
    return IntPoly.from_power_sums(size, sums).reverse(size)


def zeta_abelian(f: Union[WeilPolynomial, IntPoly]) -> ZetaFactored:
    """Z_A(t) = ∏_{i=0}^{2g} P_i(t)^{(−1)^{i+1}}."""
    poly = _as_poly(f)
    factors = []
    for i in range(poly.degree + 1):
        P = exterior_square_poly(poly) if i == 2 else exterior_power_poly(poly, i)
        factors.append((P, 1 if i % 2 else -1))
    return ZetaFactored(factors=tuple(factors))


def kummer_polynomial(weil: WeilPolynomial, b: BVector) -> IntPoly:
    """P(t) = P₂(t)·∏_r (1 − (qt)^r)^{b_r}, de degré 22."""
    P = exterior_square_poly(weil)
    for r, count in b.counts:
        P = P * (IntPoly([1]) - IntPoly.monomial(r, weil.q ** r)) ** count
    return P


def kummer_zeta(weil: WeilPolynomial, b: BVector) -> ZetaFactored:
    """
    Z_S(t) = (1 − t)⁻¹·P(t)⁻¹·(1 − q²t)⁻¹.

    Raises:
        WrongDegree: si f_A n'est pas de degré 4
        BadBVector: si Σ r·b_r ≠ 16
    """
    if weil.degree != 4:
        raise WrongDegree("Surface de Kummer : deg f_A = 4 attendu")
    if b.total != A2_ORDER:
        raise BadBVector(f"Σ r·b_r = {b.total} ≠ {A2_ORDER} pour {b.label()}")
    return ZetaFactored(factors=(
        (IntPoly([1, -1]), -1),
        (kummer_polynomial(weil, b), -1),
        (IntPoly([1, -weil.q ** 2]), -1),
    ))


def quotient_point_count(weil: WeilPolynomial, degree: int = 1) -> int:
    """|(A/±1)(F_{q^r})| = (f_r(1) + f_r(−1))/2."""
    f_r = weil.coeffs.base_change(degree)
    return (f_r(1) + f_r(-1)) // 2


def kummer_point_count(weil: WeilPolynomial, points: Union[int, BVector], degree: int = 1) -> int:
    """
    |S(F_{q^r})| = (f_r(1) + f_r(−1))/2 + q^r·|A[2](F_{q^r})|.

    Args:
        weil (WeilPolynomial): polynôme de Weil de la surface
        points (Union[int, BVector]): |A[2](F_{q^r})|, ou le b-vecteur dont on le déduit
        degree (int): r ≥ 1

    Example:
        >>> weil = WeilPolynomial(coeffs=IntPoly.from_leading_first([1, -8, 24, -32, 16]), q=4, p=2)
        >>> kummer_point_count(weil, 16)
        105
    """
    rational = points.points_over(degree) if isinstance(points, BVector) else points
    return quotient_point_count(weil, degree) + weil.q ** degree * rational


def enumerate_kummer_zetas(
    weil: WeilPolynomial,
    precision: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[KummerEntry]:
    """
    b-vecteurs possibles de A[2] dans la classe d'isogénie, avec la zêta de Kummer associée.

    Raises:
        CharacteristicTwo: si p = 2
        WrongDegree: si deg f_A ≠ 4
    """
    if weil.p == 2:
        raise CharacteristicTwo("Surfaces de Kummer non définies en caractéristique 2")
    if weil.degree != 4:
        raise WrongDegree(f"Surface attendue : deg f_A = 4, reçu {weil.degree}")
    case = classify_surface(weil, 2, precision, seed)
    vectors = sort_bvectors([scheme_point_counts(cls, 2) for cls in case.classes])
    logger.info(f"{len(vectors)} b-vecteur(s) pour le cas {case.case_id}")
    return [(b, kummer_zeta(weil, b)) for b in vectors]
