"""
Classification complète de A[ℓ] pour une surface abélienne.

Le polynôme f_A = t⁴ + a₁t³ + a₂t² + qa₁t + q² est aiguillé selon :
- sa factorisation sans facteur carré sur ℤ (racines multiples ou non)
- la forme de sa réduction modulo ℓ

Les cas sans racine multiple (1 à 5) reprennent `classify_torsion` ; les cas
6 à 8 sont traités ici. Le cas 7c(ii) est certifié par une factorisation
matricielle.
"""
from typing import List, Optional, Tuple

from app.algebra.int_poly import IntPoly
from app.algebra.polynomials import FFPoly, ff_factor
from app.algebra.witt_ring import FiniteField, WittRing, teichmueller_lift
from app.models.polygon_models import NewtonPolygon, YoungPolygon
from app.models.torsion_models import (
    SurfaceCase,
    SurfaceConditions,
    TorsionClass,
    WeilPolynomial,
    sort_classes,
)
from app.torsion.isogeny_torsion import (
    check_ell,
    classes_from_choices,
    classify_torsion,
    is_squarefree,
)
from app.torsion.lattice_lift import construct_lift
from app.torsion.matrix_factor import cokernel_module_type, factorization_from_generators, swap_partner
from app.torsion.polygons import admissible_partitions, clamp, newton_polygon, paired_quadratic_partitions
from app.utils import config
from app.utils.errors import InternalError, UnreachableCase, WrongDegree
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
Shape = List[Tuple[int, int]]


def regularity_test(a1: int, a2: int, q: int, ell: int) -> bool:
    """
    Forme close du critère de Dedekind pour f̄ = h̄² : vrai si l'anneau
    ℤ_ℓ[t]/f est régulier (et N ≠ 0 est alors forcé).

    Example:
        >>> regularity_test(1, 1, 2, 3), regularity_test(3, 5, 7, 3)
        (True, False)
    """
    quantity, modulus = regularity_quantity(a1, a2, q, ell)
    return quantity % modulus != 0


def regularity_quantity(a1: int, a2: int, q: int, ell: int) -> Tuple[int, int]:
    """(a₁² − 4a₂ + 8q, ℓ²) pour ℓ impair, (a₁ + a₂ + 1 − 2q, 4) pour ℓ = 2."""
    if ell == 2:
        return a1 + a2 + 1 - 2 * q, 4
    return a1 * a1 - 4 * a2 + 8 * q, ell * ell


def dedekind_regular(f: IntPoly, ell: int, seed: Optional[int] = None) -> bool:
    """
    Critère de Dedekind exact : avec f̄ = ∏ h̄_i^{e_i} et h = ∏ h_i^{e_i}
    (représentants entiers), ℤ_ℓ[t]/f est régulier si et seulement si aucun
    h̄_i répété ne divise (f − h)/ℓ modulo ℓ.
    """
    field = FiniteField(ell)
    groups = ff_factor(f.reduce(ell), config.SEED if seed is None else seed)
    h = IntPoly([1])
    for hbar, e in groups:
        h = h * IntPoly(c.lift_int() for c in hbar.coeffs) ** e
    g_bar = FFPoly.from_ints(field, (f - h).exact_div_int(ell).coeffs)
    for hbar, e in groups:
        if e >= 2 and (g_bar % hbar).is_zero():
            return False
    return True


def _residue_shape(groups) -> Shape:
    return sorted((hbar.degree, e) for hbar, e in groups)


def _linear(ell: int, root: int) -> FFPoly:
    return FFPoly.from_ints(FiniteField(ell), [-root, 1])


def _shifted_polygon(poly: IntPoly, hbar: FFPoly, ell: int) -> NewtonPolygon:
    """Np(P(t + α)) avec α le relèvement de Teichmüller de la racine de h̄ linéaire."""
    ring = WittRing(ell, None, config.default_precision(4))
    alpha = teichmueller_lift(-hbar.coeff(0), ring)
    return newton_polygon(poly.to_witt(ring).shift(alpha))


def _squarefree_case(weil: WeilPolynomial, ell: int, shape: Shape, conditions: dict) -> str:
    multiple = [(deg, e) for deg, e in shape if e > 1]
    if not multiple:
        return "1"
    if multiple == [(1, 2)]:
        return "2"
    if multiple == [(1, 2), (1, 2)]:
        return "3"
    if shape == [(2, 2)]:
        a1, a2 = weil.coeffs.coeff(3), weil.coeffs.coeff(2)
        quantity, modulus = regularity_quantity(a1, a2, weil.q, ell)
        closed_form = quantity % modulus != 0
        exact = dedekind_regular(weil.coeffs, ell)
        if closed_form != exact:
            logger.warning(
                f"Forme close de régularité ({closed_form}) et critère de Dedekind ({exact}) en désaccord"
            )
        conditions.update(
            regularity_quantity=quantity,
            regularity_modulus=modulus,
            regular=closed_form,
            dedekind_regular=exact,
        )
        return "4"
    if shape == [(1, 4)]:
        return "5"
    raise UnreachableCase(f"Forme résiduelle {shape} impossible pour f_A sans racine multiple")


def _paired_case(P: IntPoly, ell: int, seed: int) -> Tuple[str, List[TorsionClass]]:
    groups = ff_factor(P.reduce(ell), seed)
    if all(e == 1 for _, e in groups):
        choices = [(hbar, [YoungPolygon.of(1, 1)]) for hbar, _ in groups]
        return "6a", classes_from_choices(choices)
    (hbar, _), = groups
    np_power = _shifted_polygon(P, hbar, ell).dilate(2)
    return "6b", classes_from_choices([(hbar, paired_quadratic_partitions(np_power, 2))])


def _repeated_root_case(
    P1: IntPoly, r: int, ell: int, seed: int, conditions: dict
) -> Tuple[str, List[TorsionClass]]:
    root_hbar = _linear(ell, r)
    p2_bar = root_hbar ** 2
    p1_bar = P1.reduce(ell)
    p1_at_root = P1(r)
    divides = p1_at_root % (ell * ell) == 0
    conditions.update(root=r, p1_at_root=p1_at_root, ell_squared_divides_p1=divides)
    double = (root_hbar, [YoungPolygon.of(1, 1)])

    if p1_bar != p2_bar:
        groups = ff_factor(p1_bar, seed)
        if any(hbar == root_hbar for hbar, _ in groups):
            raise UnreachableCase("P̄₁ partage une racine simple avec (t ∓ √q)")
        if all(e == 1 for _, e in groups):
            return "7a", classes_from_choices([(hbar, [YoungPolygon.of(1)]) for hbar, _ in groups] + [double])
        (hbar, d), = groups
        np = _shifted_polygon(P1, hbar, ell)
        return "7b", classes_from_choices([(hbar, admissible_partitions(clamp(np), d)), double])

    shifted = P1.shift(r)
    cubic = shifted * IntPoly([0, 1])
    ring = WittRing(ell, None, config.default_precision(4))
    np = newton_polygon(cubic.to_witt(ring))
    partitions = [p.union(YoungPolygon.of(1)) for p in admissible_partitions(clamp(np), 3)]
    if divides:
        partitions.append(_certified_square_type(shifted, cubic, ring))
    return ("7c_ii" if divides else "7c_i"), classes_from_choices([(root_hbar, partitions)])


def _certified_square_type(shifted: IntPoly, cubic: IntPoly, ring: WittRing) -> YoungPolygon:
    """
    Type (2,2) réalisé par la factorisation (Y, X) : X présente le relèvement
    de type (1,1) de P₁(t + r) et Y = t·P₁(t + r)·X⁻¹ ≡ diag(t², t²).
    """
    model = construct_lift(shifted.to_witt(ring), YoungPolygon.of(1, 1))
    mf = factorization_from_generators(model, cubic.to_witt(ring))
    partner = swap_partner(mf)
    rank, jordan = cokernel_module_type(partner.X, partner.f1)
    if rank != 4 or jordan != YoungPolygon.of(2, 2):
        raise InternalError(f"Factorisation de type {jordan} (rang {rank}) au lieu de (2,2)")
    logger.debug("Cas 7c(ii) certifié par factorisation matricielle")
    return jordan


def _sqf_parts(f: IntPoly) -> List[Tuple[IntPoly, int]]:
    _, parts = f.to_sympy().sqf_list()
    return sorted(((IntPoly.from_sympy(poly), e) for poly, e in parts), key=lambda item: item[1])


def classify_surface(
    weil: WeilPolynomial,
    ell: int,
    precision: Optional[int] = None,
    seed: Optional[int] = None,
) -> SurfaceCase:
    """
    Cas de la classification et classes possibles de A[ℓ] pour une surface abélienne.

    Args:
        weil (WeilPolynomial): polynôme de Weil de degré 4
        ell (int): nombre premier ℓ ≠ p

    Returns:
        SurfaceCase: identifiant du cas, conditions évaluées, classes triées

    Raises:
        EllEqualsP: si ℓ = p
        WrongDegree: si deg f_A ≠ 4
        UnreachableCase: si la factorisation contredit la classification
    """
    if weil.degree != 4:
        raise WrongDegree(f"Surface attendue : deg f_A = 4, reçu {weil.degree}")
    check_ell(weil, ell)
    seed = config.SEED if seed is None else seed
    f = weil.coeffs
    groups = ff_factor(f.reduce(ell), seed)
    shape = _residue_shape(groups)
    squarefree = is_squarefree(f)
    conditions = dict(
        residue_shape=shape,
        squarefree=squarefree,
        a1=f.coeff(3),
        a2=f.coeff(2),
    )

    if squarefree:
        case_id = _squarefree_case(weil, ell, shape, conditions)
        classes = classify_torsion(weil, ell, precision, seed)
    else:
        parts = _sqf_parts(f)
        multiplicities = [e for _, e in parts]
        if multiplicities == [2] and parts[0][0].degree == 2:
            case_id, classes = _paired_case(parts[0][0], ell, seed)
        elif multiplicities == [1, 2] and parts[1][0].degree == 1 and parts[0][0].degree == 2:
            r = -parts[1][0].coeff(0)
            if r * r != weil.q:
                raise UnreachableCase(f"Racine double {r} différente de ±√q")
            case_id, classes = _repeated_root_case(parts[0][0], r, ell, seed, conditions)
        elif multiplicities == [4]:
            r = -parts[0][0].coeff(0)
            case_id = "8"
            classes = classes_from_choices([(_linear(ell, r), [YoungPolygon.of(1, 1, 1, 1)])])
        else:
            raise UnreachableCase(f"Facteurs multiples {[(p.leading_first(), e) for p, e in parts]} impossibles")

    logger.info(f"Surface : cas {case_id}, {len(classes)} classe(s) de A[{ell}]")
    return SurfaceCase(case_id=case_id, conditions=SurfaceConditions(**conditions), classes=tuple(sort_classes(classes)))
