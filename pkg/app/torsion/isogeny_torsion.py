"""
Classification de A[ℓ] à partir du polynôme de Weil f_A.

Étapes :
1. validation de f_A (équation fonctionnelle exacte, modules des racines)
2. décomposition locale : f̄ = ∏ h̄_i^{d_i}, relèvement de Hensel f = ∏ f_i,
   puis Q_i = f_i(t + α_i) sur l'extension non ramifiée W(h̄_i)
3. produit cartésien des types de Jordan admissibles par facteur
4. comptage des points de degré r des schémas obtenus et dualité
"""
import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy
import sympy

from app.algebra.hensel import hensel_lift, hensel_lift_grouped
from app.algebra.int_poly import IntPoly
from app.algebra.matrices import WittMatrix, block_diag
from app.algebra.polynomials import FFPoly, WittPoly, ff_factor
from app.algebra.witt_ring import FiniteField, WittRing, teichmueller_lift
from app.models.kummer_models import BVector
from app.models.polygon_models import NewtonPolygon, YoungPolygon
from app.models.torsion_models import (
    DistinguishedScheme,
    LocalFactor,
    TorsionClass,
    WeilPolynomial,
    hbar_key,
    sort_classes,
)
from app.torsion.lattice_lift import cokernel_group, construct_lift, frobenius_matrix
from app.torsion.polygons import admissible_partitions, clamp, newton_polygon
from app.utils import config
from app.utils.errors import (
    EllEqualsP,
    FunctionalEquationViolated,
    MalformedPolynomial,
    NotPolynomial,
    NotPrimePower,
    NotSquarefree,
    PrecisionExhausted,
    RootModulusSuspect,
    UnpairedFactor,
    WrongDegree,
    ZeroConstantTerm,
)
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
LocalData = Tuple[FFPoly, int, NewtonPolygon]
LocalChoices = Tuple[FFPoly, Sequence[YoungPolygon]]
Pairing = Dict[int, int]


def _prime_of(q: int) -> int:
    if q < 2:
        raise NotPrimePower(f"q = {q} n'est pas une puissance d'un nombre premier")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise NotPrimePower(f"q = {q} n'est pas une puissance d'un nombre premier")
    return int(next(iter(factors)))


def is_squarefree(f: IntPoly) -> bool:
    """Test exact pgcd(f, f′) = 1 sur ℚ[t]."""
    return sympy.gcd(f.to_sympy(), f.derivative().to_sympy()).degree() == 0


def validate_weil(f: IntPoly, q: int, force: bool = False, tolerance: Optional[float] = None) -> WeilPolynomial:
    """
    Valide un polynôme de Weil.

    Args:
        f (IntPoly): polynôme unitaire de degré pair 2g
        q (int): cardinal du corps de base
        force (bool): rétrograder l'échec du test |ω| = √q en avertissement
        tolerance (Optional[float]): tolérance relative (défaut TORSION_ATLAS_ROOT_TOLERANCE)

    Returns:
        WeilPolynomial: polynôme validé

    Raises:
        NotPrimePower: si q n'est pas une puissance d'un nombre premier
        MalformedPolynomial: si f n'est pas unitaire de degré pair ≥ 2
        FunctionalEquationViolated: si a_{2g−i} ≠ q^{g−i}·a_i
        RootModulusSuspect: si une racine n'a pas le module √q (sauf `force`)

    Example:
        >>> validate_weil(IntPoly.from_leading_first([1, 2, 7]), 7).genus
        1
    """
    p = _prime_of(q)
    if not f.is_monic or f.degree < 2 or f.degree % 2:
        raise MalformedPolynomial(f"f doit être unitaire de degré pair ≥ 2 (degré {f.degree})")
    g = f.degree // 2
    a = f.leading_first()
    for i in range(g + 1):
        if a[2 * g - i] != q ** (g - i) * a[i]:
            raise FunctionalEquationViolated(
                f"a_{2 * g - i} = {a[2 * g - i]} ≠ q^{g - i}·a_{i} = {q ** (g - i) * a[i]}"
            )

    tol = config.ROOT_TOLERANCE if tolerance is None else tolerance
    squarefree_part = f.to_sympy().sqf_part()
    roots = numpy.roots([float(c) for c in squarefree_part.all_coeffs()])
    target = numpy.sqrt(float(q))
    worst = float(numpy.max(numpy.abs(numpy.abs(roots) - target))) / target if len(roots) else 0.0
    if worst > tol:
        message = f"Écart relatif {worst:.3e} entre |ω| et √{q}"
        if not force:
            raise RootModulusSuspect(message)
        logger.warning(f"{message} : ignoré (--force-weil)")
    logger.debug(f"Polynôme de Weil validé : g={g}, q={q}, p={p}")
    return WeilPolynomial(coeffs=f, q=q, p=p)


def check_ell(weil: WeilPolynomial, ell: int) -> None:
    if ell == weil.p:
        raise EllEqualsP(f"ℓ = {ell} est la caractéristique de F_q")


def _hbar_ints(hbar: FFPoly) -> List[int]:
    return [c.coeffs[0] for c in hbar.coeffs]


def local_decomposition(
    weil: WeilPolynomial,
    ell: int,
    precision: Optional[int] = None,
    seed: Optional[int] = None,
    alpha_rng: Optional[random.Random] = None,
) -> List[LocalFactor]:
    """
    Triplets distingués (f_i, h̄_i, Q_i) de f_A en ℓ.

    Args:
        weil (WeilPolynomial): polynôme de Weil validé
        ell (int): nombre premier ℓ ≠ p
        precision (Optional[int]): précision N (défaut deg f + 2)
        seed (Optional[int]): graine de la factorisation modulo ℓ
        alpha_rng (Optional[random.Random]): si fourni, α est remplacé par α + ℓ·u
            avec u aléatoire (autre relèvement de la même racine résiduelle)

    Returns:
        List[LocalFactor]: un facteur par h̄_i irréductible, dans l'ordre canonique

    Raises:
        EllEqualsP: si ℓ = p
    """
    check_ell(weil, ell)
    f = weil.coeffs
    n = precision or config.default_precision(f.degree)
    groups = ff_factor(f.reduce(ell), config.SEED if seed is None else seed)
    lifts = hensel_lift_grouped(f, groups, ell, n)

    factors: List[LocalFactor] = []
    for (hbar, d), f_i in zip(groups, lifts):
        if hbar.degree == 1:
            ring = f_i.ring
            alpha = teichmueller_lift(-hbar.coeff(0), ring)
            local = f_i
        else:
            ring = WittRing(ell, _hbar_ints(hbar), n)
            alpha = teichmueller_lift(ring.gen(), ring)
            field = ring.residue_field()
            linear = FFPoly(field, [-field.gen(), field(1)])
            hbar_ext = FFPoly(field, [field(c.coeffs) for c in hbar.coeffs])
            f_ext = WittPoly(ring, [ring(c) for c in f_i.coeffs])
            local, _ = hensel_lift(f_ext, [linear ** d, hbar_ext.exact_div(linear) ** d])
        if alpha_rng is not None:
            alpha = alpha + ring(ell) * ring.random_element(alpha_rng)
        Q = local.shift(alpha)
        factors.append(LocalFactor(hbar=hbar, d=d, f_lift=f_i, ring=ring, alpha=alpha, Q=Q, np=newton_polygon(Q)))
        logger.debug(f"Facteur local h̄={hbar}, d={d}, pentes {factors[-1].np.slope_label()}")
    return factors


def classes_from_choices(choices: Sequence[LocalChoices]) -> List[TorsionClass]:
    """Produit cartésien des partitions proposées pour chaque h̄."""
    classes = []
    for combo in itertools.product(*(partitions for _, partitions in choices)):
        summands = tuple(
            DistinguishedScheme(hbar=hbar, partition=partition)
            for (hbar, _), partition in zip(choices, combo)
        )
        classes.append(TorsionClass(summands=summands))
    return sort_classes(classes)


def classes_from_local_data(data: Sequence[LocalData]) -> List[TorsionClass]:
    """Classes réalisables à partir des triplets (h̄, d, Np(Q))."""
    return classes_from_choices([(hbar, admissible_partitions(clamp(np), d)) for hbar, d, np in data])


def classify_torsion(
    weil: WeilPolynomial,
    ell: int,
    precision: Optional[int] = None,
    seed: Optional[int] = None,
    alpha_rng: Optional[random.Random] = None,
) -> List[TorsionClass]:
    """
    Toutes les classes d'isomorphie possibles de A[ℓ] pour f_A sans facteur carré.

    Args:
        weil (WeilPolynomial): polynôme de Weil validé
        ell (int): nombre premier ℓ ≠ p

    Returns:
        List[TorsionClass]: classes triées dans l'ordre canonique

    Raises:
        EllEqualsP: si ℓ = p
        NotSquarefree: si f_A a une racine multiple (utiliser `surface` en dimension 2)
    """
    check_ell(weil, ell)
    if not is_squarefree(weil.coeffs):
        hint = " ; utiliser la commande `surface`" if weil.degree == 4 else ""
        raise NotSquarefree(f"f_A a une racine multiple{hint}")
    decomposition = local_decomposition(weil, ell, precision, seed, alpha_rng)
    classes = classes_from_local_data([(lf.hbar, lf.d, lf.np) for lf in decomposition])
    logger.info(f"{len(classes)} classe(s) de A[{ell}] pour {weil.coeffs}")
    return classes


# --- comptage des points ----------------------------------------------------

def class_frobenius(cls: TorsionClass, ell: int) -> WittMatrix:
    """Somme directe des matrices M(h̄)⊗I_d + I⊗N des schémas de la classe."""
    field = FiniteField(ell)
    blocks = [frobenius_matrix(s.hbar, s.partition) for s in cls.summands]
    return block_diag(field, blocks)


def frobenius_order(matrix: WittMatrix) -> int:
    """Plus petit e ≥ 1 avec F^e = I."""
    identity = WittMatrix.identity(matrix.ring, matrix.nrows)
    power, order = matrix, 1
    while power != identity:
        power = power * matrix
        order += 1
    return order


def scheme_point_counts(cls: TorsionClass, ell: int, max_degree: Optional[int] = None) -> BVector:
    """
    Nombre b_r de points de degré r de la classe, par inversion de Möbius de
    |Fix(F^e)| = ℓ^{n − rang(F^e − I)}.

    Args:
        cls (TorsionClass): classe de schémas distingués
        ell (int): nombre premier ℓ
        max_degree (Optional[int]): degré maximal (défaut : ordre de F)

    Returns:
        BVector: b-vecteur (Σ r·b_r = ℓ^n dès que max_degree ≥ ordre de F)

    Example:
        >>> F2 = FiniteField(2)
        >>> cls = TorsionClass(summands=(DistinguishedScheme(hbar=FFPoly.from_ints(F2, [1, 1]), partition=YoungPolygon.of(4)),))
        >>> scheme_point_counts(cls, 2).label()
        'b1=2,b2=1,b4=3'
    """
    frobenius = class_frobenius(cls, ell)
    n = frobenius.nrows
    top = max_degree or frobenius_order(frobenius)
    identity = WittMatrix.identity(frobenius.ring, n)
    fixed: Dict[int, int] = {}
    power = identity
    for e in range(1, top + 1):
        power = power * frobenius
        fixed[e] = ell ** (n - (power - identity).rank())
    counts = {}
    for r in range(1, top + 1):
        total = sum(int(sympy.mobius(r // e)) * fixed[e] for e in sympy.divisors(r))
        counts[r] = total // r
    return BVector(counts=counts)


# --- dualité ----------------------------------------------------------------

def dual_weil(f: Union[WeilPolynomial, IntPoly], q: int) -> IntPoly:
    """
    Polynôme unitaire de racines q/ω : t^d·f(q/t)/f(0).

    Raises:
        ZeroConstantTerm: si f(0) = 0
        NotPolynomial: si la division par f(0) n'est pas exacte

    Example:
        >>> dual_weil(IntPoly.from_leading_first([1, -1]), 7).leading_first()
        [1, -7]
    """
    poly = f.coeffs if isinstance(f, WeilPolynomial) else f
    constant = poly.coeff(0)
    if constant == 0:
        raise ZeroConstantTerm("f(0) = 0 : dual non défini")
    d = poly.degree
    scaled = [poly.coeff(d - j) * q ** (d - j) for j in range(d + 1)]
    if any(c % constant for c in scaled):
        raise NotPolynomial(f"t^d·f(q/t) n'est pas divisible par f(0) = {constant}")
    return IntPoly(c // constant for c in scaled)


def dual_residue(hbar: FFPoly, q: int) -> FFPoly:
    """Polynôme résiduel unitaire de racines q/ᾱ."""
    field = hbar.ring
    m = hbar.degree
    qbar = field(q)
    coeffs = [hbar.coeff(m - j) * qbar ** (m - j) for j in range(m + 1)]
    return FFPoly(field, coeffs).monic()


def dual_polygon_map(decomposition: Sequence[LocalFactor], q: int) -> Pairing:
    """
    Appariement i ↦ j tel que les racines résiduelles de h̄_j soient les q/ᾱ, ᾱ racine de h̄_i.

    Raises:
        UnpairedFactor: si un facteur n'a pas de partenaire de même multiplicité
    """
    index = {hbar_key(lf.hbar): j for j, lf in enumerate(decomposition)}
    pairing: Pairing = {}
    for i, lf in enumerate(decomposition):
        partner = index.get(hbar_key(dual_residue(lf.hbar, q)))
        if partner is None or decomposition[partner].d != lf.d:
            raise UnpairedFactor(f"Aucun partenaire dual pour h̄ = {lf.hbar}")
        pairing[i] = partner
    return pairing


def dual_torsion_class(decomposition: Sequence[LocalFactor], cls: TorsionClass, q: int) -> TorsionClass:
    """Classe de Â[ℓ] : la partition de h̄_i est transportée sur son partenaire dual."""
    pairing = dual_polygon_map(decomposition, q)
    summands = []
    for i, lf in enumerate(decomposition):
        partition = cls.partition_of(lf.hbar)
        if partition is None:
            raise UnpairedFactor(f"La classe ne contient pas de terme pour h̄ = {lf.hbar}")
        summands.append(DistinguishedScheme(hbar=decomposition[pairing[i]].hbar, partition=partition))
    return TorsionClass(summands=tuple(summands))


def _needed_precision(weil: WeilPolynomial, ell: int, degree: int) -> int:
    value = abs(weil.coeffs.base_change(degree)(1))
    if value == 0:
        raise WrongDegree("F^k a la valeur propre 1 : groupe infini")
    return sympy.multiplicity(ell, value) + 2


def rational_point_group(
    weil: WeilPolynomial,
    ell: int,
    cls: TorsionClass,
    degree: int = 1,
    precision: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[int]:
    """
    Exposants e_i de A(F_{q^degree})_ℓ ≅ ⊕ ℤ/ℓ^{e_i} pour une variété dont A[ℓ] est dans `cls`,
    calculés comme conoyau de F^degree − 1 sur un réseau réalisant la classe.

    La précision part du besoin estimé par v_ℓ(f_k(1)) et double jusqu'au plafond.

    Raises:
        PrecisionExhausted: si le plafond est atteint
    """
    cap = config.precision_cap(weil.degree)
    n = max(precision or 0, config.default_precision(weil.degree), _needed_precision(weil, ell, degree))
    while True:
        try:
            exponents: List[int] = []
            for lf in local_decomposition(weil, ell, n, seed):
                partition = cls.partition_of(lf.hbar)
                if partition is None:
                    raise UnpairedFactor(f"La classe ne contient pas de terme pour h̄ = {lf.hbar}")
                model = construct_lift(lf.Q, partition, lf.alpha)
                exponents.extend(cokernel_group(model, 1, degree))
            return sorted(exponents)
        except PrecisionExhausted:
            if n >= cap:
                raise
            n = min(2 * n, cap)
            logger.info(f"Précision insuffisante : nouveau relèvement à ℓ^{n}")
