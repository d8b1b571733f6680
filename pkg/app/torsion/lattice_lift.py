"""
Construction explicite des réseaux relevant un type de Jordan donné.

Pour Q = t^d + a_1 t^{d−1} + … + a_d et une partition m_1 ≥ … ≥ m_r de d, on
pose M_s = m_1 + … + m_s, v_1 = 1 et

    v_{s+1} = (x^{M_s} + a_1 x^{M_s−1} + … + a_{M_s}) / ℓ^s

dans S[x]/Q. La base x^k·v_s (k < m_s) donne une matrice de x dont la
réduction modulo ℓ est le nilpotent canonique de type (m_1, …, m_r). La
construction n'est possible que si ν(a_j) ≥ s pour M_{s−1} < j ≤ M_s,
c'est-à-dire si Np(Q) domine Hp(N).
"""
import itertools
from collections import deque
from typing import List, Optional, Sequence, Tuple

from app.algebra.extval import TOP
from app.algebra.matrices import WittMatrix, block_diag, kron
from app.algebra.polynomials import FFPoly, WittPoly
from app.algebra.smith_form import smith_normal_form_local
from app.algebra.witt_ring import FiniteField, WittElem, WittRing
from app.models.polygon_models import YoungPolygon
from app.models.torsion_models import LatticeModel
from app.torsion.polygons import dominates, newton_polygon
from app.utils.errors import (
    DimensionMismatch,
    InternalError,
    NotDominated,
    NotIrreducible,
    NotNilpotent,
    PrecisionExhausted,
)
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
BasisIndex = Tuple[int, int]


def _basis_indices(partition: YoungPolygon) -> List[BasisIndex]:
    return [(s, k) for s, m in enumerate(partition.partition) for k in range(m)]


def construct_lift(Q: WittPoly, partition: YoungPolygon, alpha: Optional[WittElem] = None) -> LatticeModel:
    """
    Matrice de x dans la base v_1, x·v_1, …, x^{m_1−1}·v_1, …, v_r, …, x^{m_r−1}·v_r.

    Args:
        Q (WittPoly): polynôme unitaire ≡ t^d mod ℓ
        partition (YoungPolygon): type de Jordan à relever
        alpha (Optional[WittElem]): décalage α conservé dans le modèle (F = α + x)

    Returns:
        LatticeModel: modèle dont la matrice a pour polynôme caractéristique Q

    Raises:
        NotDominated: si Np(Q) ne domine pas Hp(partition)

    Example:
        >>> W = WittRing(5, precision=4)
        >>> Q = WittPoly.from_ints(W, [-5, -5, 1])
        >>> construct_lift(Q, YoungPolygon.of(2)).F_matrix.to_ints()
        [[0, 5], [1, 5]]
    """
    ring = Q.ring
    d = Q.degree
    if partition.size != d:
        raise DimensionMismatch(f"Partition de {partition.size} pour un polynôme de degré {d}")
    if not dominates(newton_polygon(Q), partition):
        raise NotDominated(f"Np(Q) ne domine pas le polygone de Young {partition}")

    a = [Q.coeff(d - j) for j in range(d + 1)]
    parts = partition.partition
    r = len(parts)
    index = {key: pos for pos, key in enumerate(_basis_indices(partition))}
    columns = [[ring(0)] * d for _ in range(d)]

    cumulative = 0
    for s, m in enumerate(parts, start=1):
        previous = cumulative
        cumulative += m
        for j in range(previous + 1, cumulative + 1):
            value = a[j].valuation()
            if value is not TOP and value < s:
                raise NotDominated(f"ν(a_{j}) = {value} < {s} : Np(Q) ne domine pas {partition}")
        for k in range(m - 1):
            columns[index[(s - 1, k)]][index[(s - 1, k + 1)]] = ring(1)
        last = columns[index[(s - 1, m - 1)]]
        if s < r:
            last[index[(s, 0)]] = ring(ring.ell)
        for k in range(m):
            coefficient = a[cumulative - k].exact_div_ell(s - 1)
            last[index[(0, k)]] = last[index[(0, k)]] - coefficient

    matrix = WittMatrix(ring, [[columns[j][i] for j in range(d)] for i in range(d)], d)
    model = LatticeModel(W=ring, F_matrix=matrix, Q=Q, alpha=alpha, partition=partition)
    if matrix.charpoly() != Q:
        raise InternalError("Le polynôme caractéristique du relèvement diffère de Q")
    logger.debug(f"Relèvement construit pour la partition {partition} (ℓ={ring.ell}, N={ring.precision})")
    return model


def nilpotent_jordan_type(nbar: WittMatrix) -> YoungPolygon:
    """
    Type de Jordan d'une matrice nilpotente sur un corps fini, lu sur la
    suite des rangs r_k = rang(N̄^k).

    Raises:
        NotNilpotent: si N̄^d ≠ 0
    """
    d = nbar.nrows
    if d == 0:
        raise DimensionMismatch("Matrice vide")
    ranks = [d]
    power = WittMatrix.identity(nbar.ring, d)
    for _ in range(d):
        power = power * nbar
        ranks.append(power.rank())
    if ranks[-1] != 0:
        raise NotNilpotent("La matrice réduite n'est pas nilpotente")
    # nombre de blocs de taille ≥ k : r_{k−1} − r_k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, d + 1)]
    parts: List[int] = []
    for k in range(d, 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < d else 0)
        parts.extend([k] * exactly)
    return YoungPolygon(partition=parts)


def canonical_nilpotent(field: WittRing, partition: YoungPolygon) -> WittMatrix:
    """Blocs de Jordan nilpotents (sous-diagonale), du plus grand au plus petit."""
    blocks = [
        WittMatrix.from_function(field, m, m, lambda i, j: 1 if i == j + 1 else 0)
        for m in partition.partition
    ]
    return block_diag(field, blocks)


def companion_matrix(hbar: FFPoly) -> WittMatrix:
    """M(h̄) : uns sur la sous-diagonale, −a_i dans la dernière colonne."""
    m = hbar.degree
    field = hbar.ring

    def entry(i: int, j: int):
        if j == m - 1:
            return -hbar.coeff(i)
        return 1 if i == j + 1 else 0

    return WittMatrix.from_function(field, m, m, entry)


def frobenius_matrix(hbar: FFPoly, partition: YoungPolygon) -> WittMatrix:
    """
    Matrice M(h̄)⊗I_d + I_{deg h̄}⊗N de Frobenius sur A(h̄, N)(k̄).

    Raises:
        NotIrreducible: si h̄ est réductible
    """
    if not hbar.is_irreducible():
        raise NotIrreducible(f"{hbar} n'est pas irréductible")
    field = hbar.ring
    d = partition.size
    m = hbar.degree
    companion = companion_matrix(hbar.monic())
    nilpotent = canonical_nilpotent(field, partition)
    return kron(companion, WittMatrix.identity(field, d)) + kron(WittMatrix.identity(field, m), nilpotent)


def _projective_vectors(basis: Sequence[Tuple[WittElem, ...]], field: WittRing) -> List[Tuple[WittElem, ...]]:
    """Représentants normalisés (première coordonnée non nulle = 1) de l'espace engendré."""
    if not basis:
        return []
    size = len(basis[0])
    seen = {}
    scalars = list(field.residue_field().elements())
    for combo in itertools.product(scalars, repeat=len(basis)):
        vector = [field(0)] * size
        for c, b in zip(combo, basis):
            if not c.is_zero():
                vector = [x + c * y for x, y in zip(vector, b)]
        pivot = next((x for x in vector if not x.is_zero()), None)
        if pivot is None:
            continue
        inv = pivot.inverse()
        normalized = tuple(x * inv for x in vector)
        seen[tuple(x.coeffs for x in normalized)] = normalized
    return [seen[key] for key in sorted(seen)]


def _hyperplane_sublattice(model: LatticeModel, phi: Tuple[WittElem, ...]) -> LatticeModel:
    ring = model.W
    if ring.precision <= 1:
        raise PrecisionExhausted("Précision épuisée pendant l'énumération des sous-réseaux")
    d = model.rank
    p = next(i for i, x in enumerate(phi) if not x.is_zero())
    lifted = [ring(x.coeffs) for x in phi]

    def basis_entry(i: int, j: int):
        if j == p:
            return ring.ell if i == p else 0
        if i == j:
            return 1
        return -lifted[j] if i == p else 0

    change = WittMatrix.from_function(ring, d, d, basis_entry)
    image = model.F_matrix * change
    smaller = ring.change_precision(ring.precision - 1)
    rows = []
    for i in range(d):
        if i == p:
            row = []
            for j in range(d):
                acc = ring(0)
                for k in range(d):
                    acc = acc + lifted[k] * image[k, j]
                row.append(smaller(acc.exact_div_ell(1).coeffs))
        else:
            row = [smaller(image[i, j].coeffs) for j in range(d)]
        rows.append(row)
    matrix = WittMatrix(smaller, rows, d)
    return LatticeModel(
        W=smaller,
        F_matrix=matrix,
        Q=model.Q.change_ring(smaller),
        alpha=None if model.alpha is None else smaller(model.alpha.coeffs),
    )


def enumerate_invariant_sublattices(model: LatticeModel, depth: int) -> List[LatticeModel]:
    """
    Sous-réseaux obtenus par chaînes de sous-réseaux invariants d'indice ℓ
    (hyperplans invariants de T/ℓT), jusqu'à la profondeur `depth` ; le
    réseau de départ est inclus. Sert d'oracle dans les tests.

    Raises:
        PrecisionExhausted: si la précision ne permet pas `depth` divisions par ℓ
    """
    if depth >= model.W.precision:
        raise PrecisionExhausted(f"Profondeur {depth} incompatible avec la précision {model.W.precision}")
    found = [model]
    queue = deque([(model, 0)])
    while queue:
        current, level = queue.popleft()
        if level == depth:
            continue
        reduction = current.F_matrix.reduce()
        for phi in _projective_vectors(reduction.left_kernel(), reduction.ring):
            child = _hyperplane_sublattice(current, phi)
            found.append(child)
            queue.append((child, level + 1))
    logger.debug(f"{len(found)} sous-réseaux invariants jusqu'à la profondeur {depth}")
    return found


def cokernel_group(model: LatticeModel, shift, degree: int = 1) -> List[int]:
    """
    Exposants e_i du conoyau de shift·I − F^degree sur T, vu comme ℤ_ℓ-module :
    le groupe est ⊕ ℤ/ℓ^{e_i} (seuls les e_i > 0 sont renvoyés).

    Raises:
        PrecisionExhausted: si un diviseur élémentaire est nul à la précision de travail
    """
    ring = model.W
    frobenius = model.frobenius ** degree
    matrix = WittMatrix.identity(ring, model.rank) * ring(shift) - frobenius
    return smith_normal_form_local(matrix.expand_to_prime_ring()).cokernel()
