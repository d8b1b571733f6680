"""
Factorisations matricielles (X, Y) sur W[t] : Y·X = f₁·I_r et det X = f.

Un réseau T muni de x, engendré par v_1, …, v_r sur S[x], est présenté par
X = diag(t^{m_s}) − A, où la colonne s de A exprime x^{m_s}·v_s dans la base
adaptée. Y s'obtient par la formule de l'adjointe avec division exacte.
"""
from typing import Optional, Tuple

from app.algebra.matrices import WittMatrix, polynomial_smith_form
from app.algebra.polynomials import PolyRing, WittPoly
from app.models.polygon_models import YoungPolygon
from app.models.torsion_models import LatticeModel, MatrixFactorization
from app.utils.errors import InputError, NotNilpotent, NotPolynomial, SingularPresentation
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)


def verify_factorization(mf: MatrixFactorization) -> bool:
    """Vrai si Y·X = f₁·I_r et det X = f à la précision de travail."""
    ring = mf.X.ring
    if mf.X.shape != (mf.r, mf.r) or mf.Y.shape != (mf.r, mf.r):
        return False
    expected = WittMatrix.identity(ring, mf.r) * ring(mf.f1)
    return mf.Y * mf.X == expected and mf.X.det() == ring(mf.f)


def _quotient_matrix(numerator: WittMatrix, divisor: WittPoly) -> WittMatrix:
    rows = []
    for row in numerator.rows:
        line = []
        for entry in row:
            quo, rem = divmod(entry, divisor)
            if not rem.is_zero():
                raise NotPolynomial("f₁·X⁻¹ n'est pas polynomiale à la précision de travail")
            line.append(quo)
        rows.append(line)
    return WittMatrix(numerator.ring, rows, numerator.ncols)


def factorization_from_generators(model: LatticeModel, f1: Optional[WittPoly] = None) -> MatrixFactorization:
    """
    Factorisation matricielle présentant le réseau `model` (construit par
    `construct_lift`, donc en base adaptée à sa partition).

    Args:
        model (LatticeModel): réseau avec sa partition m_1 ≥ … ≥ m_r
        f1 (Optional[WittPoly]): annulateur ; par défaut f = det X

    Returns:
        MatrixFactorization: X ≡ diag(t^{m_s}) mod ℓ, Y = f₁·X⁻¹

    Raises:
        NotPolynomial: si f₁·X⁻¹ n'est pas polynomiale
    """
    if model.partition is None:
        raise InputError("Le réseau doit porter sa partition (base adaptée)")
    ring = model.W
    poly_ring = PolyRing(ring)
    parts = model.partition.partition
    r = len(parts)
    starts = [sum(parts[:s]) for s in range(r)]
    t = poly_ring.t()

    def entry(j: int, s: int) -> WittPoly:
        column = starts[s] + parts[s] - 1
        relation = poly_ring.poly_cls(ring, [model.F_matrix[starts[j] + k, column] for k in range(parts[j])])
        diagonal = t ** parts[s] if j == s else poly_ring.zero()
        return diagonal - relation

    X = WittMatrix.from_function(poly_ring, r, r, entry)
    f = X.det()
    f1 = f if f1 is None else poly_ring(f1)
    Y = _quotient_matrix(X.adjugate() * f1, f)
    mf = MatrixFactorization(X=X, Y=Y, f=f, f1=f1, r=r)
    if not verify_factorization(mf):
        raise NotPolynomial("La factorisation obtenue ne vérifie pas Y·X = f₁·I")
    logger.debug(f"Factorisation matricielle de rang {r} construite")
    return mf


def swap_partner(mf: MatrixFactorization) -> MatrixFactorization:
    """
    Factorisation (Y, X) : det Y = f₁^r / f, certifié par division exacte.

    Raises:
        NotPolynomial: si f ne divise pas f₁^r, ou si det Y diffère du quotient
    """
    target = (mf.f1 ** mf.r).exact_div(mf.f)
    det_y = mf.Y.det()
    if det_y != target:
        raise NotPolynomial("det Y ≠ f₁^r / f à la précision de travail")
    return MatrixFactorization(X=mf.Y, Y=mf.X, f=target, f1=mf.f1, r=mf.r)


def cokernel_module_type(X: WittMatrix, f1: WittPoly) -> Tuple[int, YoungPolygon]:
    """
    Rang de coker X et type de Jordan de x sur T/ℓT, lu sur la forme de Smith
    de X̄ sur F[t] (diagonale t^{m_i}).

    Raises:
        NotNilpotent: si f̄₁ n'est pas une puissance de t, ou si un facteur invariant n'est pas un monôme
        SingularPresentation: si det X̄ = 0
    """
    f1_bar = f1.reduce()
    if f1_bar != f1_bar.monomial(f1_bar.ring, f1_bar.degree):
        raise NotNilpotent("f₁ n'est pas ≡ t^{deg f₁} modulo ℓ")
    rank = X.det().degree
    reduced = X.reduce()
    if reduced.det().is_zero():
        raise SingularPresentation("det X̄ = 0")
    diagonal = polynomial_smith_form(reduced).diagonal
    parts = []
    for entry in diagonal:
        if entry != entry.monomial(entry.ring, entry.degree):
            raise NotNilpotent(f"Facteur invariant {entry} non monomial")
        if entry.degree > 0:
            parts.append(entry.degree)
    if not parts:
        raise SingularPresentation("Module nul")
    return rank, YoungPolygon(partition=parts)
