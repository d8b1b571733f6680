"""
Polygones de Newton de polynômes locaux, dominance, écrêtage et types de Jordan admissibles.

Un type de Jordan N se relève en une matrice de polynôme caractéristique Q
si et seulement si Np(Q) est au-dessus de Hp(N). Les deux polygones ont
leurs sommets à abscisse entière : la comparaison aux abscisses entières
suffit.
"""
from typing import List

from sympy.utilities.iterables import partitions

from app.algebra.extval import TOP
from app.algebra.polynomials import WittPoly
from app.models.polygon_models import NewtonPolygon, YoungPolygon
from app.utils.errors import DimensionMismatch, MalformedPolynomial


def newton_polygon(Q: WittPoly) -> NewtonPolygon:
    """
    Enveloppe convexe inférieure des points (i, ν(coefficient de t^{d−i}))
    pour i = 0, …, d.

    Un coefficient nul à la précision de travail ne fournit aucun point, sauf
    en x = d où il donne l'extrémité (d, TOP).

    Args:
        Q (WittPoly): polynôme unitaire de degré d ≥ 1

    Returns:
        NewtonPolygon: polygone de Newton de Q

    Raises:
        MalformedPolynomial: si Q n'est pas exactement unitaire ou est constant
    """
    if not Q.monic_exact or Q.degree < 1:
        raise MalformedPolynomial("Le polygone de Newton exige un polynôme unitaire de degré ≥ 1")
    d = Q.degree
    points = []
    for i in range(d + 1):
        value = Q.coeff(d - i).valuation()
        if value is TOP and i != d:
            continue
        points.append((i, value))
    return NewtonPolygon.from_points(points)


def dominates(np: NewtonPolygon, yp: YoungPolygon) -> bool:
    """
    Vrai si NP(x) ≥ YP(x) pour tout x de [0, d].

    Raises:
        DimensionMismatch: si les abscisses finales diffèrent
    """
    if np.degree != yp.size:
        raise DimensionMismatch(f"Polygones de largeurs {np.degree} et {yp.size}")
    for x in range(np.degree + 1):
        value = np.evaluate(x)
        if value is not TOP and value < yp.evaluate(x):
            return False
    return True


def clamp(np: NewtonPolygon) -> NewtonPolygon:
    """Remplace toutes les pentes > 1 (et les segments TOP) par la pente 1."""
    kept = [np.vertices[0]]
    for x0, y0, x1, y1 in np.segments():
        if y1 is TOP or (y1 - y0) > (x1 - x0):
            break
        kept.append((x1, y1))
    last_x, last_y = kept[-1]
    if last_x < np.degree:
        kept.append((np.degree, last_y + np.degree - last_x))
    return NewtonPolygon.from_points(kept)


def all_partitions(d: int) -> List[YoungPolygon]:
    """Toutes les partitions de d, dans l'ordre lexicographique décroissant."""
    out = []
    for blocks in partitions(d):
        parts = [part for part, count in dict(blocks).items() for _ in range(count)]
        out.append(YoungPolygon(partition=parts))
    return sorted(out, reverse=True)


def admissible_partitions(np: NewtonPolygon, d: int) -> List[YoungPolygon]:
    """
    Partitions de d dont le polygone de Young est dominé par `np`,
    dans l'ordre lexicographique décroissant.

    Example:
        >>> [str(p) for p in admissible_partitions(NewtonPolygon.from_slopes("(1/3,1)"), 4)]
        ['(4)', '(3,1)']
    """
    if np.degree != d:
        raise DimensionMismatch(f"Polygone de largeur {np.degree}, partition de {d}")
    return [yp for yp in all_partitions(d) if dominates(np, yp)]


def paired_quadratic_partitions(np_power: NewtonPolygon, multiplicity: int) -> List[YoungPolygon]:
    """
    Types de Jordan d'un réseau de rang 2r pour P^r avec deg P = 2 :
    partitions de 2r à parts ≤ 2 dominées par Np(P^r).
    """
    d = 2 * multiplicity
    return [yp for yp in admissible_partitions(clamp(np_power), d) if yp.partition[0] <= 2]

