"""
Forme de Smith locale sur ℤ/ℓ^N (ou sur W non ramifié) par pivot de valuation minimale.
"""
from typing import List, NamedTuple

from app.algebra.extval import TOP, ExtVal, ext_min
from app.algebra.matrices import WittMatrix
from app.utils.errors import PrecisionExhausted
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)


class LocalSmithForm(NamedTuple):
    """U·M·V = diag(ℓ^{e_1}, ℓ^{e_2}, …) avec e_1 ≤ e_2 ≤ …"""

    valuations: List[ExtVal]
    U: WittMatrix
    V: WittMatrix

    def cokernel(self) -> List[int]:
        """Exposants e_i non nuls : coker ≅ ⊕ ℤ/ℓ^{e_i}."""
        if any(e is TOP for e in self.valuations):
            raise PrecisionExhausted("Conoyau infini ou précision insuffisante")
        return [e for e in self.valuations if e > 0]


def smith_normal_form_local(matrix: WittMatrix, strict: bool = True) -> LocalSmithForm:
    """
    Diviseurs élémentaires d'une matrice sur W = S/ℓ^N.

    Args:
        matrix (WittMatrix): matrice sur un WittRing
        strict (bool): lever PrecisionExhausted dès qu'un pivot est nul à la
            précision de travail ; sinon compléter par TOP

    Returns:
        LocalSmithForm: valuations croissantes et transformations U, V

    Raises:
        PrecisionExhausted: en mode strict, si un diviseur élémentaire vaut TOP

    Example:
        >>> W = WittRing(5, precision=3)
        >>> smith_normal_form_local(WittMatrix(W, [[5, 0], [0, 25]])).valuations
        [1, 2]
    """
    ring = matrix.ring
    n, m = matrix.shape
    a = [list(row) for row in matrix.rows]
    u = [list(row) for row in WittMatrix.identity(ring, n).rows]
    v = [list(row) for row in WittMatrix.identity(ring, m).rows]
    valuations: List[ExtVal] = []

    for k in range(min(n, m)):
        best = ext_min(a[i][j].valuation() for i in range(k, n) for j in range(k, m))
        if best is TOP:
            if strict:
                raise PrecisionExhausted(
                    f"Pivot nul à la précision ℓ^{ring.precision} (rang {k} sur {min(n, m)})"
                )
            valuations.extend([TOP] * (min(n, m) - k))
            break
        pi, pj = next((i, j) for i in range(k, n) for j in range(k, m) if a[i][j].valuation() == best)
        a[k], a[pi] = a[pi], a[k]
        u[k], u[pi] = u[pi], u[k]
        for row in a:
            row[k], row[pj] = row[pj], row[k]
        for row in v:
            row[k], row[pj] = row[pj], row[k]

        # pivot normalisé à ℓ^best exactement
        unit_inv = a[k][k].exact_div_ell(best).inverse()
        a[k] = [x * unit_inv for x in a[k]]
        u[k] = [x * unit_inv for x in u[k]]

        for i in range(n):
            if i != k and not a[i][k].is_zero():
                factor = a[i][k].exact_div_ell(best)
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
                u[i] = [x - factor * y for x, y in zip(u[i], u[k])]
        for j in range(m):
            if j != k and not a[k][j].is_zero():
                factor = a[k][j].exact_div_ell(best)
                for row in a:
                    row[j] = row[j] - factor * row[k]
                for row in v:
                    row[j] = row[j] - factor * row[k]
        valuations.append(best)
        logger.debug(f"Pivot {k} : valuation {best}")

    return LocalSmithForm(valuations, WittMatrix(ring, u, n), WittMatrix(ring, v, m))
