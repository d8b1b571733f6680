"""
Modèles de données de la classification de A[ℓ].

Ces modèles décrivent :
- le polynôme de Weil validé
- les facteurs locaux (triplets distingués)
- les schémas en groupes distingués A(h̄, N) et les classes de torsion
- les modèles de réseaux et les factorisations matricielles
- les cas de la classification des surfaces
"""
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.algebra.int_poly import IntPoly
from app.algebra.matrices import WittMatrix
from app.algebra.polynomials import FFPoly, WittPoly
from app.algebra.witt_ring import WittElem, WittRing
from app.models.polygon_models import NewtonPolygon, YoungPolygon

# Types personnalisés pour améliorer la lisibilité
CaseId = Literal["1", "2", "3", "4", "5", "6a", "6b", "7a", "7b", "7c_i", "7c_ii", "8"]
HbarKey = Tuple[int, Tuple[Tuple[int, ...], ...]]


def hbar_key(hbar: FFPoly) -> HbarKey:
    """Clé de tri d'un polynôme résiduel : (degré, coefficients dominant en premier)."""
    return hbar.sort_key()


def hbar_to_json(hbar: FFPoly) -> List[int]:
    """Coefficients entiers de h̄, dominant en premier."""
    return [c.coeffs[0] for c in reversed(hbar.coeffs)]


class WeilPolynomial(BaseModel):
    """Polynôme de Weil f_A validé, de degré 2g, avec q = p^a."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coeffs: IntPoly
    q: int = Field(..., gt=1)
    p: int = Field(..., gt=1)

    @property
    def degree(self) -> int:
        return self.coeffs.degree

    @property
    def genus(self) -> int:
        return self.coeffs.degree // 2

    def to_json(self) -> Dict[str, Any]:
        return {"coeffs": self.coeffs.leading_first(), "q": self.q, "p": self.p}


class LocalFactor(BaseModel):
    """Triplet distingué (f_i, h̄_i, Q_i) attaché à un facteur irréductible h̄ de f̄."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hbar: FFPoly
    d: int = Field(..., ge=1)
    f_lift: WittPoly
    ring: WittRing
    alpha: WittElem
    Q: WittPoly
    np: NewtonPolygon

    def to_json(self) -> Dict[str, Any]:
        return {
            "hbar": hbar_to_json(self.hbar),
            "d": self.d,
            "f_lift": self.f_lift.to_json(),
            "alpha": self.alpha.to_json(),
            "Q": self.Q.to_json(),
            "newton_polygon": self.np.to_json(),
            "slopes": self.np.slope_label(),
        }


class DistinguishedScheme(BaseModel):
    """Schéma en groupes distingué A(h̄, N), nommé par (h̄, type de Jordan de N)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hbar: FFPoly
    partition: YoungPolygon

    @property
    def dimension(self) -> int:
        return self.hbar.degree * self.partition.size

    def sort_key(self) -> Tuple:
        return (hbar_key(self.hbar), tuple(-p for p in self.partition.partition))

    def to_json(self) -> Dict[str, Any]:
        return {"hbar": hbar_to_json(self.hbar), "partition": self.partition.to_json()}

    def __str__(self) -> str:
        return f"A({self.hbar}, {self.partition})"


class TorsionClass(BaseModel):
    """
    Somme directe de schémas distingués, sous forme canonique : un seul
    terme par h̄ (partitions réunies), termes triés par (deg h̄, h̄).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    summands: Tuple[DistinguishedScheme, ...]

    @field_validator("summands")
    @classmethod
    def _canonical(cls, summands: Tuple[DistinguishedScheme, ...]) -> Tuple[DistinguishedScheme, ...]:
        merged: Dict[HbarKey, DistinguishedScheme] = {}
        for scheme in summands:
            key = hbar_key(scheme.hbar)
            if key in merged:
                previous = merged[key]
                scheme = DistinguishedScheme(hbar=previous.hbar, partition=previous.partition.union(scheme.partition))
            merged[key] = scheme
        return tuple(merged[key] for key in sorted(merged))

    @property
    def dimension(self) -> int:
        return sum(s.dimension for s in self.summands)

    def sort_key(self) -> Tuple:
        return tuple(s.sort_key() for s in self.summands)

    def partition_of(self, hbar: FFPoly) -> Optional[YoungPolygon]:
        key = hbar_key(hbar)
        return next((s.partition for s in self.summands if hbar_key(s.hbar) == key), None)

    def to_json(self) -> Dict[str, Any]:
        return {"summands": [s.to_json() for s in self.summands]}

    def __str__(self) -> str:
        return " ⊕ ".join(str(s) for s in self.summands)


def sort_classes(classes) -> List[TorsionClass]:
    """Classes dédupliquées et triées dans l'ordre canonique."""
    unique = {c.sort_key(): c for c in classes}
    return [unique[key] for key in sorted(unique)]


class LatticeModel(BaseModel):
    """
    Réseau T muni de l'action de x = F − α : F_matrix est la matrice de x
    dans la base adaptée, Q son polynôme caractéristique attendu.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    W: WittRing
    F_matrix: WittMatrix
    Q: WittPoly
    alpha: Optional[WittElem] = None
    partition: Optional[YoungPolygon] = None

    @property
    def rank(self) -> int:
        return self.F_matrix.nrows

    @property
    def frobenius(self) -> WittMatrix:
        """Matrice de F = α·I + x."""
        if self.alpha is None:
            return self.F_matrix
        return WittMatrix.identity(self.W, self.rank) * self.alpha + self.F_matrix

    def to_json(self) -> Dict[str, Any]:
        payload = {
            "ring": {
                "ell": self.W.ell,
                "residue_poly": list(self.W.residue_poly) if self.W.residue_poly else None,
                "precision": self.W.precision,
            },
            "matrix": self.F_matrix.to_json()["coeffs"],
            "Q": self.Q.to_json(),
        }
        if self.partition is not None:
            payload["partition"] = self.partition.to_json()
        if self.alpha is not None:
            payload["alpha"] = self.alpha.to_json()
        return payload


class MatrixFactorization(BaseModel):
    """Paire (X, Y) de matrices r×r sur W[t] avec Y·X = f₁·I et det X = f."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    X: WittMatrix
    Y: WittMatrix
    f: WittPoly
    f1: WittPoly
    r: int = Field(..., ge=1)

    def to_json(self) -> Dict[str, Any]:
        return {
            "X": self.X.to_json()["coeffs"],
            "Y": self.Y.to_json()["coeffs"],
            "f": self.f.to_json(),
            "f1": self.f1.to_json(),
            "r": self.r,
        }


class SurfaceConditions(BaseModel):
    """Faits de divisibilité et de congruence évalués pendant la classification."""

    model_config = ConfigDict(frozen=True)

    residue_shape: List[Tuple[int, int]] = Field(default_factory=list, description="(deg h̄, multiplicité) de f̄")
    squarefree: bool = True
    a1: Optional[int] = None
    a2: Optional[int] = None
    regularity_quantity: Optional[int] = None
    regularity_modulus: Optional[int] = None
    regular: Optional[bool] = None
    dedekind_regular: Optional[bool] = None
    root: Optional[int] = None
    p1_at_root: Optional[int] = None
    ell_squared_divides_p1: Optional[bool] = None

    def to_json(self) -> Dict[str, Any]:
        payload = self.model_dump(exclude_none=True)
        payload["residue_shape"] = [list(item) for item in self.residue_shape]
        return payload


class SurfaceCase(BaseModel):
    """Cas de la classification des surfaces abéliennes et classes obtenues."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    case_id: CaseId
    conditions: SurfaceConditions
    classes: Tuple[TorsionClass, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "case": self.case_id,
            "conditions": self.conditions.to_json(),
            "classes": [c.to_json() for c in self.classes],
        }
