"""
Modèles des fonctions zêta factorisées, des b-vecteurs et des tables de Kummer.
"""
from typing import Any, Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.algebra.int_poly import IntPoly

# Types personnalisés pour améliorer la lisibilité
Series = List[int]


def _series_mul(a: Series, b: Series, order: int) -> Series:
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[:order - i]):
                out[i + j] += x * y
    return out


def _series_inverse(a: Series, order: int) -> Series:
    """Inverse d'une série entière de terme constant 1."""
    if a[0] != 1:
        raise ValueError("Inversion d'une série de terme constant différent de 1")
    out = [0] * order
    out[0] = 1
    for n in range(1, order):
        out[n] = -sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1))
    return out


class ZetaFactored(BaseModel):
    """Fonction rationnelle ∏ P_i(t)^{e_i}, chaque P_i de terme constant 1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    factors: Tuple[Tuple[IntPoly, int], ...]

    @field_validator("factors")
    @classmethod
    def _check_constant_terms(cls, factors):
        for poly, _ in factors:
            if poly.coeff(0) != 1:
                raise ValueError(f"Facteur {poly!r} de terme constant différent de 1")
        return factors

    def series(self, order: int) -> Series:
        """Coefficients 1, c_1, …, c_{order−1} du développement en série (exact)."""
        result: Series = [1] + [0] * (order - 1)
        for poly, exponent in self.factors:
            base = list(poly.coeffs) + [0] * max(0, order - len(poly.coeffs))
            if exponent < 0:
                base = _series_inverse(base, order)
            for _ in range(abs(exponent)):
                result = _series_mul(result, base, order)
        return result

    def point_counts(self, max_degree: int) -> List[int]:
        """N_1, …, N_max avec log Z = Σ N_r t^r / r, soit N_r = −Σ e·s_r(P)."""
        counts = [0] * max_degree
        for poly, exponent in self.factors:
            sums = poly.reverse().power_sums(max_degree)
            for r in range(max_degree):
                counts[r] -= exponent * sums[r]
        return counts

    def degree_of(self, index: int) -> int:
        return self.factors[index][0].degree

    def to_json(self) -> Dict[str, Any]:
        return {"factors": [{"poly": poly.to_json(), "exponent": e} for poly, e in self.factors]}


class BVector(BaseModel):
    """Nombre b_r de points de degré r de A[2] (support fini)."""

    model_config = ConfigDict(frozen=True)

    counts: Tuple[Tuple[int, int], ...] = Field(..., description="Couples (r, b_r) avec b_r > 0, r croissant")

    @field_validator("counts", mode="before")
    @classmethod
    def _normalize(cls, value) -> Tuple[Tuple[int, int], ...]:
        items = value.items() if isinstance(value, dict) else value
        cleaned = {}
        for r, b in items:
            r, b = int(r), int(b)
            if r <= 0 or b < 0:
                raise ValueError(f"Entrée ({r}, {b}) invalide")
            if b:
                cleaned[r] = cleaned.get(r, 0) + b
        return tuple(sorted(cleaned.items()))

    @classmethod
    def of(cls, counts: Dict[int, int]) -> "BVector":
        return cls(counts=counts)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def get(self, r: int) -> int:
        return self.as_dict().get(r, 0)

    @property
    def total(self) -> int:
        """Σ r·b_r."""
        return sum(r * b for r, b in self.counts)

    @property
    def max_degree(self) -> int:
        return max((r for r, _ in self.counts), default=0)

    def points_over(self, degree: int) -> int:
        """|A[2](F_{q^degree})| = Σ_{e | degree} e·b_e."""
        return sum(r * b for r, b in self.counts if degree % r == 0)

    def sort_key(self, width: int = 12) -> Tuple[int, ...]:
        data = self.as_dict()
        return tuple(data.get(r, 0) for r in range(1, max(width, self.max_degree) + 1))

    def label(self) -> str:
        """Format « b1=2,b2=1,b4=3 »."""
        return ",".join(f"b{r}={b}" for r, b in self.counts)

    def to_json(self) -> Dict[str, int]:
        return {f"b{r}": b for r, b in self.counts}


def sort_bvectors(vectors: Sequence[BVector]) -> List[BVector]:
    """b-vecteurs dédupliqués, triés par (b1, b2, …) croissants."""
    unique = {v.counts: v for v in vectors}
    width = max((v.max_degree for v in unique.values()), default=1)
    return sorted(unique.values(), key=lambda v: v.sort_key(width))


class TableRow(BaseModel):
    """Ligne d'une table : condition symbolique et b-vecteurs possibles."""

    model_config = ConfigDict(frozen=True)

    condition: str
    bvectors: Tuple[BVector, ...]

    def to_json(self) -> Dict[str, Any]:
        return {"condition": self.condition, "b_vectors": [v.label() for v in self.bvectors]}


class KummerTable(BaseModel):
    """Table numérotée des b-vecteurs de A[2]."""

    model_config = ConfigDict(frozen=True)

    number: int
    title: str
    rows: Tuple[TableRow, ...]

    def tsv_lines(self) -> List[str]:
        return [f"{self.number}\t{row.condition}\t{vector.label()}" for row in self.rows for vector in row.bvectors]

    def to_json(self) -> Dict[str, Any]:
        return {"table": self.number, "title": self.title, "rows": [row.to_json() for row in self.rows]}
