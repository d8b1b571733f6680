"""
Modèles de données des polygones de Newton et de Young.
"""
from fractions import Fraction
from math import gcd
from typing import Any, Iterable, List, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.algebra.extval import TOP, ExtVal, ext_from_json, ext_to_json

# Types personnalisés pour améliorer la lisibilité
Vertex = Tuple[int, Any]
Slope = Union[Fraction, Any]
Point = Tuple[int, ExtVal]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_hull(points: Sequence[Point]) -> List[Point]:
    hull: List[Point] = []
    for point in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    return hull


class NewtonPolygon(BaseModel):
    """
    Polygone convexe inférieur donné par ses sommets (x entier, y entier ou TOP).

    Seule l'extrémité droite peut valoir TOP : le dernier segment est alors
    vertical à l'infini et NP(x) = TOP sur tout l'intervalle ouvert qui le précède.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: Tuple[Vertex, ...] = Field(..., description="Sommets (x, y), x strictement croissant depuis 0")

    @field_validator("vertices")
    @classmethod
    def _check_vertices(cls, vertices: Tuple[Vertex, ...]) -> Tuple[Vertex, ...]:
        if not vertices or vertices[0][0] != 0:
            raise ValueError("Le polygone doit commencer en x = 0")
        xs = [x for x, _ in vertices]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("Abscisses non strictement croissantes")
        if any(y is TOP for _, y in vertices[:-1]):
            raise ValueError("Seule l'extrémité droite peut valoir TOP")
        return tuple((int(x), y if y is TOP else int(y)) for x, y in vertices)

    # --- constructeurs ----------------------------------------------------

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "NewtonPolygon":
        """
        Enveloppe convexe inférieure ; les points d'ordonnée TOP sont ignorés
        sauf à l'abscisse maximale.
        """
        pts = sorted(points)
        right_x, right_y = pts[-1]
        finite = [(x, y) for x, y in pts if y is not TOP]
        hull = _lower_hull(finite)
        if right_y is TOP:
            hull.append((right_x, TOP))
        return cls(vertices=tuple(hull))

    @classmethod
    def from_slopes(cls, label: Union[str, Sequence]) -> "NewtonPolygon":
        """
        Polygone d'étiquette « (1/3,1) » : chaque pente a/b de l'étiquette apporte
        un segment de largeur b et de hauteur a (pentes égales consécutives fusionnées).
        """
        if isinstance(label, str):
            items = [chunk.strip() for chunk in label.strip("() ").split(",") if chunk.strip()]
        else:
            items = list(label)
        slopes = [Fraction(item) for item in items]
        x, y = 0, 0
        points: List[Point] = [(0, 0)]
        for slope in slopes:
            x += slope.denominator
            y += slope.numerator
            points.append((x, y))
        return cls(vertices=tuple(_lower_hull(points)))

    @classmethod
    def from_json(cls, payload: dict) -> "NewtonPolygon":
        return cls(vertices=tuple((int(x), ext_from_json(y)) for x, y in payload["vertices"]))

    # --- géométrie --------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.vertices[-1][0]

    @property
    def right_is_top(self) -> bool:
        return self.vertices[-1][1] is TOP

    def segments(self) -> List[Tuple[int, ExtVal, int, ExtVal]]:
        return [(x0, y0, x1, y1) for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])]

    def evaluate(self, x: Union[int, Fraction]) -> Union[Fraction, Any]:
        """NP(x) par interpolation linéaire ; TOP sur un segment qui aboutit à TOP."""
        x = Fraction(x)
        if x < 0 or x > self.degree:
            raise ValueError(f"x = {x} hors de [0, {self.degree}]")
        for vx, vy in self.vertices:
            if vx == x:
                return vy if vy is TOP else Fraction(vy)
        for x0, y0, x1, y1 in self.segments():
            if x0 < x < x1:
                if y1 is TOP:
                    return TOP
                return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
        raise ValueError("Abscisse introuvable")

    def slopes(self) -> List[Slope]:
        """Une pente par unité de largeur (TOP pour un segment infini)."""
        out: List[Slope] = []
        for x0, y0, x1, y1 in self.segments():
            value = TOP if y1 is TOP else Fraction(y1 - y0, x1 - x0)
            out.extend([value] * (x1 - x0))
        return out

    def slope_label(self) -> str:
        """Étiquette compacte : un segment (w, h) donne gcd(w, h) copies de h/w."""
        parts: List[str] = []
        for x0, y0, x1, y1 in self.segments():
            if y1 is TOP:
                parts.append("TOP")
                continue
            width, height = x1 - x0, y1 - y0
            g = gcd(width, height) or width
            parts.extend([str(Fraction(height, width))] * g)
        return "(" + ",".join(parts) + ")"

    def dilate(self, factor: int) -> "NewtonPolygon":
        """Polygone de Q^factor."""
        return NewtonPolygon(vertices=tuple((x * factor, y if y is TOP else y * factor) for x, y in self.vertices))

    def to_json(self) -> dict:
        return {"vertices": [[x, ext_to_json(y)] for x, y in self.vertices]}


class YoungPolygon(BaseModel):
    """Type de Jordan nilpotent m₁ ≥ m₂ ≥ … ≥ m_r."""

    model_config = ConfigDict(frozen=True)

    partition: Tuple[int, ...] = Field(..., description="Tailles des blocs de Jordan")

    @field_validator("partition", mode="before")
    @classmethod
    def _sort_partition(cls, value) -> Tuple[int, ...]:
        parts = tuple(sorted((int(v) for v in value), reverse=True))
        if not parts or any(p <= 0 for p in parts):
            raise ValueError("Partition vide ou à parts non positives")
        return parts

    @classmethod
    def of(cls, *parts: int) -> "YoungPolygon":
        return cls(partition=parts)

    @property
    def size(self) -> int:
        return sum(self.partition)

    @property
    def length(self) -> int:
        return len(self.partition)

    def vertices(self) -> List[Tuple[int, int]]:
        out, x = [(0, 0)], 0
        for i, part in enumerate(self.partition, start=1):
            x += part
            out.append((x, i))
        return out

    def evaluate(self, x: Union[int, Fraction]) -> Fraction:
        x = Fraction(x)
        start = 0
        for i, part in enumerate(self.partition):
            if x <= start + part:
                return i + (x - start) / part
            start += part
        raise ValueError(f"x = {x} hors de [0, {self.size}]")

    def conjugate(self) -> Tuple[int, ...]:
        return tuple(sum(1 for part in self.partition if part > k) for k in range(self.partition[0]))

    def union(self, other: "YoungPolygon") -> "YoungPolygon":
        return YoungPolygon(partition=self.partition + other.partition)

    def __lt__(self, other: "YoungPolygon") -> bool:
        return self.partition < other.partition

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.partition) + ")"

    def to_json(self) -> List[int]:
        return list(self.partition)
