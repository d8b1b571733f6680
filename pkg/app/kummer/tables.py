"""
Régénération des tables de b-vecteurs de A[2] (ℓ = 2) pour les surfaces abéliennes.

Chaque ligne est décrite symboliquement par ses données locales modulo 2 :
les facteurs h̄ de f̄_A et, pour chacun, les types de Jordan autorisés par la
condition de la ligne (polygone de Newton synthétique ou cas de la
classification des surfaces). Aucun polynôme de Weil représentatif n'est
nécessaire.
"""
from pathlib import Path
from typing import List, Optional, Sequence, Union

from app.algebra.extval import TOP
from app.algebra.polynomials import FFPoly
from app.algebra.witt_ring import FiniteField
from app.models.kummer_models import BVector, KummerTable, TableRow, sort_bvectors
from app.models.polygon_models import NewtonPolygon, YoungPolygon
from app.torsion.isogeny_torsion import LocalChoices, classes_from_choices, scheme_point_counts
from app.torsion.polygons import admissible_partitions, clamp, paired_quadratic_partitions
from app.utils import config
from app.utils.logging_utils import setup_logger
from app.utils.serialization import dumps

logger = setup_logger(__name__)

TSV_HEADER = "table\tcondition\tb_vector"

F2 = FiniteField(2)
T_PLUS_1 = FFPoly.from_ints(F2, [1, 1])
T2_T_1 = FFPoly.from_ints(F2, [1, 1, 1])
T4_CYCLOTOMIC = FFPoly.from_ints(F2, [1, 1, 1, 1, 1])

TABLE1_ROWS = [
    ["(1/4)"],
    ["(1/3,1)"],
    ["(1/2,1/2)"],
    ["(2/3,1)", "(1/2,1,1)", "(3/4)"],
    ["(1,1,1,1)"],
]


def bvectors_of(choices: Sequence[LocalChoices]) -> List[BVector]:
    """b-vecteurs (triés, sans doublon) de toutes les classes réalisables."""
    return sort_bvectors([scheme_point_counts(cls, 2) for cls in classes_from_choices(choices)])


def _admissible(label: str, d: int) -> List[YoungPolygon]:
    return admissible_partitions(clamp(NewtonPolygon.from_slopes(label)), d)


def _join_labels(labels: Sequence[str]) -> str:
    if len(labels) == 1:
        return labels[0]
    return ",".join(labels[:-1]) + " or " + labels[-1]


def _table1() -> KummerTable:
    rows = []
    for labels in TABLE1_ROWS:
        vectors = []
        for label in labels:
            vectors.extend(bvectors_of([(T_PLUS_1, _admissible(label, 4))]))
        rows.append(TableRow(condition=_join_labels(labels), bvectors=tuple(sort_bvectors(vectors))))
    return KummerTable(
        number=1,
        title="Pentes de Np(f), f_A sans racine multiple et f_A = (t+1)^4 mod 2",
        rows=tuple(rows),
    )


def _table2() -> KummerTable:
    single = [YoungPolygon.of(1)]
    specs = [
        ("t^4+t^3+t^2+t+1", [(T4_CYCLOTOMIC, single)]),
        ("t^4+t^3+t+1 and 4 does not divide f(1)", [(T_PLUS_1, _admissible("(1/2)", 2)), (T2_T_1, single)]),
        ("t^4+t^3+t+1 and 4 divides f(1)", [(T_PLUS_1, _admissible("(1,1)", 2)), (T2_T_1, single)]),
        ("t^4+t^2+1 and 4 does not divide a1+a2+1-2q", [(T2_T_1, _admissible("(1/2)", 2))]),
        ("t^4+t^2+1 and 4 divides a1+a2+1-2q", [(T2_T_1, _admissible("(1,1)", 2))]),
    ]
    return KummerTable(
        number=2,
        title="f_A mod 2, f_A sans racine multiple et f_A != (t+1)^4 mod 2",
        rows=tuple(TableRow(condition=c, bvectors=tuple(bvectors_of(choices))) for c, choices in specs),
    )


def _table3() -> KummerTable:
    def paired(label: str) -> List[YoungPolygon]:
        return paired_quadratic_partitions(NewtonPolygon.from_slopes(label).dilate(2), 2)

    specs = [
        ("t^2+t+1", [(T2_T_1, [YoungPolygon.of(1, 1)])]),
        ("t^2+1 and 4 does not divide P(1)", [(T_PLUS_1, paired("(1/2)"))]),
        ("t^2+1 and 4 divides P(1)", [(T_PLUS_1, paired("(1,1)"))]),
    ]
    return KummerTable(
        number=3,
        title="P_A mod 2, f_A = P_A^2",
        rows=tuple(TableRow(condition=c, bvectors=tuple(bvectors_of(choices))) for c, choices in specs),
    )


def _table4() -> KummerTable:
    def cubic(points, square: bool) -> List[YoungPolygon]:
        # Np(t·P₁(t+r)) ; le type (2,2) n'existe que si ℓ² divise P₁(r)
        np = NewtonPolygon.from_points(points)
        partitions = [p.union(YoungPolygon.of(1)) for p in admissible_partitions(clamp(np), 3)]
        return partitions + [YoungPolygon.of(2, 2)] if square else partitions

    specs = [
        ("t^2+t+1", [(T2_T_1, [YoungPolygon.of(1)]), (T_PLUS_1, [YoungPolygon.of(1, 1)])]),
        ("t^2+1 and 4 does not divide f(1)", [(T_PLUS_1, cubic([(0, 0), (2, 1), (3, TOP)], False))]),
        ("t^2+1 and 4 divides f(1)", [(T_PLUS_1, cubic([(0, 0), (1, 1), (2, 2), (3, TOP)], True))]),
    ]
    return KummerTable(
        number=4,
        title="f mod 2, f_A = (t +- sqrt(q))^2 f",
        rows=tuple(TableRow(condition=c, bvectors=tuple(bvectors_of(choices))) for c, choices in specs),
    )


def generate_tables() -> List[KummerTable]:
    """Les quatre tables, dans l'ordre."""
    tables = [_table1(), _table2(), _table3(), _table4()]
    logger.debug(f"{sum(len(t.rows) for t in tables)} lignes de tables générées")
    return tables


def render_tsv(tables: Sequence[KummerTable]) -> str:
    lines = [TSV_HEADER]
    for table in tables:
        lines.extend(table.tsv_lines())
    return "\n".join(lines) + "\n"


def render_json(tables: Sequence[KummerTable]) -> str:
    return dumps([table.to_json() for table in tables]) + "\n"


def write_tables(
    directory: Optional[Union[str, Path]] = None,
    tables: Optional[Sequence[KummerTable]] = None,
) -> List[Path]:
    """
    Écrit kummer_tables.tsv et kummer_tables.json.

    Sans argument, régénère les tables de référence dans TORSION_ATLAS_TABLES_DIR.
    """
    directory = Path(directory) if directory is not None else config.TABLES_DIR
    tables = generate_tables() if tables is None else tables
    directory.mkdir(parents=True, exist_ok=True)
    tsv_path = directory / "kummer_tables.tsv"
    json_path = directory / "kummer_tables.json"
    tsv_path.write_text(render_tsv(tables), encoding="utf-8")
    json_path.write_text(render_json(tables), encoding="utf-8")
    logger.info(f"Tables écrites dans {directory}")
    return [tsv_path, json_path]
