"""
Exécution d'une commande de torsion_atlas à partir d'un RunConfig.

`run` ne termine jamais le processus : il renvoie un RunResult portant le code
de sortie de la famille d'erreur (2 entrée, 3 validation de Weil, 4 précision,
5 interne) et le texte destiné à la sortie standard.
"""
import io
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from app.algebra.int_poly import IntPoly
from app.algebra.matrices import WittMatrix
from app.algebra.polynomials import WittPoly
from app.algebra.witt_ring import WittRing
from app.kummer.tables import generate_tables, render_json, render_tsv
from app.kummer.zeta import enumerate_kummer_zetas, kummer_polynomial, kummer_zeta
from app.models.kummer_models import BVector, ZetaFactored
from app.models.polygon_models import YoungPolygon
from app.models.run_models import RunConfig, RunResult
from app.models.torsion_models import DistinguishedScheme, TorsionClass, WeilPolynomial, hbar_to_json
from app.torsion.isogeny_torsion import (
    classify_torsion,
    dual_polygon_map,
    dual_torsion_class,
    dual_weil,
    local_decomposition,
    rational_point_group,
    scheme_point_counts,
    validate_weil,
)
from app.torsion.lattice_lift import construct_lift
from app.torsion.polygons import admissible_partitions, clamp
from app.torsion.surface_torsion import classify_surface
from app.utils import config as settings
from app.utils.errors import CharacteristicTwo, DimensionMismatch, InputError, TorsionAtlasError
from app.utils.logging_utils import setup_logger
from app.utils.parsing import parse_bvector, parse_coefficients, parse_partition
from app.utils.serialization import dumps

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
Payload = Dict[str, Any]
Renderer = Callable[[Payload], str]

INTERNAL_EXIT_CODE = 5


# --- rendu ------------------------------------------------------------------

def _render(*renderables) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=120, color_system=None, highlight=False, soft_wrap=True)
    for renderable in renderables:
        console.print(renderable)
    return buffer.getvalue()


def _matrix_json(matrix: WittMatrix) -> List[List[Any]]:
    """Entrées entières sur ℤ/ℓ^N, listes de coefficients sur une extension."""
    prime = matrix.ring.degree == 1
    return [[x.coeffs[0] if prime else list(x.coeffs) for x in row] for row in matrix.rows]


# --- entrées ----------------------------------------------------------------

def _require(config: RunConfig, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(config, name) is None]
    if missing:
        raise InputError(f"Option(s) manquante(s) pour `{config.command}` : {', '.join(missing)}")


def _weil(config: RunConfig) -> WeilPolynomial:
    _require(config, "poly", "q")
    f = IntPoly(parse_coefficients(config.poly))
    return validate_weil(f, config.q, force=config.force_weil)


# --- commandes --------------------------------------------------------------

def _polygon(config: RunConfig) -> Payload:
    _require(config, "ell")
    weil = _weil(config)
    factors = []
    for lf in local_decomposition(weil, config.ell, config.precision, config.seed):
        entry = lf.to_json()
        entry["admissible"] = [p.to_json() for p in admissible_partitions(clamp(lf.np), lf.d)]
        factors.append(entry)
    return {"weil": weil.to_json(), "ell": config.ell, "factors": factors}


def _polygon_text(payload: Payload) -> str:
    table = Table(title=f"Polygones de Newton en ℓ = {payload['ell']}")
    for column in ("h̄", "d", "sommets", "pentes", "partitions admissibles"):
        table.add_column(column)
    for factor in payload["factors"]:
        vertices = " ".join(f"({x},{y})" for x, y in factor["newton_polygon"]["vertices"])
        admissible = " ".join("(" + ",".join(map(str, p)) + ")" for p in factor["admissible"])
        table.add_row(str(factor["hbar"]), str(factor["d"]), vertices, factor["slopes"], admissible)
    return _render(table)


def _lift(config: RunConfig) -> Payload:
    _require(config, "poly", "ell")
    if len(config.partitions) != 1:
        raise InputError("`lift` attend exactement une option --partition")
    coeffs = parse_coefficients(config.poly)
    ring = WittRing(config.ell, None, config.precision or settings.default_precision(len(coeffs) - 1))
    Q = WittPoly.from_ints(ring, coeffs)
    model = construct_lift(Q, YoungPolygon(partition=parse_partition(config.partitions[0])))
    payload = model.to_json()
    payload["matrix"] = _matrix_json(model.F_matrix)
    return payload


def _lift_text(payload: Payload) -> str:
    table = Table(title=f"Relèvement de type {tuple(payload['partition'])} modulo {payload['ring']['ell']}^{payload['ring']['precision']}",
                  show_header=False)
    for row in payload["matrix"]:
        table.add_row(*(str(x) for x in row))
    return _render(table)


def _torsion(config: RunConfig) -> Payload:
    _require(config, "ell")
    weil = _weil(config)
    classes = classify_torsion(weil, config.ell, config.precision, config.seed)
    entries = []
    for cls in classes:
        entry = cls.to_json()
        entry["b_vector"] = scheme_point_counts(cls, config.ell, config.max_degree).to_json()
        entries.append(entry)
    return {"weil": weil.to_json(), "ell": config.ell, "classes": entries}


def _classes_text(payload: Payload, title: str) -> str:
    table = Table(title=title)
    table.add_column("#")
    table.add_column("classe")
    table.add_column("b-vecteur")
    for index, entry in enumerate(payload["classes"], start=1):
        summands = " ⊕ ".join(
            f"A({s['hbar']}, ({','.join(map(str, s['partition']))}))" for s in entry["summands"]
        )
        bvector = ",".join(f"{k}={v}" for k, v in entry.get("b_vector", {}).items())
        table.add_row(str(index), summands, bvector)
    return _render(table)


def _torsion_text(payload: Payload) -> str:
    return _classes_text(payload, f"{len(payload['classes'])} classe(s) de A[{payload['ell']}]")


def _surface(config: RunConfig) -> Payload:
    _require(config, "ell")
    weil = _weil(config)
    case = classify_surface(weil, config.ell, config.precision, config.seed)
    payload = case.to_json()
    for entry, cls in zip(payload["classes"], case.classes):
        entry["b_vector"] = scheme_point_counts(cls, config.ell, config.max_degree).to_json()
    return {"weil": weil.to_json(), "ell": config.ell, **payload}


def _surface_text(payload: Payload) -> str:
    conditions = ", ".join(f"{k}={v}" for k, v in payload["conditions"].items())
    header = f"Cas {payload['case']} ({conditions})"
    return header + "\n" + _classes_text(payload, f"{len(payload['classes'])} classe(s) de A[{payload['ell']}]")


def _dual(config: RunConfig) -> Payload:
    _require(config, "ell")
    weil = _weil(config)
    decomposition = local_decomposition(weil, config.ell, config.precision, config.seed)
    pairing = dual_polygon_map(decomposition, weil.q)
    dual = validate_weil(dual_weil(weil, weil.q), weil.q, force=config.force_weil)
    if config.partitions:
        if len(config.partitions) != len(decomposition):
            raise DimensionMismatch(
                f"{len(decomposition)} facteur(s) locaux pour {len(config.partitions)} partition(s)"
            )
        classes = [TorsionClass(summands=tuple(
            DistinguishedScheme(hbar=lf.hbar, partition=YoungPolygon(partition=parse_partition(raw)))
            for lf, raw in zip(decomposition, config.partitions)
        ))]
    else:
        classes = classify_torsion(weil, config.ell, config.precision, config.seed)

    degrees = range(1, (config.max_degree or 1) + 1)
    entries = []
    for cls in classes:
        dual_cls = dual_torsion_class(decomposition, cls, weil.q)
        entries.append({
            "class": cls.to_json(),
            "dual_class": dual_cls.to_json(),
            "groups": {
                str(k): rational_point_group(weil, config.ell, cls, k, config.precision, config.seed)
                for k in degrees
            },
            "dual_groups": {
                str(k): rational_point_group(dual, config.ell, dual_cls, k, config.precision, config.seed)
                for k in degrees
            },
        })
    return {
        "weil": weil.to_json(),
        "dual_weil": dual.coeffs.leading_first(),
        "ell": config.ell,
        "pairing": [
            {"hbar": hbar_to_json(decomposition[i].hbar), "dual_hbar": hbar_to_json(decomposition[j].hbar)}
            for i, j in sorted(pairing.items())
        ],
        "classes": entries,
    }


def _dual_text(payload: Payload) -> str:
    pairs = ", ".join(f"{p['hbar']} <-> {p['dual_hbar']}" for p in payload["pairing"])
    table = Table(title=f"Dualité en ℓ = {payload['ell']} : {pairs}")
    for column in ("classe", "classe duale", "A(F_q^k)_ℓ", "Â(F_q^k)_ℓ"):
        table.add_column(column)

    def summands(cls: Payload) -> str:
        return " ⊕ ".join(f"{s['hbar']}:({','.join(map(str, s['partition']))})" for s in cls["summands"])

    def groups(data: Dict[str, List[int]]) -> str:
        return "; ".join(f"k={k}: ({','.join(map(str, e))})" for k, e in data.items())

    for entry in payload["classes"]:
        table.add_row(summands(entry["class"]), summands(entry["dual_class"]),
                      groups(entry["groups"]), groups(entry["dual_groups"]))
    return _render(table)


def _zeta_entry(weil: WeilPolynomial, b: BVector, zeta: ZetaFactored, order: int) -> Payload:
    P = kummer_polynomial(weil, b)
    return {
        "b_vector": b.label(),
        "P": P.leading_first(),
        "degree": P.degree,
        "zeta": zeta.to_json(),
        "point_counts": zeta.point_counts(order),
        "series": zeta.series(order + 1),
    }


def _kummer(config: RunConfig) -> Payload:
    weil = _weil(config)
    order = config.order or settings.SERIES_ORDER
    if config.bvector:
        if weil.p == 2:
            raise CharacteristicTwo("Surfaces de Kummer non définies en caractéristique 2")
        b = BVector.of(parse_bvector(config.bvector))
        entries = [(b, kummer_zeta(weil, b))]
    else:
        entries = enumerate_kummer_zetas(weil, config.precision, config.seed)
    return {"weil": weil.to_json(), "zetas": [_zeta_entry(weil, b, zeta, order) for b, zeta in entries]}


def _kummer_text(payload: Payload) -> str:
    table = Table(title="Fonctions zêta des surfaces de Kummer")
    for column in ("b-vecteur", "deg P", "|S(F_q^r)|", "P(t)"):
        table.add_column(column)
    for entry in payload["zetas"]:
        table.add_row(entry["b_vector"], str(entry["degree"]), ", ".join(map(str, entry["point_counts"])),
                      str(entry["P"]))
    return _render(table)


COMMANDS: Dict[str, Callable[[RunConfig], Payload]] = {
    "polygon": _polygon,
    "lift": _lift,
    "torsion": _torsion,
    "surface": _surface,
    "dual": _dual,
    "kummer": _kummer,
}

TEXT_RENDERERS: Dict[str, Renderer] = {
    "polygon": _polygon_text,
    "lift": _lift_text,
    "torsion": _torsion_text,
    "surface": _surface_text,
    "dual": _dual_text,
    "kummer": _kummer_text,
}


def _tables(config: RunConfig) -> str:
    tables = generate_tables()
    if config.table_format == "json" or config.output == "json":
        return render_json(tables)
    return render_tsv(tables)


def _report(config: RunConfig) -> str:
    _require(config, "input_path")
    # Prefect n'est importé que pour les rapports de lot
    from app.workflows.atlas_workflow import atlas_report

    report = atlas_report(config.input_path, config.output_path)
    return dumps(report) + "\n"


def _dispatch(config: RunConfig) -> str:
    if config.command == "tables":
        return _tables(config)
    if config.command == "report":
        return _report(config)
    payload = COMMANDS[config.command](config)
    if config.output == "json":
        return dumps(payload) + "\n"
    return TEXT_RENDERERS[config.command](payload)


def run(config: RunConfig) -> RunResult:
    """
    Exécute la commande décrite par `config`.

    Args:
        config (RunConfig): commande et options validées

    Returns:
        RunResult: code de sortie (0 en cas de succès), sortie standard, message d'erreur

    Example:
        >>> run(RunConfig(command="lift", poly="1,-5,-5", ell=5, partitions=["2"], output="json")).exit_code
        0
    """
    logger.debug(f"Commande {config.command} : {config.model_dump(exclude_defaults=True)}")
    try:
        return RunResult(exit_code=0, output=_dispatch(config))
    except TorsionAtlasError as exc:
        logger.error(f"{type(exc).__name__} : {exc.message}")
        return RunResult(exit_code=exc.exit_code, error=f"{type(exc).__name__}: {exc.message}")
    except Exception as exc:
        logger.exception(f"Erreur inattendue pendant `{config.command}`")
        return RunResult(exit_code=INTERNAL_EXIT_CODE, error=f"{type(exc).__name__}: {exc}")


def run_command(command: str, **options: Optional[Any]) -> RunResult:
    """Construit le RunConfig (les erreurs de validation donnent le code 2) puis exécute."""
    try:
        config = RunConfig(command=command, **options)
    except ValidationError as exc:
        message = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        logger.error(f"Options invalides : {message}")
        return RunResult(exit_code=InputError.exit_code, error=f"InputError: {message}")
    return run(config)
