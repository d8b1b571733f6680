"""
Module définissant le workflow des rapports de lot.

Chaque entrée du fichier de lot traverse :
- l'extraction (validation du polynôme de Weil)
- la transformation (classification de A[ℓ])
puis le rapport complet est chargé sur disque. Une entrée en échec est
consignée avec son message d'erreur sans interrompre le lot.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from prefect import flow

from app.tasks import report_chargement, torsion_transformation, weil_extraction
from app.utils import config
from app.utils.errors import InputError, TorsionAtlasError
from app.utils.logging_utils import setup_logger
from app.utils.serialization import read_json

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
BatchEntry = Dict[str, Any]
EntryReport = Dict[str, Any]
AtlasReport = Dict[str, Any]


def load_batch(input_path: Union[str, Path]) -> List[BatchEntry]:
    """
    Lit un fichier de lot : une liste d'entrées, ou {"entries": [...]}.

    Raises:
        InputError: fichier absent ou de structure inattendue
    """
    path = Path(input_path)
    if not path.is_file():
        raise InputError(f"Fichier de lot introuvable : {path}")
    payload = read_json(path)
    entries = payload.get("entries") if isinstance(payload, dict) else payload
    if not isinstance(entries, list) or not all(isinstance(e, dict) for e in entries):
        raise InputError(f"{path} doit contenir une liste d'entrées JSON")
    return entries


def default_report_path(input_path: Union[str, Path]) -> Path:
    return config.REPORTS_DIR / f"{Path(input_path).stem}_report.json"


def process_entry(index: int, entry: BatchEntry) -> EntryReport:
    """Extraction puis transformation d'une entrée ; l'échec est consigné, pas propagé."""
    try:
        data = weil_extraction(entry)
        transformed = torsion_transformation(data)
        return {"index": index, "input": entry, "status": "completed", "result": transformed["classification"]}
    except TorsionAtlasError as exc:
        logger.warning(f"Entrée {index} en échec : {exc.message}")
        return {"index": index, "input": entry, "status": "failed", "error": f"{type(exc).__name__}: {exc.message}"}


@flow(name="atlas_report")
def atlas_report(input_path: Union[str, Path], output_path: Optional[Union[str, Path]] = None) -> AtlasReport:
    """
    Workflow principal des rapports de lot.

    Args:
        input_path (Union[str, Path]): fichier JSON du lot
        output_path (Optional[Union[str, Path]]): fichier du rapport
            (défaut : TORSION_ATLAS_REPORTS_DIR/<lot>_report.json)

    Returns:
        AtlasReport: entrées avec leur statut et résumé des comptes

    Raises:
        InputError: si le fichier de lot est illisible
    """
    entries = [process_entry(index, entry) for index, entry in enumerate(load_batch(input_path))]
    completed = sum(1 for e in entries if e["status"] == "completed")
    report = {
        "input": str(input_path),
        "entries": entries,
        "summary": {"total": len(entries), "completed": completed, "failed": len(entries) - completed},
    }
    target = Path(output_path) if output_path else default_report_path(input_path)
    report_chargement(report, target)
    logger.info(f"Lot traité : {completed}/{len(entries)} entrée(s) classée(s)")
    return report
