"""
Module pour l'écriture du rapport de lot.
"""
from pathlib import Path
from typing import Any, Dict, Union

from prefect import task

from app.utils.logging_utils import setup_logger
from app.utils.serialization import write_json

logger = setup_logger(__name__)


@task(name="report_chargement")
def report_chargement(report: Dict[str, Any], output_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Écrit le rapport JSON (orjson, indentation 2).

    Args:
        report (Dict[str, Any]): rapport complet du lot
        output_path (Union[str, Path]): fichier cible, répertoires créés au besoin

    Returns:
        Dict[str, Any]: chemin écrit et statut du chargement
    """
    path = write_json(output_path, report)
    logger.info(f"Rapport écrit : {path}")
    return {"path": str(path), "step": "load_complete", "success": True}
