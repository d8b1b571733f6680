"""
Module pour l'extraction et la validation des entrées d'un lot.
"""
from typing import Any, Dict

from prefect import task

from app.algebra.int_poly import IntPoly
from app.torsion.isogeny_torsion import validate_weil
from app.utils.errors import InputError
from app.utils.logging_utils import setup_logger
from app.utils.parsing import parse_coefficients

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
BatchEntry = Dict[str, Any]
ExtractionResult = Dict[str, Any]


@task(name="weil_extraction")
def weil_extraction(entry: BatchEntry) -> ExtractionResult:
    """
    Valide une entrée de lot {"poly": "1,-1,8,-7,49", "q": 7, "ell": 5}.

    Args:
        entry (BatchEntry): entrée brute du fichier de lot ; "force_weil" optionnel

    Returns:
        ExtractionResult: entrée d'origine, polynôme validé sous forme JSON et ℓ

    Raises:
        InputError: clé manquante ou valeur non entière
        WeilValidationError: si le polynôme n'est pas de Weil
    """
    missing = [key for key in ("poly", "q", "ell") if key not in entry]
    if missing:
        raise InputError(f"Entrée de lot incomplète, clé(s) manquante(s) : {', '.join(missing)}")
    try:
        q, ell = int(entry["q"]), int(entry["ell"])
    except (TypeError, ValueError) as exc:
        raise InputError(f"q et ℓ doivent être entiers : {entry}") from exc

    raw = entry["poly"]
    coeffs = parse_coefficients(raw if isinstance(raw, str) else ",".join(map(str, raw)))
    weil = validate_weil(IntPoly(coeffs), q, force=bool(entry.get("force_weil", False)))
    logger.info(f"Entrée validée : f = {weil.coeffs}, q = {q}, ℓ = {ell}")
    return {
        "entry": entry,
        "weil": weil.to_json(),
        "ell": ell,
        "step": "extraction_complete",
        "success": True,
    }
