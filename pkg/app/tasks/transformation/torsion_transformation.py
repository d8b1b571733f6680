"""
Module pour la classification de A[ℓ] des entrées validées.
"""
from typing import Any, Dict

from prefect import task

from app.algebra.int_poly import IntPoly
from app.models.torsion_models import WeilPolynomial
from app.torsion.isogeny_torsion import classify_torsion, scheme_point_counts
from app.torsion.surface_torsion import classify_surface
from app.utils.logging_utils import setup_logger

logger = setup_logger(__name__)

# Types personnalisés pour améliorer la lisibilité
TransformationResult = Dict[str, Any]


@task(name="torsion_transformation")
def torsion_transformation(data: Dict[str, Any]) -> TransformationResult:
    """
    Classe A[ℓ] : aiguillage des surfaces pour deg f_A = 4, cas général sinon.

    Les b-vecteurs de chaque classe sont ajoutés lorsque ℓ = 2.

    Args:
        data (Dict[str, Any]): résultat de `weil_extraction`

    Returns:
        TransformationResult: `data` complété de la clé "classification"
    """
    weil_json, ell = data["weil"], data["ell"]
    weil = WeilPolynomial(coeffs=IntPoly.from_leading_first(weil_json["coeffs"]), q=weil_json["q"], p=weil_json["p"])

    if weil.degree == 4:
        case = classify_surface(weil, ell)
        classes = list(case.classes)
        classification = case.to_json()
    else:
        classes = classify_torsion(weil, ell)
        classification = {"classes": [cls.to_json() for cls in classes]}

    if ell == 2:
        for entry, cls in zip(classification["classes"], classes):
            entry["b_vector"] = scheme_point_counts(cls, 2).label()

    logger.info(f"{len(classes)} classe(s) pour f = {weil.coeffs}")
    return {**data, "classification": classification, "step": "transformation_complete", "success": True}
