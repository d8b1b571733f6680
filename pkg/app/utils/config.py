"""
Paramètres de torsion_atlas lus dans l'environnement (fichier .env accepté).

Variables :
    TORSION_ATLAS_SEED             graine du scindage aléatoire (défaut 0)
    TORSION_ATLAS_PRECISION_CAP    plafond absolu de la précision ℓ-adique
    TORSION_ATLAS_ROOT_TOLERANCE   tolérance relative du test |ω| = √q
    TORSION_ATLAS_SERIES_ORDER     nombre de termes des séries zêta
    TORSION_ATLAS_TABLES_DIR       répertoire des tables de référence
    TORSION_ATLAS_REPORTS_DIR      répertoire des rapports de lot
"""
import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv
from app.utils.logging_utils import setup_logger, log_config_info

# Charger les variables d'environnement
load_dotenv()

logger = setup_logger(__name__)

ROOT_DIR = Path(__file__).resolve().parents[2]

DEFAULT_SEED = 0
DEFAULT_PRECISION_MARGIN = 2
DEFAULT_PRECISION_CAP_FACTOR = 64
DEFAULT_ROOT_TOLERANCE = 1e-8
DEFAULT_SERIES_ORDER = 8
DEFAULT_TABLES_DIR = str(ROOT_DIR / "datas" / "tables")
DEFAULT_REPORTS_DIR = str(ROOT_DIR / "datas" / "reports")

SEED = int(os.environ.get("TORSION_ATLAS_SEED", DEFAULT_SEED))
ROOT_TOLERANCE = float(os.environ.get("TORSION_ATLAS_ROOT_TOLERANCE", DEFAULT_ROOT_TOLERANCE))
SERIES_ORDER = int(os.environ.get("TORSION_ATLAS_SERIES_ORDER", DEFAULT_SERIES_ORDER))
TABLES_DIR = Path(os.environ.get("TORSION_ATLAS_TABLES_DIR", DEFAULT_TABLES_DIR))
REPORTS_DIR = Path(os.environ.get("TORSION_ATLAS_REPORTS_DIR", DEFAULT_REPORTS_DIR))

log_config_info(logger, {
    "seed": SEED,
    "root_tolerance": ROOT_TOLERANCE,
    "series_order": SERIES_ORDER,
    "tables_dir": TABLES_DIR,
    "reports_dir": REPORTS_DIR,
})


def default_precision(degree: int) -> int:
    """Précision par défaut du travail sur les polygones : deg f + 2."""
    return max(degree, 1) + DEFAULT_PRECISION_MARGIN


def precision_cap(degree: int) -> int:
    """
    Plafond de la précision adaptative.

    TORSION_ATLAS_PRECISION_CAP est relue à chaque appel ; sinon 64·deg f.

    Args:
        degree (int): degré du polynôme de Weil

    Returns:
        int: précision maximale autorisée
    """
    override: Optional[str] = os.environ.get("TORSION_ATLAS_PRECISION_CAP")
    if override:
        return int(override)
    return DEFAULT_PRECISION_CAP_FACTOR * max(degree, 1)
