"""
Modèles d'entrée et de sortie de la CLI.
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

# Types personnalisés pour améliorer la lisibilité
Command = Literal["polygon", "lift", "torsion", "surface", "dual", "kummer", "tables", "report"]
OutputFormat = Literal["text", "json"]


class RunConfig(BaseModel):
    """
    Paramètres d'une invocation de la CLI.

    Attributes:
        command (Command): sous-commande à exécuter
        poly (Optional[str]): coefficients, dominant en premier ("1,2,7")
        q (Optional[int]): cardinal du corps de base
        ell (Optional[int]): nombre premier ℓ ≠ p
        partitions (List[str]): partitions au format "2,1,1" (une par facteur pour `dual`)
        precision (Optional[int]): précision ℓ-adique imposée
        seed (Optional[int]): graine du scindage aléatoire (défaut : config.SEED)
        output (OutputFormat): "text" ou "json"
        force_weil (bool): rétrograder l'échec du test |ω| = √q en avertissement
        max_degree (Optional[int]): degré maximal des comptages de points
        bvector (Optional[str]): b-vecteur "1:16" pour `kummer`
        order (Optional[int]): nombre de termes de la série zêta
        table_format (Literal["tsv", "json"]): format de `tables`
        input_path / output_path (Optional[str]): fichiers du rapport de lot
    """

    model_config = ConfigDict(extra="forbid")

    command: Command
    poly: Optional[str] = None
    q: Optional[int] = Field(default=None, gt=1)
    ell: Optional[int] = Field(default=None, gt=1)
    partitions: List[str] = Field(default_factory=list)
    precision: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    output: OutputFormat = "text"
    force_weil: bool = False
    max_degree: Optional[int] = Field(default=None, ge=1)
    bvector: Optional[str] = None
    order: Optional[int] = Field(default=None, ge=1)
    table_format: Literal["tsv", "json"] = "tsv"
    input_path: Optional[str] = None
    output_path: Optional[str] = None


class RunResult(BaseModel):
    """Code de sortie et texte produit sur la sortie standard."""

    exit_code: int = 0
    output: str = ""
    error: Optional[str] = None
