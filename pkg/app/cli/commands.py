"""
Commandes typer de torsion_atlas.

Les coefficients se saisissent coefficient dominant en premier :
`--poly 1,2,7` désigne t² + 2t + 7.
"""
from typing import List, Optional

import typer
from rich.console import Console

from app.cli.runner import run_command
from app.models.run_models import RunResult

cli = typer.Typer(
    name="torsion-atlas",
    help="Classification de la ℓ-torsion des variétés abéliennes sur les corps finis.",
    no_args_is_help=True,
    add_completion=False,
)

error_console = Console(stderr=True)

# Options partagées
POLY = typer.Option(None, "--poly", help="Coefficients entiers, dominant en premier (ex. 1,2,7)")
Q = typer.Option(None, "--q", help="Cardinal q = p^a du corps de base")
ELL = typer.Option(None, "--ell", help="Nombre premier ℓ ≠ p")
PRECISION = typer.Option(None, "--precision", help="Précision ℓ-adique N imposée")
SEED = typer.Option(None, "--seed", help="Graine du scindage aléatoire (défaut : TORSION_ATLAS_SEED)")
JSON = typer.Option(False, "--json", help="Sortie JSON")
FORCE_WEIL = typer.Option(False, "--force-weil", help="Avertir au lieu d'échouer si |ω| ≠ √q")
MAX_DEGREE = typer.Option(None, "--max-degree", help="Degré maximal des comptages de points")


def _emit(result: RunResult) -> None:
    if result.output:
        typer.echo(result.output, nl=False)
    if result.exit_code:
        error_console.print(f"[bold red]Erreur[/bold red] {result.error}", markup=True, highlight=False)
        raise typer.Exit(code=result.exit_code)


def _format(as_json: bool) -> str:
    return "json" if as_json else "text"


@cli.command()
def polygon(
    poly: Optional[str] = POLY,
    q: Optional[int] = Q,
    ell: Optional[int] = ELL,
    precision: Optional[int] = PRECISION,
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
    force_weil: bool = FORCE_WEIL,
) -> None:
    """Polygone de Newton de chaque facteur local décalé Q_i = f_i(t + α_i)."""
    _emit(run_command("polygon", poly=poly, q=q, ell=ell, precision=precision, seed=seed,
                      output=_format(as_json), force_weil=force_weil))


@cli.command()
def lift(
    poly: Optional[str] = POLY,
    ell: Optional[int] = ELL,
    partition: List[str] = typer.Option([], "--partition", help="Type de Jordan, ex. 2,1"),
    precision: Optional[int] = PRECISION,
    as_json: bool = JSON,
) -> None:
    """Matrice témoin de polynôme caractéristique Q et de réduction de type donné."""
    _emit(run_command("lift", poly=poly, ell=ell, partitions=partition, precision=precision,
                      output=_format(as_json)))


@cli.command()
def torsion(
    poly: Optional[str] = POLY,
    q: Optional[int] = Q,
    ell: Optional[int] = ELL,
    precision: Optional[int] = PRECISION,
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
    force_weil: bool = FORCE_WEIL,
    max_degree: Optional[int] = MAX_DEGREE,
) -> None:
    """Classes possibles de A[ℓ] pour f_A sans facteur carré."""
    _emit(run_command("torsion", poly=poly, q=q, ell=ell, precision=precision, seed=seed,
                      output=_format(as_json), force_weil=force_weil, max_degree=max_degree))


@cli.command()
def surface(
    poly: Optional[str] = POLY,
    q: Optional[int] = Q,
    ell: Optional[int] = ELL,
    precision: Optional[int] = PRECISION,
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
    force_weil: bool = FORCE_WEIL,
    max_degree: Optional[int] = MAX_DEGREE,
) -> None:
    """Cas de la classification des surfaces abéliennes et classes de A[ℓ]."""
    _emit(run_command("surface", poly=poly, q=q, ell=ell, precision=precision, seed=seed,
                      output=_format(as_json), force_weil=force_weil, max_degree=max_degree))


@cli.command()
def dual(
    poly: Optional[str] = POLY,
    q: Optional[int] = Q,
    ell: Optional[int] = ELL,
    partition: List[str] = typer.Option([], "--partition", help="Une partition par facteur local, dans l'ordre"),
    precision: Optional[int] = PRECISION,
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
    force_weil: bool = FORCE_WEIL,
    max_degree: Optional[int] = MAX_DEGREE,
) -> None:
    """Appariement dual et groupes A(F_{q^k})_ℓ, Â(F_{q^k})_ℓ des classes."""
    _emit(run_command("dual", poly=poly, q=q, ell=ell, partitions=partition, precision=precision,
                      seed=seed, output=_format(as_json), force_weil=force_weil, max_degree=max_degree))


@cli.command()
def kummer(
    poly: Optional[str] = POLY,
    q: Optional[int] = Q,
    b: Optional[str] = typer.Option(None, "--b", help="b-vecteur unique, ex. 1:2,2:1,4:3"),
    order: Optional[int] = typer.Option(None, "--order", help="Nombre de comptages de points"),
    precision: Optional[int] = PRECISION,
    seed: Optional[int] = SEED,
    as_json: bool = JSON,
    force_weil: bool = FORCE_WEIL,
) -> None:
    """Fonctions zêta des surfaces de Kummer de la classe d'isogénie."""
    _emit(run_command("kummer", poly=poly, q=q, bvector=b, order=order, precision=precision,
                      seed=seed, output=_format(as_json), force_weil=force_weil))


@cli.command()
def tables(
    table_format: str = typer.Option("tsv", "--format", help="tsv ou json"),
) -> None:
    """Régénère les tables de b-vecteurs de A[2]."""
    _emit(run_command("tables", table_format=table_format))


@cli.command()
def report(
    input_path: str = typer.Option(..., "--input", help="Fichier JSON du lot"),
    output_path: Optional[str] = typer.Option(None, "--output", help="Fichier du rapport"),
) -> None:
    """Rapport de lot orchestré par Prefect."""
    _emit(run_command("report", input_path=input_path, output_path=output_path))
