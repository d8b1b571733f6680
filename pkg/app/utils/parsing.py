"""
Analyse des arguments textuels : coefficients, partitions et b-vecteurs.

Les coefficients sont saisis coefficient dominant en premier ("1,2,7" pour
t²+2t+7) et stockés terme constant en premier.
"""
from typing import Dict, List, Tuple

from app.utils.errors import BadBVector, InputError, MalformedPolynomial

# Types personnalisés pour améliorer la lisibilité
Coefficients = Tuple[int, ...]
Partition = Tuple[int, ...]


def _split(raw: str) -> List[str]:
    return [chunk.strip() for chunk in raw.replace(";", ",").split(",") if chunk.strip()]


def parse_coefficients(raw: str) -> Coefficients:
    """
    Convertit "1,-1,8,-7,49" en coefficients terme constant en premier.

    Args:
        raw (str): coefficients entiers séparés par des virgules, dominant en premier

    Returns:
        Coefficients: (49, -7, 8, -1, 1)

    Raises:
        MalformedPolynomial: chaîne vide, entrée non entière ou coefficient dominant nul
    """
    chunks = _split(raw or "")
    if not chunks:
        raise MalformedPolynomial("Polynôme vide")
    try:
        leading_first = [int(chunk) for chunk in chunks]
    except ValueError as exc:
        raise MalformedPolynomial(f"Coefficient non entier dans '{raw}'") from exc
    if leading_first[0] == 0 and len(leading_first) > 1:
        raise MalformedPolynomial(f"Coefficient dominant nul dans '{raw}'")
    return tuple(reversed(leading_first))


def parse_partition(raw: str) -> Partition:
    """
    Convertit "2,1,1" en partition décroissante (2, 1, 1).

    Raises:
        InputError: partie non entière ou non strictement positive
    """
    chunks = _split(raw or "")
    if not chunks:
        raise InputError("Partition vide")
    try:
        parts = [int(chunk) for chunk in chunks]
    except ValueError as exc:
        raise InputError(f"Partition invalide '{raw}'") from exc
    if any(part <= 0 for part in parts):
        raise InputError(f"Les parts d'une partition doivent être positives : '{raw}'")
    return tuple(sorted(parts, reverse=True))


def parse_bvector(raw: str) -> Dict[int, int]:
    """
    Convertit "1:2,2:1,4:3" en {1: 2, 2: 1, 4: 3}.

    Raises:
        BadBVector: entrée mal formée ou degré répété
    """
    counts: Dict[int, int] = {}
    for chunk in _split(raw or ""):
        degree, sep, count = chunk.partition(":")
        if not sep:
            raise BadBVector(f"Entrée '{chunk}' attendue sous la forme degré:nombre")
        try:
            r, b = int(degree), int(count)
        except ValueError as exc:
            raise BadBVector(f"Entrée '{chunk}' non entière") from exc
        if r <= 0 or b < 0 or r in counts:
            raise BadBVector(f"Entrée '{chunk}' invalide")
        counts[r] = b
    if not counts:
        raise BadBVector("b-vecteur vide")
    return counts
