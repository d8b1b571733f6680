"""
Sérialisation JSON des résultats avec orjson.
"""
from pathlib import Path
from typing import Any, Union

import orjson

JSON_OPTIONS = orjson.OPT_INDENT_2


def dumps(payload: Any) -> str:
    """Sérialise `payload` en JSON indenté, ordre des clés préservé."""
    return orjson.dumps(payload, option=JSON_OPTIONS).decode("utf-8")


def loads(raw: Union[str, bytes]) -> Any:
    """Désérialise un document JSON."""
    return orjson.loads(raw)


def write_json(path: Union[str, Path], payload: Any) -> Path:
    """
    Écrit `payload` dans `path` (répertoires créés au besoin).

    Returns:
        Path: chemin du fichier écrit
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(orjson.dumps(payload, option=JSON_OPTIONS | orjson.OPT_APPEND_NEWLINE))
    return target


def read_json(path: Union[str, Path]) -> Any:
    """Lit un fichier JSON."""
    return orjson.loads(Path(path).read_bytes())
