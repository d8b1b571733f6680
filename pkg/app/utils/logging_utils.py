"""
Configuration centralisée des logs de torsion_atlas.

Tous les modules obtiennent leur logger via `setup_logger(__name__)`.
Les logs partent sur stderr : stdout reste réservé aux sorties de la CLI
(texte ou JSON), qui doivent rester lisibles par une machine.

Configuration:
    LOG_LEVEL : DEBUG, INFO, WARNING, ERROR ou CRITICAL (défaut : INFO)
"""
import os
import sys
import logging
from typing import Optional, Dict, Any
from dotenv import load_dotenv

# Charger les variables d'environnement
load_dotenv()

# Types personnalisés pour améliorer la lisibilité
LogLevel = int
LoggerName = str
ConfigItems = Dict[str, Any]

LOG_LEVEL_MAP: Dict[str, LogLevel] = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL
}

DEFAULT_LOG_LEVEL = "INFO"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def get_log_level() -> LogLevel:
    """
    Renvoie le niveau de log lu dans LOG_LEVEL.

    La variable est relue à chaque appel, de sorte qu'un test ou la CLI
    puisse changer le niveau sans recharger le module.

    Returns:
        LogLevel: constante du module logging (logging.INFO par défaut)
    """
    name = os.environ.get("LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    return LOG_LEVEL_MAP.get(name, logging.INFO)


def setup_logger(
    logger_name: LoggerName,
    level: Optional[LogLevel] = None
) -> logging.Logger:
    """
    Configure un logger écrivant sur stderr avec le format commun.

    Args:
        logger_name (LoggerName): nom du logger, en général __name__
        level (Optional[LogLevel]): niveau explicite ; sinon LOG_LEVEL

    Returns:
        logging.Logger: logger sans propagation ni handler dupliqué

    Example:
        >>> logger = setup_logger("app.algebra.hensel")
        >>> logger.debug("Étape de Hensel k=%d", 1)
    """
    logger = logging.getLogger(logger_name)
    log_level = level if level is not None else get_log_level()
    logger.setLevel(log_level)

    # Éviter les logs en double
    if logger.handlers:
        logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(console_handler)

    logger.propagate = False
    return logger


def log_config_info(logger: logging.Logger, config_items: ConfigItems) -> None:
    """
    Affiche la configuration active, une ligne par paramètre, au niveau DEBUG.

    Args:
        logger (logging.Logger): logger du module qui charge la configuration
        config_items (ConfigItems): paramètres et valeurs effectives
    """
    logger.debug("Configuration chargée:")
    for key, value in config_items.items():
        logger.debug(f"- {key}: {value}")
