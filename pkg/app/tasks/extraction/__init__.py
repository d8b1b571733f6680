"""
Package pour les tâches d'extraction des entrées de lot.
"""
from app.tasks.extraction.weil_extraction import weil_extraction

__all__ = ['weil_extraction']
