"""
Package pour les tâches ETL (Extraction, Transformation, Chargement) des rapports de lot.
"""
from app.tasks.extraction import weil_extraction
from app.tasks.transformation import torsion_transformation
from app.tasks.chargement import report_chargement

__all__ = ['weil_extraction', 'torsion_transformation', 'report_chargement']
