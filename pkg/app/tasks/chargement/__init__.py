"""
Package pour les tâches de chargement des rapports.
"""
from app.tasks.chargement.report_chargement import report_chargement

__all__ = ['report_chargement']
