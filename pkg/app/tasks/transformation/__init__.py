"""
Package pour les tâches de classification.
"""
from app.tasks.transformation.torsion_transformation import torsion_transformation

__all__ = ['torsion_transformation']
