"""
Interface en ligne de commande : répartiteur `run` et commandes typer.
"""
from app.cli.runner import run, run_command
from app.cli.commands import cli

__all__ = ['run', 'run_command', 'cli']
