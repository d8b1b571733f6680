from app.cli.commands import cli
from app.utils.logging_utils import setup_logger

# Configuration du logger principal via le module centralisé
logger = setup_logger("main")

if __name__ == "__main__":
    cli()
