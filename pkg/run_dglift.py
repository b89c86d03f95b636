"""Entry point for the dglift command-line interface."""
import sys
from src.frontend.cli import run_command
from src.utils.config import Config
from src.utils.logger import get_logger

logger = get_logger("main")


def main():
    """Validate the configuration and dispatch one command."""
    try:
        Config.validate()
    except ValueError as e:
        logger.error(f"Invalid configuration: {e}")
        sys.exit(Config.EXIT_FAILURE)

    try:
        sys.exit(run_command(sys.argv[1:]))
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        sys.exit(Config.EXIT_INTERNAL)


if __name__ == "__main__":
    main()
