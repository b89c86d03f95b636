"""Configuration management for the dg-lift engine."""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    """Centralized configuration management."""

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("DGLIFT_LOG_LEVEL", "INFO")
    LOG_STREAM: str = os.getenv("DGLIFT_LOG_STREAM", "stderr")

    # Certificate Configuration
    CERTIFICATE_FORMAT: str = "dglift-certificate/1"
    DIGEST_ALGORITHM: str = "sha256"

    # Random coboundary shifts used to check that H0 data ignores representatives
    WELL_DEFINED_SEED: str = os.getenv("DGLIFT_SEED", "dglift")
    WELL_DEFINED_TRIALS: int = 3
    SHIFT_COEFFICIENT_BOUND: int = 3

    # check-functor depth when --dmax is not given
    DEFAULT_CHECK_DEPTH: int = 2

    # Exit codes of the command-line interface
    EXIT_OK: int = 0
    EXIT_FAILURE: int = 1
    EXIT_PARSE_ERROR: int = 2
    EXIT_INTERNAL: int = 3

    VALID_LOG_LEVELS: list = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
    VALID_LOG_STREAMS: list = ["stderr", "stdout"]

    @classmethod
    def validate(cls) -> bool:
        """Validate that the configuration values are usable."""
        if cls.LOG_LEVEL.upper() not in cls.VALID_LOG_LEVELS:
            raise ValueError(f"DGLIFT_LOG_LEVEL must be one of {cls.VALID_LOG_LEVELS}")
        if cls.LOG_STREAM.lower() not in cls.VALID_LOG_STREAMS:
            raise ValueError(f"DGLIFT_LOG_STREAM must be one of {cls.VALID_LOG_STREAMS}")
        return True
