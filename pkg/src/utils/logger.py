"""Structured logging configuration for the dg-lift engine."""
import logging
import sys
from typing import Dict
from src.utils.config import Config


class EngineLogger:
    """Structured logger for lifting and pipeline stages."""

    _loggers: Dict[str, logging.Logger] = {}

    @classmethod
    def get_logger(cls, name: str = "dglift") -> logging.Logger:
        """Get or create a logger instance."""
        if name not in cls._loggers:
            cls._loggers[name] = cls._setup_logger(name)
        return cls._loggers[name]

    @classmethod
    def _setup_logger(cls, name: str) -> logging.Logger:
        """Set up logger with formatting and handlers."""
        logger = logging.getLogger(f"dglift.{name}" if name != "dglift" else name)
        logger.setLevel(getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO))
        logger.propagate = False

        # Avoid duplicate handlers
        if logger.handlers:
            return logger

        # Results go to stdout, so records default to stderr
        stream = sys.stdout if Config.LOG_STREAM.lower() == "stdout" else sys.stderr
        console_handler = logging.StreamHandler(stream)
        console_handler.setLevel(logging.DEBUG)

        # Format: [TIMESTAMP] [LEVEL] [MODULE] MESSAGE
        formatter = logging.Formatter(
            '[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        return logger

    @classmethod
    def log_stage(cls, stage: str, message: str, **kwargs):
        """Log stage-specific messages with context."""
        logger = cls.get_logger()
        context = " | ".join([f"{k}={v}" for k, v in kwargs.items()])
        logger.info(f"[{stage.upper()}] {message} {context if context else ''}".rstrip())


def get_logger(name: str = "dglift") -> logging.Logger:
    """Convenience function to get a logger instance."""
    return EngineLogger.get_logger(name)
