"""Tests for configuration, logging and the error hierarchy."""
import logging
import pytest
from unittest.mock import MagicMock, patch
from src.utils.config import Config
from src.utils.errors import (CertificateError, DgLiftError, InternalInvariantError, InternalObstructionNonzero,
                              NaturalityFails, ParseError, ValidationError, VanishingHypothesisFails)
from src.utils.logger import EngineLogger, get_logger


class TestConfig:
    """Test cases for Config."""

    def test_defaults_valid(self):
        """Test the default configuration validates."""
        assert Config.validate() is True

    def test_exit_codes(self):
        """Test the documented exit codes."""
        assert (Config.EXIT_OK, Config.EXIT_FAILURE, Config.EXIT_PARSE_ERROR, Config.EXIT_INTERNAL) == (0, 1, 2, 3)

    @patch.object(Config, 'LOG_LEVEL', 'LOUD')
    def test_invalid_log_level(self):
        """Test an unknown log level is rejected."""
        with pytest.raises(ValueError, match="DGLIFT_LOG_LEVEL"):
            Config.validate()

    @patch.object(Config, 'LOG_STREAM', 'file')
    def test_invalid_log_stream(self):
        """Test an unknown log stream is rejected."""
        with pytest.raises(ValueError, match="DGLIFT_LOG_STREAM"):
            Config.validate()


class TestErrors:
    """Test cases for the error hierarchy."""

    def test_exit_codes(self):
        """Test each error maps to its CLI exit code."""
        assert ParseError(1, 1, "x").exit_code == Config.EXIT_PARSE_ERROR
        assert InternalInvariantError("x").exit_code == Config.EXIT_INTERNAL
        assert InternalObstructionNonzero(2, ("b", "a")).exit_code == Config.EXIT_INTERNAL
        assert VanishingHypothesisFails([]).exit_code == Config.EXIT_FAILURE
        assert NaturalityFails("a").exit_code == Config.EXIT_FAILURE

    def test_parse_error_location(self):
        """Test the message carries line and column."""
        error = ParseError(4, 7, "unknown object 'Z'")
        assert str(error) == "line 4, column 7: unknown object 'Z'"

    def test_structured_data(self):
        """Test errors keep the data reports are built from."""
        failure = {"degree": -1, "source": "X", "target": "Y", "dimension": 1}
        error = VanishingHypothesisFails([failure])
        assert error.failures == [failure]
        assert "H^-1(X,Y) has dimension 1" in str(error)
        assert ValidationError("leibniz", ["w", "t"]).basis_tuple == ("w", "t")
        assert CertificateError("digest mismatch", ["a"]).problems == ["a"]

    def test_common_base(self):
        """Test every engine error derives from DgLiftError."""
        for error in (ParseError(1, 1, "x"), NaturalityFails("a"), InternalObstructionNonzero(1, ())):
            assert isinstance(error, DgLiftError)


class TestEngineLogger:
    """Test cases for EngineLogger."""

    def test_get_logger_cached(self):
        """Test loggers are created once per name."""
        first = get_logger("tests.cached")
        assert get_logger("tests.cached") is first
        assert first.name == "dglift.tests.cached"
        assert first.propagate is False
        assert len(first.handlers) == 1

    def test_root_name(self):
        """Test the default logger name."""
        assert get_logger().name == "dglift"
        assert isinstance(get_logger(), logging.Logger)

    @patch.object(EngineLogger, 'get_logger')
    def test_log_stage_context(self, mock_get_logger):
        """Test stage messages carry key=value context."""
        mock_logger = MagicMock()
        mock_get_logger.return_value = mock_logger

        EngineLogger.log_stage("degree-2", "obstructions killed", tuples=1, nonzero=0)

        mock_logger.info.assert_called_once_with("[DEGREE-2] obstructions killed tuples=1 | nonzero=0")

    @patch.object(EngineLogger, 'get_logger')
    def test_log_stage_plain(self, mock_get_logger):
        """Test a stage message without context."""
        mock_logger = MagicMock()
        mock_get_logger.return_value = mock_logger

        EngineLogger.log_stage("VERIFY", "lift verified")

        mock_logger.info.assert_called_once_with("[VERIFY] lift verified")
