"""
Unit tests for centralized logging configuration.
"""

import pytest
import logging
import json
import sys
from unittest.mock import patch
from walt_workbench.core.logging_config import (
    WorkbenchLogger, get_logger_manager, get_logger, set_log_level,
    get_log_level, StructuredFormatter, SimpleFormatter, fields
)


def _record(msg="Test message", level=logging.INFO, exc_info=None):
    return logging.LogRecord(
        name="test_logger",
        level=level,
        pathname="test.py",
        lineno=10,
        msg=msg,
        args=(),
        exc_info=exc_info
    )


class TestStructuredFormatter:
    def test_structured_formatter_basic(self):
        """Test structured formatter creates proper JSON"""
        formatter = StructuredFormatter("test_component")

        data = json.loads(formatter.format(_record()))

        assert data["level"] == "INFO"
        assert data["component"] == "test_component"
        assert data["logger"] == "test_logger"
        assert data["message"] == "Test message"
        assert data["module"] == "test"
        assert data["line"] == 10
        assert "timestamp" in data

    def test_structured_formatter_with_exception(self):
        """Test structured formatter handles exceptions"""
        formatter = StructuredFormatter("test_component")

        try:
            raise ValueError("Test error")
        except ValueError:
            record = _record("Test error occurred", logging.ERROR, sys.exc_info())

        data = json.loads(formatter.format(record))

        assert data["level"] == "ERROR"
        assert data["message"] == "Test error occurred"
        assert "ValueError: Test error" in data["exception"]

    def test_structured_formatter_with_extra_fields(self):
        """Test structured formatter includes extra fields"""
        formatter = StructuredFormatter("test_component")
        record = _record()
        record.extra_fields = {"steps": 12, "level": 1}

        data = json.loads(formatter.format(record))

        assert data["steps"] == 12
        assert data["level"] == 1


class TestSimpleFormatter:
    def test_simple_format(self):
        line = SimpleFormatter("walt").format(_record("round d=0 steps=1 size=7"))
        assert line.endswith("walt.test_logger INFO: round d=0 steps=1 size=7")
        assert line.startswith("[")

    def test_simple_format_appends_fields(self):
        record = _record("round d=1 complete")
        record.extra_fields = fields(level=1, steps=4)["extra_fields"]
        line = SimpleFormatter("walt").format(record)
        assert line.endswith("round d=1 complete level=1 steps=4")


class TestWorkbenchLogger:
    def test_logger_manager_singleton(self):
        """Test that get_logger_manager returns the same instance"""
        manager1 = get_logger_manager()
        manager2 = get_logger_manager()
        assert manager1 is manager2

    def test_get_logger_creates_unique_loggers(self):
        """Test that get_logger creates properly named loggers"""
        logger1 = get_logger("test1", "component1")
        logger2 = get_logger("test2", "component2")
        logger3 = get_logger("test1", "component1")  # Same as logger1

        assert logger1.name == "component1.test1"
        assert logger2.name == "component2.test2"
        assert logger1 is logger3
        assert logger1 is not logger2

    def test_set_log_level(self):
        """Test that set_log_level works correctly"""
        previous = get_log_level()
        try:
            set_log_level("DEBUG")
            assert get_log_level() == "DEBUG"
            assert get_logger("test1", "component1").level == logging.DEBUG

            set_log_level("WARNING")
            assert get_log_level() == "WARNING"

            # Unknown names fall back to INFO
            set_log_level("INVALID")
            assert get_log_level() == "INFO"
        finally:
            set_log_level(previous)

    def test_level_from_config(self):
        manager = WorkbenchLogger({"logging": {"level": "ERROR"}})
        assert manager.get_log_level() == "ERROR"

    def test_console_goes_to_stderr(self):
        """Stdout is left to command reports"""
        WorkbenchLogger({})
        handlers = logging.getLogger().handlers
        assert any(getattr(h, "stream", None) is sys.stderr for h in handlers)
        assert all(getattr(h, "stream", None) is not sys.stdout for h in handlers)

    def test_structured_console(self):
        WorkbenchLogger({"logging": {"structured": True}})
        [handler] = logging.getLogger().handlers
        assert isinstance(handler.formatter, StructuredFormatter)


class TestLoggingIntegration:
    """Integration tests to ensure logging works with existing code"""

    def test_settings_integration(self):
        """A changed level in the settings file reaches the logger manager"""
        from walt_workbench.core.config import Settings
        settings_obj = Settings()

        with patch('os.path.exists', return_value=True), \
             patch('os.path.getmtime', return_value=123456), \
             patch('builtins.open'), \
             patch('json.load', return_value={"logging": {"level": "ERROR"}}), \
             patch('walt_workbench.core.logging_config.set_log_level') as level:

            settings_obj._last_mtime = 123455  # Make it seem like file changed
            settings_obj.reload_if_changed()

        level.assert_called_once_with("ERROR")


def test_reduction_logging_integration():
    from walt_workbench.reduction.engine import logger
    assert logger.name == "reduction.engine"


def test_checker_logging_integration():
    from walt_workbench.judgments.checker import logger
    assert logger.name == "judgments.checker"


def test_machine_logging_integration():
    from walt_workbench.tm.machine import logger
    assert logger.name == "tm.machine"


if __name__ == "__main__":
    pytest.main([__file__])
