"""
The optional log file: rotation limits and JSON lines.
"""

import json
import logging
import logging.handlers

import pytest

from walt_workbench.core.config import Settings
from walt_workbench.core.logging_config import WorkbenchLogger, fields


def _file_handlers():
    return [h for h in logging.getLogger().handlers if isinstance(h, logging.handlers.RotatingFileHandler)]


@pytest.fixture
def file_logging(tmp_path):
    """A manager writing to a small rotating file under tmp_path"""
    path = tmp_path / "logs" / "walt.jsonl"
    config = {"logging": {"level": "INFO", "file": str(path),
                          "rotation": {"max_file_size_mb": 1, "backup_count": 2}}}
    manager = WorkbenchLogger(config)
    yield manager, path
    for handler in _file_handlers():
        handler.close()
    WorkbenchLogger({})


class TestLogRotation:
    def test_rotation_limits_from_config(self):
        manager = WorkbenchLogger({"logging": {"rotation": {"max_file_size_mb": 5, "backup_count": 3}}})
        assert manager._get_rotation_settings() == (5 * 1024 * 1024, 3)

    def test_rotation_defaults(self):
        assert WorkbenchLogger({})._get_rotation_settings() == (10 * 1024 * 1024, 5)

    def test_no_file_by_default(self):
        WorkbenchLogger({})
        assert _file_handlers() == []

    def test_file_handler_uses_limits(self, file_logging):
        """The log directory is created and the handler carries the configured limits"""
        _, path = file_logging
        [handler] = _file_handlers()
        assert path.parent.is_dir()
        assert handler.maxBytes == 1024 * 1024
        assert handler.backupCount == 2

    def test_file_gets_json_lines(self, file_logging):
        manager, path = file_logging
        logger = manager.get_logger("engine", "reduction")
        logger.info("round d=0 complete", extra=fields(level=0, steps=1, size=7))
        logger.debug("below the console level")
        for handler in _file_handlers():
            handler.flush()

        [line] = path.read_text().splitlines()
        data = json.loads(line)
        assert data["logger"] == "reduction.engine"
        assert (data["level"], data["steps"], data["size"]) == (0, 1, 7)

    def test_rollover(self, file_logging):
        manager, path = file_logging
        [handler] = _file_handlers()
        handler.maxBytes = 512
        logger = manager.get_logger("machine", "tm")
        for i in range(40):
            logger.info(f"run {i}", extra=fields(machine="parity", steps=1000 + i))
        handler.close()

        backups = sorted(p.name for p in path.parent.iterdir() if p.name != path.name)
        assert backups == ["walt.jsonl.1", "walt.jsonl.2"]
        assert path.stat().st_size > 0

    def test_unwritable_file_is_skipped(self, tmp_path, capsys):
        blocker = tmp_path / "taken"
        blocker.write_text("")
        WorkbenchLogger({"logging": {"file": str(blocker / "walt.jsonl")}})
        assert _file_handlers() == []
        assert "could not open log file" in capsys.readouterr().err


def test_settings_carry_rotation():
    rotation = Settings().logging.rotation
    assert (rotation.max_file_size_mb, rotation.backup_count) == (10, 5)
