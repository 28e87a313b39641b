"""
Logging for the WALT workbench.

Every module asks for ``get_logger(name, component)`` and gets the logger
``component.name`` (``reduction.engine``, ``judgments.checker``, ``tm.machine``).
The manager reads the ``logging`` section of the settings:

- ``level``: applied to the console and to every logger handed out
- ``structured``: JSON lines on the console instead of the short format
- ``file``: an optional JSON-lines file, rotated by size

Console output goes to stderr. Stdout carries command reports only.

Structured values travel with a record through ``fields``::

    logger.info("round finished", extra=fields(level=1, steps=4, size=31))
"""

import json
import logging
import logging.handlers
import os
import sys
import threading
from datetime import datetime, timezone
from typing import Any, Dict, Optional, Tuple

DEFAULT_COMPONENT = "walt"
DEFAULT_LEVEL = logging.WARNING


def fields(**values: Any) -> Dict[str, Dict[str, Any]]:
    """``extra=`` payload for structured values (steps, level, size, machine)"""
    return {"extra_fields": values}


def _record_fields(record: logging.LogRecord) -> Dict[str, Any]:
    return getattr(record, "extra_fields", None) or {}


def _level_number(level: Any, fallback: int = logging.INFO) -> int:
    if isinstance(level, int):
        return level
    return logging.getLevelNamesMapping().get(str(level).upper(), fallback)


class StructuredFormatter(logging.Formatter):
    """One JSON object per record"""

    def __init__(self, component: str = DEFAULT_COMPONENT):
        super().__init__()
        self.component = component

    def format(self, record: logging.LogRecord) -> str:
        data = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "component": self.component,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }
        if record.exc_info:
            data["exception"] = self.formatException(record.exc_info)
        data.update(_record_fields(record))
        return json.dumps(data, default=str)


class SimpleFormatter(logging.Formatter):
    """``[12:00:01] walt.reduction.engine INFO: message k=v``"""

    def __init__(self, component: str = DEFAULT_COMPONENT):
        super().__init__()
        self.component = component

    def format(self, record: logging.LogRecord) -> str:
        stamp = datetime.now().strftime("%H:%M:%S")
        line = f"[{stamp}] {self.component}.{record.name} {record.levelname}: {record.getMessage()}"
        extra = _record_fields(record)
        if extra:
            line += " " + " ".join(f"{k}={v}" for k, v in extra.items())
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


class WorkbenchLogger:
    """Owns the root handlers and the level of every workbench logger"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.loggers: Dict[str, logging.Logger] = {}
        self._lock = threading.Lock()
        section = self._section()
        self._current_level = _level_number(section.get("level") or DEFAULT_LEVEL, DEFAULT_LEVEL)
        self._install_handlers()

    def _section(self) -> Dict[str, Any]:
        return self.config.get("logging") or {}

    def _get_rotation_settings(self) -> Tuple[int, int]:
        """(max bytes, backups) for the log file"""
        rotation = self._section().get("rotation") or {}
        return rotation.get("max_file_size_mb", 10) * 1024 * 1024, rotation.get("backup_count", 5)

    def _install_handlers(self):
        root = logging.getLogger()
        root.handlers.clear()
        root.setLevel(self._current_level)

        section = self._section()
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(self._current_level)
        console.setFormatter(StructuredFormatter() if section.get("structured") else SimpleFormatter())
        root.addHandler(console)

        if section.get("file"):
            self._add_file_handler(root, section["file"])

    def _add_file_handler(self, root: logging.Logger, path: str):
        # files always get everything, as JSON lines
        max_bytes, backups = self._get_rotation_settings()
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            handler = logging.handlers.RotatingFileHandler(
                path, maxBytes=max_bytes, backupCount=backups, encoding="utf-8")
        except OSError as e:
            print(f"Warning: could not open log file {path}: {e}", file=sys.stderr)
            return
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(StructuredFormatter())
        root.addHandler(handler)

    def get_logger(self, name: str, component: str = DEFAULT_COMPONENT) -> logging.Logger:
        full_name = f"{component}.{name}"
        with self._lock:
            if full_name not in self.loggers:
                logger = logging.getLogger(full_name)
                logger.setLevel(self._current_level)
                self.loggers[full_name] = logger
            return self.loggers[full_name]

    def set_log_level(self, level: str):
        """Unknown level names fall back to INFO"""
        number = _level_number(level)
        with self._lock:
            self._current_level = number
            root = logging.getLogger()
            root.setLevel(number)
            for handler in root.handlers:
                if not isinstance(handler, logging.FileHandler):
                    handler.setLevel(number)
            for logger in self.loggers.values():
                logger.setLevel(number)

    def get_log_level(self) -> str:
        return logging.getLevelName(self._current_level)


_logger_manager: Optional[WorkbenchLogger] = None


def _load_config() -> Dict[str, Any]:
    try:
        from walt_workbench.core.config import settings
        return settings.model_dump()
    except Exception:
        return {}


def get_logger_manager() -> WorkbenchLogger:
    global _logger_manager
    if _logger_manager is None:
        _logger_manager = WorkbenchLogger(_load_config())
    return _logger_manager


def get_logger(name: str, component: str = DEFAULT_COMPONENT) -> logging.Logger:
    return get_logger_manager().get_logger(name, component)


def set_log_level(level: str):
    return get_logger_manager().set_log_level(level)


def get_log_level() -> str:
    return get_logger_manager().get_log_level()
