from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field
from typing import Literal, Optional
import os
import json

class ReductionSettings(BaseSettings):
    budget: int = 1_000_000
    strategy: Literal["leftmost-outermost", "random"] = "leftmost-outermost"
    seed: int = 0  # only read by the random strategy
    # "beta" fires plain beta redexes once no restricted one is left
    relation: Literal["restricted", "beta"] = "restricted"

class CorpusSettings(BaseSettings):
    count: int = 200
    max_depth: int = 4
    max_value: int = 31
    max_arity: int = 2
    seed: int = 0

class TMSettings(BaseSettings):
    max_states: int = 3
    max_symbols: int = 5
    max_input: int = 4
    max_degree: int = 2

class LogRotationSettings(BaseSettings):
    max_file_size_mb: int = 10
    backup_count: int = 5

class LoggingSettings(BaseSettings):
    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    structured: bool = False  # JSON lines instead of the short console format
    file: Optional[str] = None
    rotation: LogRotationSettings = Field(default_factory=LogRotationSettings)

class Settings(BaseSettings):
    reduction: ReductionSettings = Field(default_factory=ReductionSettings)
    corpus: CorpusSettings = Field(default_factory=CorpusSettings)
    tm: TMSettings = Field(default_factory=TMSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    _config_path = "walt_workbench/settings.json"
    _last_mtime = None

    def reload_if_changed(self):
        # Import here to avoid circular imports
        from walt_workbench.core.logging_config import set_log_level

        if not os.path.exists(self._config_path):
            with open(self._config_path, "w") as f:
                json.dump(self.model_dump(), f, indent=2)
            self._last_mtime = os.path.getmtime(self._config_path)
            return
        mtime = os.path.getmtime(self._config_path)
        if self._last_mtime is None or mtime > self._last_mtime:
            old_log_level = self.logging.level

            with open(self._config_path, "r") as f:
                data = json.load(f)

            # Only update known fields
            for k, v in data.items():
                if hasattr(self, k):
                    section = getattr(self, k)
                    if isinstance(section, BaseSettings) and isinstance(v, dict):
                        for subk, subv in v.items():
                            if hasattr(section, subk):
                                setattr(section, subk, subv)
                    else:
                        setattr(self, k, v)

            if old_log_level != self.logging.level:
                set_log_level(self.logging.level)

            self._last_mtime = mtime

    def save(self):
        """Save current settings to file"""
        with open(self._config_path, "w") as f:
            json.dump(self.model_dump(), f, indent=2)
        self._last_mtime = os.path.getmtime(self._config_path)

    model_config = SettingsConfigDict(env_prefix="WALT_", case_sensitive=False)

settings = Settings()
