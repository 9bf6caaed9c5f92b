"""Experiment configuration files for symwave."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar, Union

from pydantic import ValidationError

from ..errors import ConfigError
from ..models.base import BaseSymwaveModel, error_key_path
from ..models.config import SCHEMA_VERSION

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=BaseSymwaveModel)
PathLike = Union[str, os.PathLike]

RECORD_NAME = "config.json"


class ConfigManager:
    """
    Reads and writes JSON experiment files under one directory.

    Writes go to a temporary file that is then moved over the target, so a
    crash never leaves a half-written experiment behind.
    """

    def __init__(self, config_dir: Optional[PathLike] = None):
        """
        Args:
            config_dir: Directory holding experiment files (default: current directory)
        """
        self.config_dir = Path(config_dir) if config_dir is not None else Path.cwd()
        logger.debug(f"ConfigManager initialized with dir: {self.config_dir}")

    def path_for(self, name: PathLike) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.config_dir / path

    def read_config(self, name: PathLike) -> Dict[str, Any]:
        """
        Read a JSON experiment file.

        Raises:
            ConfigError: if the file is missing or not valid JSON
        """
        path = self.path_for(name)
        logger.debug(f"Reading config from: {path}")
        try:
            with open(path, "r") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {path}: {e.msg} (line {e.lineno})")
        if not isinstance(data, dict):
            raise ConfigError(f"{path} must contain a JSON object")
        return data

    def write_config(self, name: PathLike, config: Dict[str, Any]) -> Path:
        """Write a configuration dictionary atomically and return its path."""
        path = self.path_for(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        temp_path = path.with_name(path.name + ".tmp")
        with open(temp_path, "w") as f:
            json.dump(config, f, indent=2, sort_keys=True)
            f.write("\n")
        os.replace(temp_path, path)
        logger.debug(f"Wrote config to: {path}")
        return path

    def load(self, name: PathLike, schema: Type[T]) -> T:
        """
        Read and validate an experiment file against a schema.

        Raises:
            ConfigError: with the dotted key path of the first invalid entry
        """
        data = self.read_config(name)
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})",
                              key_path="schema_version")
        try:
            return schema.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            raise ConfigError(first["msg"], key_path=error_key_path(e)) from e

    def save(self, name: PathLike, model: BaseSymwaveModel) -> Path:
        return self.write_config(name, model.model_dump_report())


def load_experiment(path: PathLike, schema: Type[T]) -> T:
    """Load one experiment file, relative paths resolved against the working directory."""
    return ConfigManager().load(path, schema)


def record_experiment(out_dir: PathLike, cfg: BaseSymwaveModel) -> Path:
    """Store the validated experiment next to its outputs so a run can be repeated from them."""
    return ConfigManager(out_dir).save(RECORD_NAME, cfg)
