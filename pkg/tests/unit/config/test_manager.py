"""Tests for the ConfigManager class."""

import json

import pytest

from symwave.config import load_experiment, record_experiment
from symwave.errors import ConfigError
from symwave.models.config import TransformConfig


class TestConfigManager:
    """Tests for the ConfigManager class."""

    def test_relative_paths_resolve_against_config_dir(self, test_config_manager, tmp_path):
        assert test_config_manager.path_for("run.json") == tmp_path / "run.json"
        assert test_config_manager.path_for(tmp_path / "x.json") == tmp_path / "x.json"

    def test_write_and_read(self, test_config_manager, tmp_path):
        path = test_config_manager.write_config("nested/run.json", {"b": 1, "a": [1.5, 2]})

        assert path == tmp_path / "nested" / "run.json"
        assert test_config_manager.read_config("nested/run.json") == {"a": [1.5, 2], "b": 1}
        assert not (tmp_path / "nested" / "run.json.tmp").exists()

    def test_read_missing_file(self, test_config_manager):
        with pytest.raises(ConfigError, match="not found"):
            test_config_manager.read_config("missing.json")

    def test_read_corrupt_file(self, test_config_manager, tmp_path):
        (tmp_path / "bad.json").write_text("{ invalid json")

        with pytest.raises(ConfigError, match="invalid JSON"):
            test_config_manager.read_config("bad.json")

    def test_read_non_object(self, test_config_manager, tmp_path):
        (tmp_path / "list.json").write_text("[1, 2]")

        with pytest.raises(ConfigError):
            test_config_manager.read_config("list.json")

    def test_record_experiment(self, tmp_path):
        cfg = TransformConfig(epsilon=0.1, gamma_phys=0.2)

        path = record_experiment(tmp_path / "out", cfg)

        assert path == tmp_path / "out" / "config.json"
        assert load_experiment(path, TransformConfig) == cfg


class TestLoad:
    """Tests for schema validation on load."""

    def test_load_valid(self, test_config_manager):
        test_config_manager.write_config("t.json", {"schema_version": 1, "epsilon": 0.1, "gamma_phys": 0.2})

        cfg = test_config_manager.load("t.json", TransformConfig)
        assert cfg == TransformConfig(epsilon=0.1, gamma_phys=0.2)

    def test_unsupported_schema_version(self, test_config_manager):
        test_config_manager.write_config("t.json", {"schema_version": 2, "epsilon": 0.1, "gamma_phys": 0.2})

        with pytest.raises(ConfigError) as exc_info:
            test_config_manager.load("t.json", TransformConfig)
        assert exc_info.value.key_path == "schema_version"

    def test_invalid_value_reports_key_path(self, test_config_manager):
        test_config_manager.write_config("t.json", {"epsilon": -0.1, "gamma_phys": 0.2})

        with pytest.raises(ConfigError) as exc_info:
            test_config_manager.load("t.json", TransformConfig)
        assert exc_info.value.key_path == "epsilon"

    def test_save_round_trip(self, test_config_manager, tmp_path):
        cfg = TransformConfig(epsilon=0.1, gamma_phys=0.2, direction="to_normalized")
        test_config_manager.save("t.json", cfg)

        assert json.loads((tmp_path / "t.json").read_text())["direction"] == "to_normalized"
        assert test_config_manager.load("t.json", TransformConfig) == cfg

    def test_load_experiment(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text(json.dumps({"epsilon": 0.3, "gamma_phys": 0.4}))

        assert load_experiment(path, TransformConfig).epsilon == 0.3
