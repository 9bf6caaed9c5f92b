"""Fixtures for end-to-end experiments."""

import json
import logging

import pytest
from click.testing import CliRunner

from symwave.cmd.main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)
    logging.getLogger("symwave").setLevel(logging.NOTSET)


@pytest.fixture
def run_cli(runner):
    """Invoke the CLI deterministically and fail with its output on a nonzero exit code."""

    def run(*args, expected: int = 0):
        result = runner.invoke(cli, ["--deterministic", *map(str, args)])
        assert result.exit_code == expected, result.output
        return result

    return run


@pytest.fixture
def experiment(tmp_path):
    """Write an experiment file and return its path."""

    def write(name: str, **data):
        path = tmp_path / name
        path.write_text(json.dumps({"schema_version": 1, **data}))
        return path

    return write
