import logging
import sys

import pytest

from tlhom.config import AppConfig, default_config, resolution_budget
from tlhom.errors import UsageError
from tlhom.utils import get_logger, load_config, setup_logger


def test_defaults():
    config = AppConfig()
    assert config.ring.ring == "Q"
    assert config.ring.theta == "theta1"
    assert config.resolution.budget == 20000
    assert config.resolution.max_degree == 4
    assert config.output.json is False
    assert config.output.save_dir is None
    assert config.log_level == "WARNING"


def test_load_config_from_yaml(tmp_path):
    path = tmp_path / "tlhom.yaml"
    path.write_text(
        "ring:\n"
        "  ring: Fp:5\n"
        "  theta: theta2\n"
        "resolution:\n"
        "  budget: 500\n"
        "output:\n"
        "  json: true\n"
        "  save_dir: out\n"
        "log_level: DEBUG\n"
    )
    config = load_config(path)
    assert config.ring.ring == "Fp:5"
    assert config.ring.theta == "theta2"
    assert config.resolution.budget == 500
    assert config.resolution.max_degree == 4
    assert config.output.json is True
    assert config.output.save_dir == "out"
    assert config.log_level == "DEBUG"


def test_empty_yaml_gives_defaults(tmp_path):
    path = tmp_path / "tlhom.yaml"
    path.write_text("")
    assert load_config(path) == AppConfig()


def test_missing_explicit_config(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "nope.yaml")


def test_project_config_is_picked_up(tmp_path, monkeypatch):
    (tmp_path / "pyproject.toml").write_text("[project]\nname = 'x'\n")
    (tmp_path / "tlhom.yaml").write_text("resolution:\n  budget: 77\n")
    monkeypatch.chdir(tmp_path)
    assert load_config().resolution.budget == 77


def test_budget_precedence(tmp_path, monkeypatch):
    monkeypatch.delenv("TLHOM_BUDGET", raising=False)
    (tmp_path / "pyproject.toml").write_text("")
    monkeypatch.chdir(tmp_path)
    assert resolution_budget() == default_config.resolution.budget
    config = AppConfig()
    config.resolution.budget = 123
    assert resolution_budget(config) == 123
    monkeypatch.setenv("TLHOM_BUDGET", "9")
    assert resolution_budget(config) == 9


@pytest.mark.parametrize("raw", ["abc", "0", "-4"])
def test_bad_budget_environment(monkeypatch, raw):
    monkeypatch.setenv("TLHOM_BUDGET", raw)
    with pytest.raises(UsageError):
        resolution_budget()


def test_setup_logger():
    logger = setup_logger("tlhom.test", "debug")
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 1
    setup_logger("tlhom.test", "ERROR")
    assert len(logger.handlers) == 1
    assert logger.handlers[0].stream is sys.stderr
    assert not logger.propagate
    assert get_logger("tlhom.test") is logger


def test_setup_logger_rejects_unknown_level():
    with pytest.raises(ValueError):
        setup_logger("tlhom.test", "LOUD")


def test_get_logger_namespaces_names():
    assert get_logger("resolution").name == "tlhom.resolution"
    assert get_logger("tlhom.homology").name == "tlhom.homology"
    assert get_logger().name == "tlhom"


def test_budget_reads_project_config(tmp_path, monkeypatch):
    (tmp_path / "pyproject.toml").write_text("")
    (tmp_path / "tlhom.yaml").write_text("resolution:\n  budget: 77\n")
    monkeypatch.delenv("TLHOM_BUDGET", raising=False)
    monkeypatch.chdir(tmp_path)
    assert resolution_budget() == 77
