"""Configuration precedence: flags > env > config file > defaults."""

from __future__ import annotations

import pytest

from latentcanvas.config import AppConfig, load_config
from latentcanvas.errors import ConfigurationError


def test_defaults():
    config = load_config(env={})
    assert config.backend == "synthetic"
    assert config.port == 8321
    assert config.workers == 1


def test_config_file_overrides_defaults(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text('backend = "real"\nport = 9000\n')
    config = load_config(config_path=path, env={})
    assert config.backend == "real"
    assert config.port == 9000


def test_env_overrides_file(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text('port = 9000\n')
    config = load_config(config_path=path, env={"LATENTCANVAS_PORT": "7000"})
    assert config.port == 7000


def test_flags_override_everything(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text('port = 9000\nbackend = "real"\n')
    config = load_config(
        overrides={"port": 6000, "backend": "synthetic"},
        config_path=path,
        env={"LATENTCANVAS_PORT": "7000"},
    )
    assert config.port == 6000
    assert config.backend == "synthetic"


def test_none_overrides_fall_through(tmp_path):
    config = load_config(overrides={"port": None}, env={"LATENTCANVAS_PORT": "7000"})
    assert config.port == 7000


def test_config_file_from_env(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text("workers = 3\n")
    config = load_config(env={"LATENTCANVAS_CONFIG": str(path)})
    assert config.workers == 3


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(config_path=tmp_path / "nope.toml", env={})


def test_invalid_toml(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text("= broken")
    with pytest.raises(ConfigurationError):
        load_config(config_path=path, env={})


def test_unknown_keys_rejected(tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text("sparkle = 1\n")
    with pytest.raises(ConfigurationError):
        load_config(config_path=path, env={})


def test_bad_numeric_value(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(env={"LATENTCANVAS_PORT": "not-a-port"})


def test_generation_timets():
    config = AppConfig()
    assert config.generation_timeout("synthetic") == 5.0
    assert config.generation_timeout("real") == 60.0
