"""Service/CLI configuration with precedence: flags > env > config file > defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from .errors import ConfigurationError

ENV_PREFIX = "LATENTCANVAS_"
CONFIG_ENV = ENV_PREFIX + "CONFIG"


@dataclass
class AppConfig:
    data_dir: str = "./latentcanvas-data"
    backend: str = "synthetic"
    port: int = 8321
    feather: float = 5.0
    workers: int = 1
    timeout_synthetic: float = 5.0
    timeout_real: float = 60.0
    encoder_path: str | None = None
    generator_path: str | None = None
    static_dir: str | None = None

    def generation_timeout(self, backend_name: str) -> float:
        return self.timeout_real if backend_name == "real" else self.timeout_synthetic


_ENV_KEYS = {
    "data_dir": ENV_PREFIX + "DATA_DIR",
    "backend": ENV_PREFIX + "BACKEND",
    "port": ENV_PREFIX + "PORT",
    "feather": ENV_PREFIX + "FEATHER",
    "workers": ENV_PREFIX + "WORKERS",
    "encoder_path": ENV_PREFIX + "ENCODER",
    "generator_path": ENV_PREFIX + "GENERATOR",
    "static_dir": ENV_PREFIX + "STATIC_DIR",
}


def load_config(
    overrides: dict | None = None,
    config_path: str | Path | None = None,
    env: dict | None = None,
) -> AppConfig:
    env = os.environ if env is None else env
    values: dict = {}

    path = config_path or env.get(CONFIG_ENV)
    if path:
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}", field="config")
        try:
            file_values = tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as exc:
            raise ConfigurationError(f"config file is not valid TOML: {exc}", field="config") from exc
        values.update(file_values)

    for name, key in _ENV_KEYS.items():
        if key in env:
            values[name] = env[key]

    for name, value in (overrides or {}).items():
        if value is not None:
            values[name] = value

    known = {f.name: f for f in fields(AppConfig)}
    unknown = set(values) - set(known)
    if unknown:
        raise ConfigurationError("unknown config key(s): " + ", ".join(sorted(unknown)), field="config")

    coerced = {}
    for name, value in values.items():
        target = known[name].type
        try:
            if value is None or isinstance(value, bool):
                coerced[name] = value
            elif "int" in str(target):
                coerced[name] = int(value)
            elif "float" in str(target):
                coerced[name] = float(value)
            else:
                coerced[name] = str(value)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"bad value for {name}: {value!r}", field=name) from exc
    return AppConfig(**coerced)
