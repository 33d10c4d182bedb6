"""Server configuration: JSON file with environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from ..errors import ValidationError


@dataclass(frozen=True)
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8330
    data_dir: str = "knohub-data"
    heartbeat_interval: float = 10.0
    staleness_timeout: float = 30.0
    queue_bound: int = 1024
    token_ttl_hours: float = 8.0
    # Bootstrap credentials, used only when the user file does not exist yet.
    admin_user: str = "admin"
    admin_password: str = "admin"

    def __post_init__(self) -> None:
        if self.port < 1 or self.port > 65535:
            raise ValidationError(f"port out of range: {self.port}")
        for name in ("heartbeat_interval", "staleness_timeout", "token_ttl_hours"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")
        if self.queue_bound < 1:
            raise ValidationError("queue_bound must be at least 1")

    @property
    def data_path(self) -> Path:
        return Path(self.data_dir)

    @property
    def bind(self) -> str:
        return f"{self.host}:{self.port}"


def load_config(path: str | Path | None = None, env: dict[str, str] | None = None) -> ServerConfig:
    """Build a config from an optional JSON file, then apply env overrides.

    Recognized variables: KNOHUB_BIND ("host:port") and KNOHUB_DATA_DIR.
    """
    env = os.environ if env is None else env
    values: dict[str, object] = {}
    if path is not None:
        raw = Path(path).read_text(encoding="utf-8")
        try:
            loaded = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad config file {path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValidationError(f"bad config file {path}: expected an object")
        known = {f.name for f in fields(ServerConfig)}
        unknown = sorted(set(loaded) - known)
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
        values.update(loaded)

    bind = env.get("KNOHUB_BIND")
    if bind:
        host, _, port = bind.rpartition(":")
        if not host or not port.isdigit():
            raise ValidationError(f"KNOHUB_BIND must look like host:port, got {bind!r}")
        values["host"] = host
        values["port"] = int(port)
    data_dir = env.get("KNOHUB_DATA_DIR")
    if data_dir:
        values["data_dir"] = data_dir

    try:
        return ServerConfig(**values)  # type: ignore[arg-type]
    except TypeError as exc:
        raise ValidationError(str(exc)) from exc
