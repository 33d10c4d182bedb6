"""Shared server: accounts, hosted agents, HTTP front end."""

from .config import ServerConfig, load_config
from .http import create_app
from .service import Hub, HubLink, Session, UserAccount

__all__ = [
    "Hub",
    "HubLink",
    "ServerConfig",
    "Session",
    "UserAccount",
    "create_app",
    "load_config",
]
