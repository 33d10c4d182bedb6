"""Personal knowledge agents and the server-side agent directory."""

from .agent import PersonalAgent
from .directory import OFFLINE, AgentDirectory, AgentDirectoryEntry
from .messages import (
    AgentReport,
    AgentRequest,
    AgentResponse,
    PeerAnswer,
    RequestKind,
)
from .session import ServerLink

__all__ = [
    "AgentDirectory",
    "AgentDirectoryEntry",
    "AgentReport",
    "AgentRequest",
    "AgentResponse",
    "OFFLINE",
    "PeerAnswer",
    "PersonalAgent",
    "RequestKind",
    "ServerLink",
]
