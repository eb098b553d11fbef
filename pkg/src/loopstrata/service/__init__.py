"""Service layer: pydantic models, command execution, FastAPI app."""

from .models import CommandReport, CommandRequest, ElementLiteral, SessionConfig
from .ops import COMMANDS, ConfigParse, build_session, run_command

__all__ = [
    "COMMANDS",
    "CommandReport",
    "CommandRequest",
    "ConfigParse",
    "ElementLiteral",
    "SessionConfig",
    "build_session",
    "run_command",
]
