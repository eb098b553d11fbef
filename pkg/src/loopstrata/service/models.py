"""Pydantic request/response models shared by the service and the CLI."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class SessionConfig(BaseModel):
    """Group/twist selection plus the sampling knobs of one computation.

    Rationals travel as "p/q" strings; floats are never accepted.
    """

    cartan_type: str = Field(default="A", pattern="^[A-Ga-g]$")
    rank: int = 1
    twist: str = "none"  # none | flip | swap | triality
    n: Optional[int] = None  # conductor; defaults to the twist order
    x: list[str] = Field(default_factory=lambda: ["0"])
    r: str = "0"
    seed: int = 0
    sample_size: int = 32
    depth_cap: Optional[str] = None  # defaults to r + 2


class ElementLiteral(BaseModel):
    """One coefficient of a graded element in the affine basis."""

    alpha: list[int]
    level: str
    basis_index: int = 0
    coeff: str = "1"


class CommandRequest(BaseModel):
    config: SessionConfig
    element: Optional[list[ElementLiteral]] = None


class CommandReport(BaseModel):
    command: str
    config: SessionConfig
    ok: bool
    result: dict


class ErrorReport(BaseModel):
    error: str  # exception class name
    detail: str
