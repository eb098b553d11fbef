"""FastAPI application exposing one endpoint per computation command."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..rootdata import NotADiagramSymmetry, UnsupportedType
from ..invmap import UnsupportedTypeForInvariants
from .models import CommandReport, CommandRequest
from .ops import COMMANDS, ConfigParse, report_ok, run_command

app = FastAPI(
    title="loopstrata",
    description=(
        "Exact Moy-Prasad quotients of twisted loop algebras: gradings, "
        "invariant maps, twisted-Levi strata, and property suites."
    ),
    version="0.1.0",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "commands": list(COMMANDS)}


def _execute(command: str, req: CommandRequest) -> CommandReport:
    try:
        result = run_command(command, req.config, req.element)
    except ConfigParse as exc:
        raise HTTPException(
            status_code=422, detail={"error": "ConfigParse", "detail": str(exc)}
        )
    except (UnsupportedType, NotADiagramSymmetry, UnsupportedTypeForInvariants) as exc:
        raise HTTPException(
            status_code=400,
            detail={"error": type(exc).__name__, "detail": str(exc)},
        )
    except (ValueError, RuntimeError) as exc:
        raise HTTPException(
            status_code=409,
            detail={"error": type(exc).__name__, "detail": str(exc)},
        )
    return CommandReport(
        command=command, config=req.config, ok=report_ok(result), result=result
    )


def _register(command: str):
    path = "/" + command

    @app.post(path, response_model=CommandReport, name=command)
    def endpoint(req: CommandRequest) -> CommandReport:  # noqa: ANN001
        return _execute(command, req)

    return endpoint


for _cmd in COMMANDS:
    _register(_cmd)
