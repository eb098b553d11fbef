"""Thin command-line client over the service layer.

Commands run in-process by default; with --server they are POSTed to a
running service instead.  Reports are JSON with sorted keys, so repeated
runs with one config are byte-identical.

Exit codes: 0 ok, 2 config error, 3 unsupported type/symmetry,
4 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .rootdata import NotADiagramSymmetry, UnsupportedType
from .invmap import UnsupportedTypeForInvariants
from .service.models import CommandRequest, ElementLiteral, SessionConfig
from .service.ops import COMMANDS, ConfigParse, report_ok, run_command

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3
EXIT_PROPERTY = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="loopstrata",
        description="Exact Moy-Prasad quotients, gradings and twisted-Levi strata.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd)
        _add_common(sp)
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return p


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--type", dest="cartan_type", default=None, help="Cartan letter A..G")
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--twist", default=None, help="none | flip | swap | triality")
    sp.add_argument("--n", type=int, default=None, help="conductor (multiple of the twist order)")
    sp.add_argument("--x", default=None, help='apartment point, e.g. "1/2" or "1/3,1/3"')
    sp.add_argument("--r", default=None, help='depth, e.g. "1/2"')
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--depth-cap", default=None)
    sp.add_argument("--element", default=None, help="JSON list of {alpha, level, basis_index, coeff}")
    sp.add_argument("--config", default=None, help="JSON file with a SessionConfig")
    sp.add_argument("--server", default=None, help="base URL of a running service")
    sp.add_argument("--json", dest="json_path", default=None, help="also write the report here")


def _config_from_args(args) -> SessionConfig:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            data.update(json.load(fh))
    if args.cartan_type is not None:
        data["cartan_type"] = args.cartan_type
    if args.rank is not None:
        data["rank"] = args.rank
    if args.twist is not None:
        data["twist"] = args.twist
    if args.n is not None:
        data["n"] = args.n
    if args.x is not None:
        data["x"] = [part.strip() for part in args.x.split(",")]
    if args.r is not None:
        data["r"] = args.r
    if args.seed is not None:
        data["seed"] = args.seed
    if args.samples is not None:
        data["sample_size"] = args.samples
    if args.depth_cap is not None:
        data["depth_cap"] = args.depth_cap
    try:
        return SessionConfig(**data)
    except Exception as exc:
        raise ConfigParse(str(exc)) from exc


def _element_from_args(args):
    if not args.element:
        return None
    try:
        raw = json.loads(args.element)
        return [ElementLiteral(**item) for item in raw]
    except Exception as exc:
        raise ConfigParse(f"bad --element: {exc}") from exc


def _emit(report: dict, json_path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text + "\n")


def _run_remote(server: str, command: str, req: CommandRequest) -> tuple[dict, bool]:
    import httpx

    url = server.rstrip("/") + "/" + command
    resp = httpx.post(url, json=req.model_dump(), timeout=None)
    if resp.status_code in (400, 422, 409):
        detail = resp.json().get("detail", {})
        name = detail.get("error", "ConfigParse")
        exc_map = {
            "ConfigParse": ConfigParse,
            "UnsupportedType": UnsupportedType,
            "NotADiagramSymmetry": NotADiagramSymmetry,
            "UnsupportedTypeForInvariants": UnsupportedTypeForInvariants,
        }
        raise exc_map.get(name, RuntimeError)(detail.get("detail", resp.text))
    resp.raise_for_status()
    body = resp.json()
    return body, bool(body.get("ok"))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    try:
        cfg = _config_from_args(args)
        element = _element_from_args(args)
        req = CommandRequest(config=cfg, element=element)
        if args.server:
            body, ok = _run_remote(args.server, args.command, req)
            report = body
        else:
            result = run_command(args.command, cfg, element)
            ok = report_ok(result)
            report = {
                "command": args.command,
                "config": json.loads(cfg.model_dump_json()),
                "ok": ok,
                "result": result,
            }
    except ConfigParse as exc:
        print(json.dumps({"error": "ConfigParse", "detail": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    except (UnsupportedType, NotADiagramSymmetry, UnsupportedTypeForInvariants) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "detail": str(exc)}),
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED
    _emit(report, args.json_path)
    return EXIT_OK if ok else EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
