"""Batch front end: config-driven force sweeps with CSV/JSON output.

The CLI is a thin client of the service layer: it turns a YAML config plus
flag overrides into the same request models the HTTP endpoints accept, runs
them in-process by default (or against a remote service via --server), and
renders the response rows.  Exit codes: 0 success, 2 configuration error,
3 I/O failure.  VFL_LOG=error|warn|info|debug controls diagnostics on
standard error.
"""

from __future__ import annotations

import argparse
import datetime
import io
import json
import logging
import os
import sys

import yaml
from pydantic import ValidationError

from . import __version__
from .service import models, runner

log = logging.getLogger("vfl")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

SWEEP_HEADER = "d,kind,mode,regime,value,value_si,error_estimate,converged,sign_toward_nearest_mirror"
COMPARE_HEADER = "d,screened,assisted,total,minkowski,ratio_assisted_screened,ratio_minkowski_total,converged"
UNITS_COMMENT = (
    "# units: value per area in hbar*Omega_ref^4/c^3, per atom in "
    "hbar*Omega_ref^5/c^4*l_ref^3; value_si in Pa (per area) or N (per atom)"
)


class ConfigError(Exception):
    pass


def _setup_logging():
    level = os.environ.get("VFL_LOG", "warn").lower()
    mapping = {"error": logging.ERROR, "warn": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(
        stream=sys.stderr,
        level=mapping.get(level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" (line {mark.line + 1}, column {mark.column + 1})" if mark else ""
        raise ConfigError(f"config parse error{where}: {getattr(exc, 'problem', exc)}")
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping of sections")
    return data


def _apply_overrides(data: dict, args: argparse.Namespace) -> dict:
    compute = dict(data.get("compute") or {})
    if args.force:
        kinds: list[str] = []
        for item in args.force:
            kinds.extend(k.strip() for k in item.split(",") if k.strip())
        compute["forces"] = kinds
    if args.mode:
        compute["mode"] = args.mode
    if args.regime:
        compute["regime"] = args.regime
    if compute:
        data["compute"] = compute
    if args.jobs is not None:
        data["jobs"] = args.jobs
    return data


def _validation_message(exc: ValidationError) -> str:
    lines = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "config"
        lines.append(f"{loc}: {err['msg']}")
    return "\n".join(lines)


def _format_float(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _sweep_csv(rows: list[models.ForceRow], timestamp: bool) -> str:
    out = io.StringIO()
    if timestamp:
        now = datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        out.write(f"# generated {now}\n")
    out.write(UNITS_COMMENT + "\n")
    out.write(SWEEP_HEADER + "\n")
    for r in rows:
        out.write(
            ",".join(
                (
                    _format_float(r.d),
                    r.kind,
                    r.mode,
                    r.regime,
                    _format_float(r.value),
                    _format_float(r.value_si),
                    _format_float(r.error_estimate),
                    "true" if r.converged else "false",
                    str(r.sign_toward_nearest_mirror),
                )
            )
            + "\n"
        )
    return out.getvalue()


def _compare_csv(rows: list[models.CompareRow], timestamp: bool) -> str:
    out = io.StringIO()
    if timestamp:
        now = datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        out.write(f"# generated {now}\n")
    out.write(UNITS_COMMENT + "\n")
    out.write(COMPARE_HEADER + "\n")
    for r in rows:
        out.write(
            ",".join(
                (
                    _format_float(r.d),
                    _format_float(r.screened),
                    _format_float(r.assisted),
                    _format_float(r.total),
                    _format_float(r.minkowski),
                    _format_float(r.ratio_assisted_screened),
                    _format_float(r.ratio_minkowski_total),
                    "true" if r.converged else "false",
                )
            )
            + "\n"
        )
    return out.getvalue()


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}")


def _remote_post(server: str, endpoint: str, payload: dict) -> dict:
    import httpx

    url = server.rstrip("/") + endpoint
    try:
        resp = httpx.post(url, json=payload, timeout=None)
    except httpx.HTTPError as exc:
        raise IOError(f"cannot reach server {url}: {exc}")
    if resp.status_code == 422:
        raise ConfigError(f"server rejected request: {resp.text}")
    if resp.status_code != 200:
        raise IOError(f"server error {resp.status_code}: {resp.text}")
    return resp.json()


def _cmd_run(args: argparse.Namespace) -> int:
    data = _apply_overrides(_load_config(args.config), args)
    try:
        request = models.SweepRequest.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_validation_message(exc))
    log.info("running sweep: %d points, kinds %s", request.sweep.points, request.compute.forces)
    if args.server:
        payload = json.loads(request.model_dump_json())
        response = models.SweepResponse.model_validate(_remote_post(args.server, "/v1/sweep", payload))
    else:
        response = runner.execute_sweep(request)
    for warning in response.warnings:
        log.warning("%s", warning)
    _write_text(args.output, _sweep_csv(response.rows, not args.no_header_timestamp))
    if args.json_output:
        _write_text(args.json_output, response.model_dump_json(indent=2) + "\n")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    data = _load_config(args.config)
    data.pop("compute", None)
    data.pop("atom", None)
    if args.jobs is not None:
        data["jobs"] = args.jobs
    try:
        request = models.CompareRequest.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_validation_message(exc))
    if args.server:
        payload = json.loads(request.model_dump_json())
        response = models.CompareResponse.model_validate(_remote_post(args.server, "/v1/compare", payload))
    else:
        response = runner.execute_compare(request)
    for warning in response.warnings:
        log.warning("%s", warning)
    _write_text(args.output, _compare_csv(response.rows, not args.no_header_timestamp))
    if args.json_output:
        _write_text(args.json_output, response.model_dump_json(indent=2) + "\n")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfl", description="vacuum force sweeps on planar structures")
    parser.add_argument("--version", action="version", version=f"vfl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--output", default=None, help="output CSV path (default: stdout)")
        p.add_argument("--json-output", default=None, help="optional JSON mirror of the records")
        p.add_argument("--jobs", type=int, default=None, help="parallel sweep width")
        p.add_argument("--no-header-timestamp", action="store_true", help="omit the timestamp comment line")
        p.add_argument("--server", default=None, help="run against a remote service at this base URL")

    run_p = sub.add_parser("run", help="compute force sweep rows")
    common(run_p)
    run_p.add_argument(
        "--force",
        action="append",
        help="force kinds (slab|screened|assisted|medium|atom|atom-vacuum|interface), repeatable or comma-separated",
    )
    run_p.add_argument("--mode", choices=["lorentz", "minkowski", "both"], default=None)
    run_p.add_argument("--regime", choices=["full", "small", "large", "all"], default=None)
    run_p.set_defaults(func=_cmd_run)

    cmp_p = sub.add_parser("compare", help="medium-aware vs conventional slab force")
    common(cmp_p)
    cmp_p.set_defaults(func=_cmd_compare)

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IOError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
