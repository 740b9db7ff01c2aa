"""Command-line client for the decision service.

Every subcommand speaks JSON to the HTTP service.  By default the service
runs in-process (no socket); pass --server to talk to a remote instance.
Exit codes for `decide`: 0 yes, 1 no, 2 unknown, 3 invalid input, 4 other
failure.  `solve-form` exits 0/1 for solvable/not, `verify-model` 0/1 for
pass/fail, both keeping 3/4 for errors.
"""

from __future__ import annotations

import asyncio
import json
import sys
from typing import IO, Optional

import click
import httpx

from . import __version__, jsonio


def _client(server: Optional[str]) -> httpx.AsyncClient:
    if server:
        return httpx.AsyncClient(base_url=server.rstrip("/"), timeout=600.0)
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    return httpx.AsyncClient(
        transport=transport, base_url="http://k3iso.local", timeout=600.0
    )


def _post(server: Optional[str], path: str, payload: dict) -> tuple[int, dict]:
    async def go() -> tuple[int, dict]:
        async with _client(server) as client:
            resp = await client.post(path, json=jsonio.encode(payload))
            return resp.status_code, resp.json()

    return asyncio.run(go())


def _post_stream(
    server: Optional[str], path: str, payload: dict, sink: IO[str]
) -> tuple[int, Optional[dict]]:
    async def go() -> tuple[int, Optional[dict]]:
        async with _client(server) as client:
            async with client.stream(
                "POST", path, json=jsonio.encode(payload)
            ) as resp:
                if resp.status_code != 200:
                    raw = await resp.aread()
                    return resp.status_code, json.loads(raw.decode())
                async for chunk in resp.aiter_text():
                    sink.write(chunk)
                return 200, None

    return asyncio.run(go())


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _open_out(path: str) -> IO[str]:
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def _emit(out: str, payload: dict) -> None:
    sink = _open_out(out)
    try:
        sink.write(jsonio.dumps(payload, indent=2) + "\n")
    finally:
        if sink is not sys.stdout:
            sink.close()


def _fail(status: int, body: Optional[dict], out: str) -> None:
    if body is not None:
        _emit(out, body)
    raise SystemExit(3 if status in (400, 422) else 4)


server_option = click.option(
    "--server", default=None, help="Remote service URL (default: in-process)."
)
input_option = click.option(
    "--input", "input_", default="-", show_default=True, help="JSON input file or -."
)
out_option = click.option(
    "--out", default="-", show_default=True, help="Output file or -."
)


@click.group()
@click.version_option(version=__version__, prog_name="k3iso")
def main() -> None:
    """Decide moduli self-duality and synthesize isomorphism certificates."""


@main.command("decide")
@input_option
@out_option
@server_option
def decide_cmd(input_: str, out: str, server: Optional[str]) -> None:
    """Run the decision procedure on one instance (JSON in, JSON out)."""
    try:
        payload = _read_json(input_)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"bad input: {exc}", err=True)
        raise SystemExit(3)
    try:
        status, body = _post(server, "/decide", payload)
    except httpx.HTTPError as exc:
        click.echo(f"transport failure: {exc}", err=True)
        raise SystemExit(4)
    if status != 200:
        _fail(status, body, out)
    _emit(out, body)
    raise SystemExit({"yes": 0, "no": 1, "unknown": 2}.get(body["verdict"], 4))


@main.command("solve-form")
@input_option
@out_option
@server_option
def solve_form_cmd(input_: str, out: str, server: Optional[str]) -> None:
    """Solve gamma*x^2 - delta*y^2 = m*M under divisibility constraints."""
    try:
        payload = _read_json(input_)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"bad input: {exc}", err=True)
        raise SystemExit(3)
    try:
        status, body = _post(server, "/solve-form", payload)
    except httpx.HTTPError as exc:
        click.echo(f"transport failure: {exc}", err=True)
        raise SystemExit(4)
    if status != 200:
        _fail(status, body, out)
    _emit(out, body)
    raise SystemExit(0 if body["solvable"] else 1)


@main.command("verify-model")
@input_option
@out_option
@server_option
def verify_model_cmd(input_: str, out: str, server: Optional[str]) -> None:
    """Check the rank-2 identity against the four-dimensional model."""
    try:
        payload = _read_json(input_)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"bad input: {exc}", err=True)
        raise SystemExit(3)
    try:
        status, body = _post(server, "/verify-model", payload)
    except httpx.HTTPError as exc:
        click.echo(f"transport failure: {exc}", err=True)
        raise SystemExit(4)
    if status != 200:
        _fail(status, body, out)
    _emit(out, body)
    raise SystemExit(0 if body["nu_ok"] else 1)


@main.command("scan")
@click.option("--r-max", type=int, required=True)
@click.option("--s-max", type=int, required=True)
@click.option("--d-max", type=int, default=1, show_default=True)
@click.option("--max-gamma-delta", type=int, default=120, show_default=True)
@click.option("--max-n-half", type=int, default=None)
@click.option("--full", is_flag=True, help="Assume the generic-cell hypothesis.")
@click.option("--series", type=click.Choice(["A", "B"]), default=None)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
)
@click.option("--jobs", type=int, default=1, show_default=True)
@out_option
@server_option
def scan_cmd(
    r_max: int,
    s_max: int,
    d_max: int,
    max_gamma_delta: int,
    max_n_half: Optional[int],
    full: bool,
    series: Optional[str],
    fmt: str,
    jobs: int,
    out: str,
    server: Optional[str],
) -> None:
    """Sweep a parameter box and stream one row per lattice cell."""
    payload = {
        "r_max": r_max,
        "s_max": s_max,
        "d_max": d_max,
        "max_gamma_delta": max_gamma_delta,
        "max_n_half": max_n_half,
        "full": full,
        "series": series,
        "format": fmt,
        "jobs": jobs,
    }
    sink = _open_out(out)
    try:
        try:
            status, body = _post_stream(server, "/scan", payload, sink)
        except httpx.HTTPError as exc:
            click.echo(f"transport failure: {exc}", err=True)
            raise SystemExit(4)
        if status != 200:
            if body is not None:
                sink.write(jsonio.dumps(body, indent=2) + "\n")
            raise SystemExit(3 if status in (400, 422) else 4)
    finally:
        if sink is not sys.stdout:
            sink.close()


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
