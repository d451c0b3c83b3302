"""Command-line client for the verification service.

The CLI never computes anything itself: it talks to the FastAPI app, either
in process (the default; an ASGI transport, no server needed) or to a
remote instance given via --server or the KOECHER_SERVER environment
variable.  KOECHER_DIGITS overrides the default precision.

Exit codes: 0 pass, 1 usage error or unsupported case, 2 numerical failure,
3 accuracy error (tail not certifiable), 4 internal-consistency error.
"""

from __future__ import annotations

import asyncio
import csv
import io
import json
import os
import sys

import click
import httpx

_DEFAULT_DIGITS = 30

REPORT_COLUMNS = ["identity_id", "parameters", "lhs", "rhs", "abs_diff",
                  "tolerance", "terms_used", "provenance", "elapsed_ms", "pass"]


class ServiceClient:
    """POST/GET against the service, in-process unless a base URL is set."""

    def __init__(self, base_url: str | None):
        self.base_url = base_url

    def request(self, method: str, path: str, payload: dict | None = None):
        if self.base_url:
            with httpx.Client(base_url=self.base_url, timeout=600.0) as client:
                resp = client.request(method, path, json=payload)
                return resp.status_code, resp.json()
        return asyncio.run(self._inprocess(method, path, payload))

    async def _inprocess(self, method: str, path: str, payload: dict | None):
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://koecher.local",
                                     timeout=None) as client:
            resp = await client.request(method, path, json=payload)
            return resp.status_code, resp.json()


def _default_digits() -> int:
    env = os.environ.get("KOECHER_DIGITS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"KOECHER_DIGITS must be an integer, got {env!r}")
    return _DEFAULT_DIGITS


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _report_json_line(report: dict) -> str:
    ordered = {key: report[key] for key in REPORT_COLUMNS}
    return json.dumps(ordered, separators=(",", ":")) + "\n"


def _params_text(parameters: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(parameters.items()))


def _report_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for rep in reports:
        row = [rep[c] if c != "parameters" else _params_text(rep[c])
               for c in REPORT_COLUMNS]
        writer.writerow(row)
    return buf.getvalue()


def _report_human(rep: dict) -> str:
    status = "PASS" if rep["pass"] else "FAIL"
    params = _params_text(rep["parameters"])
    head = rep["identity_id"] + (f" [{params}]" if params else "")
    return (f"{head}: {status}\n"
            f"  lhs  = {rep['lhs']}\n"
            f"  rhs  = {rep['rhs']}\n"
            f"  |diff| = {rep['abs_diff']}  tolerance = {rep['tolerance']}\n"
            f"  terms = {rep['terms_used']}  elapsed = {rep['elapsed_ms']} ms\n"
            f"  provenance: {rep['provenance']}\n")


def _parse_kv(args: tuple[str, ...]) -> dict:
    params = {}
    for item in args:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise click.UsageError(f"parameters take the form name=value, got {item!r}")
        params[key] = value
    return params


@click.group()
@click.option("--server", envvar="KOECHER_SERVER", default=None,
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx, server):
    """Verify Markov-Apery type zeta identities at high precision."""
    ctx.obj = ServiceClient(server)


@main.command("list")
@click.option("--json", "as_json", is_flag=True, help="machine-readable listing")
@click.pass_obj
def list_cmd(client: ServiceClient, as_json: bool):
    """List registered identities."""
    status, body = client.request("GET", "/identities")
    if status != 200:
        raise click.ClickException(str(body))
    if as_json:
        click.echo(json.dumps(body, separators=(",", ":")))
        return
    for entry in body:
        click.echo(f"{entry['identity_id']:12s} {entry['description']}")
        for p in entry["parameters"]:
            bounds = ""
            if p.get("minimum") is not None or p.get("maximum") is not None:
                bounds = f" [{p.get('minimum') or ''}..{p.get('maximum') or ''}]"
            click.echo(f"    {p['name']} ({p['kind']}, default {p['default']}){bounds} {p['help']}")


def _verify_one(client: ServiceClient, identity_id: str, params: dict,
                digits: int, max_terms: int):
    status, body = client.request("POST", "/verify", {
        "identity_id": identity_id, "params": params,
        "digits": digits, "max_terms": max_terms,
    })
    if status != 200:
        detail = body.get("detail", body)
        click.echo(f"error: {detail}", err=True)
        return 1, None
    if body["status"] == "accuracy-error":
        click.echo(f"accuracy error: {body.get('detail')}", err=True)
        return 3, None
    report = body["report"]
    return (0 if report["pass"] else 2), report


@main.command()
@click.argument("identity_id", required=False)
@click.argument("params", nargs=-1)
@click.option("--digits", type=int, default=None, help="target decimal digits")
@click.option("--max-terms", type=int, default=10**6, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="emit the report as JSON")
@click.option("--csv", "as_csv", is_flag=True, help="emit the report as CSV")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--all", "run_all", is_flag=True,
              help="run every identity at its default parameters")
@click.pass_obj
def verify(client: ServiceClient, identity_id, params, digits, max_terms,
           as_json, as_csv, out_path, run_all):
    """Verify one identity (or --all), writing an identity report."""
    digits = digits if digits is not None else _default_digits()
    if as_json and as_csv:
        raise click.UsageError("choose at most one of --json/--csv")
    if run_all:
        ids = None
    elif identity_id:
        ids = [identity_id]
    else:
        raise click.UsageError("give an identity id or --all")

    if ids is None:
        status, body = client.request("GET", "/identities")
        if status != 200:
            raise click.ClickException(str(body))
        ids = [entry["identity_id"] for entry in body]

    kv = _parse_kv(tuple(params))
    worst = 0
    reports = []
    for ident in ids:
        code, report = _verify_one(client, ident, kv if not run_all else {},
                                   digits, max_terms)
        worst = max(worst, code)
        if report is not None:
            reports.append(report)
            if not (as_json or as_csv):
                click.echo(_report_human(report), nl=False)
    if as_json:
        _emit("".join(_report_json_line(r) for r in reports), out_path)
    elif as_csv:
        _emit(_report_csv(reports), out_path)
    elif out_path:
        _emit("".join(_report_json_line(r) for r in reports), out_path)
    sys.exit(worst)


@main.command()
@click.argument("sequence")
@click.option("--alpha", default="0.5", show_default=True)
@click.option("--order", type=int, default=2, show_default=True)
@click.option("--digits", type=int, default=None)
@click.option("--max-terms", type=int, default=10**6, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def expand(client: ServiceClient, sequence, alpha, order, digits, max_terms,
           as_json, out_path):
    """Print coefficients of the accelerated side against their zeta targets."""
    digits = digits if digits is not None else _default_digits()
    status, body = client.request("POST", "/expand", {
        "sequence": sequence, "alpha": alpha, "order": order,
        "digits": digits, "max_terms": max_terms,
    })
    if status != 200:
        click.echo(f"error: {body.get('detail', body)}", err=True)
        sys.exit(1)
    if as_json or out_path:
        _emit(json.dumps(body, separators=(",", ":")) + "\n", out_path)
    if not as_json:
        click.echo(f"sequence {body['sequence']}  alpha {body['alpha']}")
        click.echo("m  coefficient ~ zeta_z(m+alpha+1)  |diff|")
        for row in body["rows"]:
            click.echo(f"{row['m']}  {row['coefficient']}  {row['reference']}  {row['abs_diff']}")


@main.command()
@click.option("--cmax", type=int, default=5, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def table(client: ServiceClient, cmax, as_json, out_path):
    """Tabulate the integer polynomials of the accelerated zeta(3) family."""
    status, body = client.request("POST", "/table", {"cmax": cmax})
    if status == 500 and isinstance(body, dict) and body.get("error") == "internal-consistency":
        click.echo(f"internal consistency error: {body['detail']}", err=True)
        sys.exit(4)
    if status != 200:
        click.echo(f"error: {body.get('detail', body)}", err=True)
        sys.exit(1)
    if as_json or out_path:
        _emit(json.dumps(body, separators=(",", ":")) + "\n", out_path)
    if not as_json:
        click.echo("c  coefficients(low..high)  degree  leading  constant  conjecture")
        for row in body["rows"]:
            mark = "CONFIRMED" if row["confirmed"] else "VIOLATED"
            click.echo(f"{row['c']}  {','.join(row['coefficients'])}  "
                       f"{row['degree']}  {row['leading']}  {row['constant']}  {mark}")
        if not body["all_confirmed"]:
            sys.exit(4)


@main.command()
@click.argument("identity_id")
@click.option("--digits", type=int, default=None)
@click.option("--max-terms", type=int, default=10**6, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def bench(client: ServiceClient, identity_id, digits, max_terms, as_json):
    """Compare direct-summation cost against the accelerated series."""
    digits = digits if digits is not None else _default_digits()
    status, body = client.request("POST", "/bench", {
        "identity_id": identity_id, "digits": digits, "max_terms": max_terms,
    })
    if status != 200:
        click.echo(f"error: {body.get('detail', body)}", err=True)
        sys.exit(1)
    if as_json:
        click.echo(json.dumps(body, separators=(",", ":")))
        return
    click.echo(f"{body['identity_id']} at {body['digits']} digits")
    click.echo(f"  accelerated: {body['accelerated_terms']} terms in {body['accelerated_ms']} ms")
    click.echo(f"  direct series ({body['direct_reference']}): "
               f"estimated {body['direct_terms_estimate']} terms")
    if body["direct_feasible"]:
        click.echo(f"  direct run: {body['direct_terms']} terms in {body['direct_ms']} ms")
        ratio = int(body["direct_terms"]) / max(1, body["accelerated_terms"])
        click.echo(f"  term ratio direct/accelerated = {ratio:.1f}")
    else:
        click.echo("  direct run: infeasible (estimate exceeds max-terms)")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8722, show_default=True)
def serve(host, port):
    """Run the verification service under uvicorn."""
    import uvicorn

    uvicorn.run("koecher.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
