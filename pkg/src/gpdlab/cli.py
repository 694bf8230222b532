"""Command line client for the service.

By default the commands talk to the service in-process; pass --server to
point them at a running instance instead.  Exit codes: 0 success / pass,
1 mathematical failure or failed check, 2 input error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    from fastapi.testclient import TestClient
    from .service import app
    return TestClient(app)


def _emit(report, out):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        sys.exit(2)


def _post(client, route, body):
    resp = client.post(route, json=body)
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail", "invalid input")
        sys.stderr.write("input error: %s\n" % detail)
        sys.exit(2)
    resp.raise_for_status()
    return resp.json()


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; "
                                             "defaults to in-process execution.")
@click.pass_context
def main(ctx, server):
    """Finite groupoid laboratory."""
    ctx.obj = {"server": server}


@main.command()
@click.argument("path", type=click.Path(exists=False))
@click.option("--out", default=None, help="Also write the report to this file.")
@click.pass_context
def validate(ctx, path, out):
    """Validate a groupoid, functor or presentation JSON file."""
    payload = _load_json(path)
    with _client(ctx.obj["server"]) as client:
        report = _post(client, "/validate", {"payload": payload})
    report["config"] = {"command": "validate", "input": path}
    _emit(report, out)
    if report["structural"]:
        sys.exit(2)
    sys.exit(0 if report["ok"] else 1)


@main.command()
@click.argument("path", type=click.Path(exists=False))
@click.option("--bound", default=10000, show_default=True,
              help="Concretization bound for the middle object.")
@click.option("--out", default=None)
@click.pass_context
def factor(ctx, path, bound, out):
    """Mapping cylinder factorization of a functor JSON file."""
    payload = _load_json(path)
    with _client(ctx.obj["server"]) as client:
        report = _post(client, "/factor", {"functor": payload, "bound": bound})
    report["config"]["input"] = path
    _emit(report, out)
    sys.exit(1 if any(v == "fail" for v in report["checks"].values()) else 0)


@main.command()
@click.argument("path", type=click.Path(exists=False))
@click.option("--seed", default=0, show_default=True)
@click.option("--tol", default=1e-9, show_default=True)
@click.option("--out", default=None)
@click.pass_context
def morita(ctx, path, seed, tol, out):
    """K0-level Morita check of a functor JSON file."""
    payload = _load_json(path)
    with _client(ctx.obj["server"]) as client:
        report = _post(client, "/morita",
                       {"functor": payload, "seed": seed, "tol": tol})
    report["config"]["input"] = path
    _emit(report, out)
    sys.exit(0 if report["ok"] and report.get("k0_iso") else 1)


@main.command("nerve-suite")
@click.argument("fixtures", nargs=-1, required=True)
@click.option("--dim", default=3, show_default=True, help="Nerve truncation.")
@click.option("--max-k", default=1, show_default=True,
              help="Highest classification level to compare.")
@click.option("--budget", default=200000, show_default=True,
              help="Simplex enumeration budget.")
@click.option("--seed", default=0, show_default=True)
@click.option("--dot", default=None, type=click.Path(),
              help="Write DOT files of the compared 1-skeletons to this prefix.")
@click.option("--out", default=None)
@click.pass_context
def nerve_suite(ctx, fixtures, dim, max_k, budget, seed, dot, out):
    """Homology comparison suite over named fixtures."""
    body = {"fixtures": list(fixtures), "dim": dim, "max_k": max_k,
            "budget": budget, "seed": seed}
    with _client(ctx.obj["server"]) as client:
        report = _post(client, "/nerve-suite", body)
    if dot:
        _write_dots(fixtures, dim, dot)
    _emit(report, out)
    sys.exit(0 if report["ok"] else 1)


def _write_dots(names, dim, prefix):
    from .fixtures import fixture
    from .nerves import nerve_of_sample, skeleton_dot
    from .samples import enumerate_sample
    sample = enumerate_sample([fixture(n) for n in sorted(names)],
                              names=sorted(names))
    for label, mask in (("w", sample.w_mask), ("wc", sample.wc_mask())):
        sset = nerve_of_sample(sample, min(dim, 2), mask=mask)
        with open("%s-%s.dot" % (prefix, label), "w") as fh:
            fh.write(skeleton_dot(sset, vertex_labels=sample.names,
                                  name="nerve_" + label))


if __name__ == "__main__":
    main()
