"""Command line interface.

Each subcommand builds a request model, runs the matching service handler
(in-process by default, over HTTP when --server or MBS_SERVER is set), and
renders the response as stable plain text.

Exit codes: 0 success / mathematical yes, 1 mathematical no (not obstructed
checks, failed isomorphism, missing certificates), 2 any error.
"""

from __future__ import annotations

import functools
import sys
import typing

import click
import httpx

from . import __version__
from .document import parse, serialize
from .errors import MbsError, SemanticError
from .service import models as m
from .service.handlers import HANDLERS


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_all(path: str) -> list[m.SurfaceModel]:
    return [m.SurfaceModel.from_domain(x) for x in parse(_read_text(path))]


def _load_one(path: str) -> m.SurfaceModel:
    surfaces = _load_all(path)
    if len(surfaces) != 1:
        raise SemanticError(
            f"expected exactly one surface in {path!r}, found {len(surfaces)}"
        )
    return surfaces[0]


def _response_type(name: str):
    fn = HANDLERS[name][1]
    return typing.get_type_hints(fn)["return"]


def _call(ctx: click.Context, name: str, req):
    server = (ctx.obj or {}).get("server")
    if not server:
        return HANDLERS[name][1](req)
    url = f"{server.rstrip('/')}/api/{name}"
    resp = httpx.post(
        url,
        content=req.model_dump_json(),
        headers={"content-type": "application/json"},
        timeout=120.0,
    )
    if resp.status_code >= 400:
        try:
            payload = resp.json()
            detail = payload.get("detail") or payload.get("error") or resp.text
        except ValueError:
            detail = resp.text
        raise MbsError(f"server {resp.status_code}: {detail}")
    return _response_type(name).model_validate_json(resp.text)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except MbsError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(2)

    return wrapper


@click.group()
@click.option(
    "--server",
    envvar="MBS_SERVER",
    default=None,
    help="Base URL of a running service; default runs in-process.",
)
@click.version_option(__version__, prog_name="mbs")
@click.pass_context
def main(ctx, server):
    """Multibranched surfaces: invariants, genus bounds, minor calculus."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.argument("document", default="-")
@click.pass_context
@_guarded
def validate(ctx, document):
    """Check every surface in DOCUMENT (file or - for stdin)."""
    for sm in _load_all(document):
        resp = _call(ctx, "validate", m.SurfaceRequest(surface=sm))
        s = resp.surface
        click.echo(f"OK {s.name}: {len(s.branches)} branches, {len(s.sectors)} sectors")
        for note in resp.messages:
            click.echo(f"  note: {note}")


@main.command()
@click.argument("document", default="-")
@click.pass_context
@_guarded
def invariants(ctx, document):
    """Euler characteristic, regularity, degrees, and H1 per surface."""
    first = True
    for sm in _load_all(document):
        if not first:
            click.echo()
        first = False
        r = _call(ctx, "invariants", m.SurfaceRequest(surface=sm))
        click.echo(f"name: {r.name}")
        click.echo(f"chi: {r.euler_characteristic}")
        click.echo(f"regular: {'yes' if r.regular else 'no'}")
        click.echo(f"connected: {'yes' if r.connected else 'no'}")
        for b in r.branches:
            deg = "mixed" if b.degree is None else str(b.degree)
            click.echo(f"branch {b.id}: index {b.index}, degree {deg}")
        if r.h1 is not None:
            click.echo(f"H1: {r.h1.pretty}")
        else:
            click.echo(f"H1: unavailable ({r.h1_error})")
        if r.punctured_spine_rank is not None:
            click.echo(f"punctured spine rank: {r.punctured_spine_rank}")


@main.command()
@click.argument("document", default="-")
@click.pass_context
@_guarded
def s3(ctx, document):
    """Torsion obstruction to embedding in the 3-sphere (exit 1 if obstructed)."""
    r = _call(ctx, "s3", m.SurfaceRequest(surface=_load_one(document)))
    if r.verdict == "obstructed":
        torsion = " + ".join(f"Z/{f}" for f in r.torsion)
        click.echo(f"OBSTRUCTED: H1 torsion {torsion}")
        ctx.exit(1)
    click.echo("INCONCLUSIVE: H1 is torsion-free")


@main.command("genus-bounds")
@click.argument("document", default="-")
@click.option("--cap", default=10_000, show_default=True, help="Search budget.")
@click.option("--flips", is_flag=True, help="Also search per-prebranch flips.")
@click.pass_context
@_guarded
def genus_bounds(ctx, document, cap, flips):
    """Upper bounds for the genus of the surface's ambient 3-manifolds."""
    req = m.GenusBoundsRequest(surface=_load_one(document), cap=cap, flips=flips)
    r = _call(ctx, "genus-bounds", req)
    click.echo(f"sector bound: {r.sector_bound}")
    mode = "exhaustive" if r.heegaard.exhaustive else "sampled"
    click.echo(f"heegaard bound: {r.heegaard.bound} ({mode})")
    if not r.heegaard.dual_connected:
        click.echo("note: winning dual graph is disconnected")
    click.echo(f"best: {r.best}")
    for branch, refs in r.heegaard.witness.orders:
        cyc = " ".join(f"({s},{i})" for s, i in refs)
        click.echo(f"witness {branch}: {cyc}")
    flipped = [ref for ref, flag in r.heegaard.witness_flips if flag]
    if flipped:
        txt = " ".join(f"({s},{i})" for s, i in flipped)
        click.echo(f"witness flips: {txt}")


@main.command()
@click.argument("document", default="-")
@click.option("--max-results", default=10_000, show_default=True)
@click.pass_context
@_guarded
def minors(ctx, document, max_results):
    """List one representative per minor class, as a reparseable document."""
    req = m.MinorsRequest(surface=_load_one(document), max_results=max_results)
    r = _call(ctx, "minors", req)
    click.echo(f"# {r.count} minor classes")
    for sm in r.minors:
        click.echo(serialize(sm.to_domain()), nl=False)


@main.command("is-minor")
@click.argument("x_doc")
@click.argument("y_doc")
@click.option("--max-results", default=10_000, show_default=True)
@click.pass_context
@_guarded
def is_minor_cmd(ctx, x_doc, y_doc, max_results):
    """Is X_DOC a minor of Y_DOC?  Exit 1 when not."""
    req = m.IsMinorRequest(
        x=_load_one(x_doc), y=_load_one(y_doc), max_results=max_results
    )
    r = _call(ctx, "is-minor", req)
    if r.answer:
        click.echo("MINOR")
    else:
        click.echo("NOT A MINOR")
        ctx.exit(1)


@main.command()
@click.argument("x_doc")
@click.argument("y_doc")
@click.pass_context
@_guarded
def iso(ctx, x_doc, y_doc):
    """Are the two surfaces isomorphic?  Exit 1 when not."""
    r = _call(ctx, "iso", m.PairRequest(x=_load_one(x_doc), y=_load_one(y_doc)))
    suffix = " (approximate: nonorientable sectors, |od| only)" if r.approximate else ""
    if r.isomorphic:
        click.echo("ISOMORPHIC" + suffix)
    else:
        click.echo("NOT ISOMORPHIC" + suffix)
        ctx.exit(1)


@main.command()
@click.argument("x_doc")
@click.argument("y_doc")
@click.option("--depth", default=4, show_default=True)
@click.option("--max-nodes", default=20_000, show_default=True)
@click.pass_context
@_guarded
def nminor(ctx, x_doc, y_doc, depth, max_nodes):
    """Certify X_DOC as a neighborhood minor of Y_DOC (exit 1 if not found)."""
    req = m.NminorRequest(
        x=_load_one(x_doc), y=_load_one(y_doc), depth=depth, max_nodes=max_nodes
    )
    r = _call(ctx, "nminor", req)
    if not r.found:
        click.echo(f"NO CERTIFICATE within depth {depth}")
        ctx.exit(1)
    for st in r.steps:
        click.echo(f"{st.op} {st.arg}")
    click.echo(f"CERTIFIED in {len(r.steps)} steps")


@main.command("omega-candidate")
@click.argument("document", default="-")
@click.option("--max-results", default=10_000, show_default=True)
@click.pass_context
@_guarded
def omega_candidate(ctx, document, max_results):
    """Minor-minimality check against the torsion obstruction."""
    req = m.MinorsRequest(surface=_load_one(document), max_results=max_results)
    r = _call(ctx, "omega-candidate", req)
    if r.verdict == "candidate":
        click.echo(f"CANDIDATE: {r.caveat}")
        return
    if r.verdict == "not-candidate":
        click.echo(f"NOT A CANDIDATE: {r.caveat}")
        if r.witness is not None:
            click.echo(serialize(r.witness.to_domain()), nl=False)
    else:
        click.echo(f"UNKNOWN: {r.caveat}")
    ctx.exit(1)


@main.command()
@click.argument("document", default="-")
@click.pass_context
@_guarded
def decompose(ctx, document):
    """Standard decomposition: disks at the branches plus closed pieces."""
    r = _call(ctx, "decompose", m.SurfaceRequest(surface=_load_one(document)))
    genera = " ".join(str(g) for g in r.closed_genera)
    click.echo(f"# closed pieces of genus: {genera}")
    click.echo(r.text, nl=False)


@main.command()
@click.argument("family")
@click.argument("params", nargs=-1)
@click.pass_context
@_guarded
def build(ctx, family, params):
    """Emit a built-in example; families: one-sector, seifert, pants, rose,
    obstruction, graph."""
    r = _call(ctx, "build", m.BuildRequest(family=family, params=list(params)))
    click.echo(r.text, nl=False)


@main.command()
@click.option("--dot", "fmt", flag_value="dot", default=True, help="DOT output.")
@click.option("--json", "fmt", flag_value="json", help="JSON output.")
@click.argument("what", type=click.Choice(["dual-graph", "boundary", "spine"]))
@click.argument("document", default="-")
@click.pass_context
@_guarded
def export(ctx, fmt, what, document):
    """Export a derived graph of the surface."""
    req = m.ExportRequest(surface=_load_one(document), what=what, format=fmt)
    r = _call(ctx, "export", req)
    click.echo(r.content, nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("mbs.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
