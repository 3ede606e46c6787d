"""One function per operation, shared by the HTTP app and the CLI.

Each handler takes a request model and returns a response model; domain
errors propagate as MbsError and are translated at the edges (HTTP 422 in
the app, exit code 2 in the CLI).
"""

from __future__ import annotations

import json
import warnings

from .. import builders, document, exports
from ..errors import MbsError, NonorientableSector, NotRegular
from ..homology import S3Verdict, h1, punctured_spine_rank, s3_obstruction, spine_graph
from ..minors import (
    ApproximateComparison,
    OmegaVerdict,
    all_minors,
    are_isomorphic,
    canonical_form,
    is_minor,
    neighborhood_minor_certificate,
    obstruction_candidate_s3,
    standard_decomposition,
)
from ..neighborhoods import (
    boundary_surface,
    dual_graph,
    genus_upper_bound_heegaard,
    genus_upper_bound_sectors,
)
from ..surfaces import (
    MultibranchedSurface,
    branch_degree,
    branch_index,
    euler_characteristic,
    is_connected,
    is_regular,
    validate,
)
from . import models as m


def handle_validate(req: m.SurfaceRequest) -> m.ValidateResponse:
    x = req.surface.to_domain()
    pruned = validate(x, prune=True)
    messages = []
    dropped = set(x.branches) - set(pruned.branches)
    for b in sorted(dropped):
        messages.append(f"pruned isolated branch {b}")
    return m.ValidateResponse(
        ok=True, surface=m.SurfaceModel.from_domain(pruned), messages=messages
    )


def handle_invariants(req: m.SurfaceRequest) -> m.InvariantsResponse:
    x = validate(req.surface.to_domain(), prune=True)
    branches = []
    for b in x.branches:
        try:
            deg = branch_degree(x, b)
        except NotRegular:
            deg = None
        branches.append(m.BranchInfoModel(id=b, index=branch_index(x, b), degree=deg))
    h1_model = None
    h1_error = None
    try:
        h1_model = m.GroupModel.from_domain(h1(x))
    except NonorientableSector as exc:
        h1_error = f"nonorientable sector {exc}"
    spine_rank = punctured_spine_rank(x) if is_connected(x) and x.sectors else None
    return m.InvariantsResponse(
        name=x.name,
        euler_characteristic=euler_characteristic(x),
        regular=is_regular(x),
        connected=is_connected(x),
        branches=branches,
        h1=h1_model,
        h1_error=h1_error,
        punctured_spine_rank=spine_rank,
    )


def handle_s3(req: m.SurfaceRequest) -> m.S3Response:
    x = validate(req.surface.to_domain(), prune=True)
    group = h1(x)
    verdict = s3_obstruction(x)
    return m.S3Response(
        verdict="obstructed" if verdict is S3Verdict.OBSTRUCTED else "inconclusive",
        torsion=list(group.invariant_factors),
        h1=m.GroupModel.from_domain(group),
    )


def handle_genus_bounds(req: m.GenusBoundsRequest) -> m.GenusBoundsResponse:
    x = validate(req.surface.to_domain(), prune=True)
    sector_bound = genus_upper_bound_sectors(x)
    hb = genus_upper_bound_heegaard(x, cap=req.cap, enumerate_flips=req.flips)
    return m.GenusBoundsResponse(
        sector_bound=sector_bound,
        heegaard=m.HeegaardModel(
            bound=hb.bound,
            exhaustive=hb.exhaustive,
            dual_connected=hb.dual_connected,
            witness=m.PermutationSystemModel.from_domain(hb.witness),
            witness_flips=[(list(ref), flag) for ref, flag in hb.witness_flips],
        ),
        best=min(sector_bound, hb.bound),
    )


def handle_minors(req: m.MinorsRequest) -> m.MinorsResponse:
    x = validate(req.surface.to_domain(), prune=True)
    closure = all_minors(x, max_results=req.max_results)
    reps = []
    for i, rep in enumerate(closure.values()):
        sm = m.SurfaceModel.from_domain(rep)
        sm.name = f"{x.name}.m{i}"  # distinct names keep the listing reparseable
        reps.append(sm)
    return m.MinorsResponse(count=len(closure), minors=reps)


def handle_is_minor(req: m.IsMinorRequest) -> m.BoolResponse:
    return m.BoolResponse(
        answer=is_minor(
            req.x.to_domain(), req.y.to_domain(), max_results=req.max_results
        )
    )


def handle_iso(req: m.PairRequest) -> m.IsoResponse:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ApproximateComparison)
        fx = canonical_form(validate(req.x.to_domain(), prune=True))
        fy = canonical_form(validate(req.y.to_domain(), prune=True))
    return m.IsoResponse(
        isomorphic=fx == fy, approximate=fx.approximate or fy.approximate
    )


def handle_nminor(req: m.NminorRequest) -> m.NminorResponse:
    cert = neighborhood_minor_certificate(
        req.x.to_domain(),
        req.y.to_domain(),
        depth=req.depth,
        max_nodes=req.max_nodes,
    )
    if cert is None:
        return m.NminorResponse(found=False)
    return m.NminorResponse(
        found=True,
        steps=[
            m.StepModel(op=s.op, arg=s.arg, result=m.SurfaceModel.from_domain(s.result))
            for s in cert.steps
        ],
    )


def handle_omega(req: m.MinorsRequest) -> m.OmegaResponse:
    res = obstruction_candidate_s3(
        req.surface.to_domain(), max_results=req.max_results
    )
    return m.OmegaResponse(
        verdict=res.verdict.value,
        caveat=res.caveat,
        witness=m.SurfaceModel.from_domain(res.witness) if res.witness else None,
    )


def handle_decompose(req: m.SurfaceRequest) -> m.DecomposeResponse:
    x = validate(req.surface.to_domain(), prune=True)
    decomposed, genera = standard_decomposition(x)
    return m.DecomposeResponse(
        surface=m.SurfaceModel.from_domain(decomposed),
        closed_genera=genera,
        text=document.serialize(decomposed),
    )


def _parse_int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MbsError(f"{what} must be an integer, got {tok!r}") from None


def _parse_int_list(raw: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.split(",") if tok]
    except ValueError:
        raise MbsError(f"bad integer list {raw!r}") from None


def handle_build(req: m.BuildRequest) -> m.BuildResponse:
    family = req.family
    params = req.params
    if family == "one-sector":
        if len(params) != 2:
            raise MbsError("usage: build one-sector <genus> <d1,d2,...>")
        genus = _parse_int(params[0], "genus")
        entries = _parse_int_list(params[1])
        degrees = [abs(d) for d in entries]
        signs = [1 if d > 0 else -1 for d in entries]
        x = builders.one_sector(genus, degrees, signs)
    elif family == "seifert":
        if len(params) != 1:
            raise MbsError("usage: build seifert <p1,p2,...>")
        x = builders.seifert_example(_parse_int_list(params[0]))
    elif family == "pants":
        x = builders.pants_example()
    elif family == "rose":
        if len(params) != 1:
            raise MbsError("usage: build rose <petals>")
        x = builders.rose_times_circle(_parse_int(params[0], "petal count"))
    elif family == "obstruction":
        x = builders.obstruction_example()
    elif family == "graph":
        if len(params) != 1:
            raise MbsError("usage: build graph <u-v,u-w,...>")
        edges = []
        for tok in params[0].split(","):
            if not tok:
                continue
            ends = tok.split("-")
            if len(ends) != 2:
                raise MbsError(f"bad edge {tok!r}: expected u-v")
            edges.append((ends[0], ends[1]))
        x = builders.graph_to_mbs(edges)
    else:
        raise MbsError(
            f"unknown family {family!r}; available: one-sector, seifert, pants, "
            "rose, obstruction, graph"
        )
    return m.BuildResponse(
        surface=m.SurfaceModel.from_domain(x), text=document.serialize(x)
    )


def handle_export(req: m.ExportRequest) -> m.ExportResponse:
    x = validate(req.surface.to_domain(), prune=True)
    if req.format == "dot":
        if req.what == "dual-graph":
            content = exports.dual_graph_dot(x)
        elif req.what == "boundary":
            content = exports.boundary_dot(x)
        else:
            content = exports.spine_dot(x)
        return m.ExportResponse(format="dot", content=content)
    if req.what == "dual-graph":
        payload = m.DualGraphModel.from_domain(dual_graph(x))
    elif req.what == "boundary":
        payload = m.BoundaryModel.from_domain(boundary_surface(x))
    else:
        payload = m.SpineModel.from_domain(spine_graph(x))
    content = json.dumps(payload.model_dump(), indent=2) + "\n"
    return m.ExportResponse(format="json", content=content)


# name -> (request model, handler); the single routing table for app and CLI
HANDLERS = {
    "validate": (m.SurfaceRequest, handle_validate),
    "invariants": (m.SurfaceRequest, handle_invariants),
    "s3": (m.SurfaceRequest, handle_s3),
    "genus-bounds": (m.GenusBoundsRequest, handle_genus_bounds),
    "minors": (m.MinorsRequest, handle_minors),
    "is-minor": (m.IsMinorRequest, handle_is_minor),
    "iso": (m.PairRequest, handle_iso),
    "nminor": (m.NminorRequest, handle_nminor),
    "omega-candidate": (m.MinorsRequest, handle_omega),
    "decompose": (m.SurfaceRequest, handle_decompose),
    "build": (m.BuildRequest, handle_build),
    "export": (m.ExportRequest, handle_export),
}
