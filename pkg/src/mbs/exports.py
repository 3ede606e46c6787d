"""DOT renderings of the derived graphs.

Everything here is deterministic: node and edge statements follow the stored
orders, so identical inputs always produce byte-identical output.
"""

from __future__ import annotations

from .homology import spine_graph
from .neighborhoods import (
    BoundarySurface,
    CircularPermutationSystem,
    DualGraph,
    boundary_surface,
    dual_graph,
)
from .surfaces import MultibranchedSurface


def _q(s) -> str:
    return '"' + str(s).replace('"', '\\"') + '"'


def _piece_name(piece: tuple) -> str:
    return ":".join(str(part) for part in piece)


def dual_graph_dot(
    x: MultibranchedSurface,
    p: CircularPermutationSystem | None = None,
) -> str:
    """Dual graph of the neighborhood; vertices carry the component genus."""
    bs = boundary_surface(x, p)
    dg = dual_graph(x, p)
    genus = dict(bs.components)
    lines = [f"graph {_q(x.name + ':dual')} {{"]
    for v in dg.vertices:
        lines.append(f"  {_q(v)} [label={_q(f'{v} genus {genus[v]}')}];")
    for sector_id, cp, cm in dg.edges:
        lines.append(f"  {_q(cp)} -- {_q(cm)} [label={_q(sector_id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spine_dot(x: MultibranchedSurface) -> str:
    """Spine of the complement of a neighborhood boundary collar."""
    g = spine_graph(x)
    lines = [f"graph {_q(x.name + ':spine')} {{"]
    for v in g.vertices:
        lines.append(f"  {_q(v)};")
    for u, v, tag in g.edges:
        lines.append(f"  {_q(u)} -- {_q(v)} [label={_q(tag)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def boundary_dot(
    x: MultibranchedSurface,
    p: CircularPermutationSystem | None = None,
) -> str:
    """Gluing graph of the boundary assembly: one node per piece, one edge
    per gluing circle, pieces labeled with their component."""
    bs = boundary_surface(x, p)
    comp = dict(bs.piece_assignment)
    lines = [f"graph {_q(x.name + ':boundary')} {{"]
    for piece, _ in bs.piece_assignment:
        name = _piece_name(piece)
        lines.append(f"  {_q(name)} [label={_q(f'{name} in {comp[piece]}')}];")
    for circle, side, gap in bs.gluings:
        lines.append(
            f"  {_q(_piece_name(side))} -- {_q(_piece_name(gap))}"
            f" [label={_q(_piece_name(circle))}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
