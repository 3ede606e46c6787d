"""Constructors for the standard example families.

Every builder returns a validated, regular, connected surface with
deterministic ids so document output is reproducible.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .errors import MbsError
from .surfaces import MultibranchedSurface, Prebranch, Sector, validate


class EmptyDegrees(MbsError):
    pass


class DegreeTooSmall(MbsError):
    pass


class IsolatedVertex(MbsError):
    pass


def one_sector(
    genus: int,
    degrees: Sequence[int],
    signs: Sequence[int] | None = None,
    name: str | None = None,
) -> MultibranchedSurface:
    """One genus-g sector with one prebranch on each of n distinct branches.

    degrees[i] >= 1 is the covering degree on branch i; signs (each +1 or -1,
    default all +1) orient the attachments.  H1 is Z/gcd(degrees) + Z^(2g+n-1).
    """
    if not degrees:
        raise EmptyDegrees("need at least one attachment")
    if any(d < 1 for d in degrees):
        raise DegreeTooSmall("covering degrees must be >= 1")
    if signs is None:
        signs = [1] * len(degrees)
    if len(signs) != len(degrees) or any(s not in (1, -1) for s in signs):
        raise MbsError("signs must be +1/-1, one per degree")
    branches = tuple(f"l{i+1}" for i in range(len(degrees)))
    pbs = tuple(
        Prebranch(branches[i], signs[i] * degrees[i]) for i in range(len(degrees))
    )
    x = MultibranchedSurface(
        branches,
        (Sector("e1", genus, pbs),),
        name or f"one_sector_g{genus}",
    )
    return validate(x)


def seifert_example(p: Sequence[int], name: str | None = None) -> MultibranchedSurface:
    """Chain of a disk and annuli realising torsion of order |p1*...*pn|.

    Branch i carries degree |p_i|; the disk wraps branch 1 with oriented
    degree p1 and annulus i runs from branch i (od -p_i) to branch i+1
    (od +p_{i+1}).  Each |p_i| must be >= 2.
    """
    if not p:
        raise EmptyDegrees("need at least one coefficient")
    if any(abs(v) < 2 for v in p):
        raise DegreeTooSmall("coefficients need |p_i| >= 2")
    n = len(p)
    branches = tuple(f"l{i+1}" for i in range(n))
    sectors = [Sector("d1", 0, (Prebranch(branches[0], p[0]),))]
    for i in range(n - 1):
        sectors.append(
            Sector(
                f"a{i+1}",
                0,
                (Prebranch(branches[i], -p[i]), Prebranch(branches[i + 1], p[i + 1])),
            )
        )
    x = MultibranchedSurface(branches, tuple(sectors), name or "seifert")
    return validate(x)


def pants_example(name: str = "pants") -> MultibranchedSurface:
    """Four branches, four pairs-of-pants; sector i avoids branch i, od +1."""
    branches = tuple(f"l{i}" for i in range(1, 5))
    sectors = []
    for i in range(1, 5):
        pbs = tuple(Prebranch(f"l{j}", 1) for j in range(1, 5) if j != i)
        sectors.append(Sector(f"e{i}", 0, pbs))
    return validate(MultibranchedSurface(branches, tuple(sectors), name))


def rose_times_circle(n: int, name: str | None = None) -> MultibranchedSurface:
    """Product of a rose with 2n petals and a circle, plus one meridian disk.

    One branch; 2n annuli with od (+1, -1) realise the petals; the disk kills
    the circle factor.  The branch has index 4n+1 and degree 1.
    """
    if n < 1:
        raise MbsError("need n >= 1 petal pairs")
    branch = "l"
    sectors = [
        Sector(f"a{i+1}", 0, (Prebranch(branch, 1), Prebranch(branch, -1)))
        for i in range(2 * n)
    ]
    sectors.append(Sector("d", 0, (Prebranch(branch, 1),)))
    return validate(
        MultibranchedSurface((branch,), tuple(sectors), name or f"rose{n}")
    )


def obstruction_example(name: str = "omega1") -> MultibranchedSurface:
    """One branch, one annulus sector, both ends od +2.

    H1 = Z/4 + Z: torsion-obstructed, while both proper minors are trivial.
    """
    return validate(
        MultibranchedSurface(
            ("l",),
            (Sector("e", 0, (Prebranch("l", 2), Prebranch("l", 2))),),
            name,
        )
    )


def graph_to_mbs(
    edges: Sequence[tuple[Hashable, Hashable]],
    vertices: Sequence[Hashable] | None = None,
    name: str = "graph",
) -> MultibranchedSurface:
    """Thickened-graph surface of a finite multigraph (loops allowed).

    One branch per (vertex, edge-end) incidence; each vertex becomes a
    punctured sphere attached od +1 to its incident ends; each edge becomes
    an annulus joining its two end branches, od (+1, +1), which closes every
    cycle of the graph into a torus.  Every branch has index 2 and degree 1,
    and H1 is always torsion-free.  Listing a vertex with no incident edge
    raises IsolatedVertex.
    """
    incident: dict[Hashable, list[tuple[int, int]]] = {}
    if vertices is not None:
        for v in vertices:
            incident.setdefault(v, [])
    for k, (u, v) in enumerate(edges):
        incident.setdefault(u, []).append((k, 0))
        incident.setdefault(v, []).append((k, 1))
    idle = [v for v, ends in incident.items() if not ends]
    if idle:
        raise IsolatedVertex(f"isolated vertices: {idle}")

    def bid(k: int, end: int) -> str:
        return f"e{k}x{end}"

    branches = tuple(bid(k, end) for k in range(len(edges)) for end in (0, 1))
    sectors = []
    for v, ends in incident.items():
        pbs = tuple(Prebranch(bid(k, end), 1) for k, end in ends)
        sectors.append(Sector(f"v{v}", 0, pbs))
    for k in range(len(edges)):
        sectors.append(
            Sector(f"t{k}", 0, (Prebranch(bid(k, 0), 1), Prebranch(bid(k, 1), 1)))
        )
    return validate(MultibranchedSurface(branches, tuple(sectors), name))
