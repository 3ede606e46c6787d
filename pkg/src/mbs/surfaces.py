"""Combinatorial multibranched surfaces.

A multibranched surface is a union of circles (branches) and compact
surfaces-with-boundary (sectors), where each boundary circle of a sector (a
prebranch) is attached to one branch by a covering map of some degree.  The
sign of the oriented degree is taken relative to a fixed reference orientation
of the branch and the boundary orientation the sector induces on the
prebranch; the branch orientations themselves are never stored.

Values are immutable.  Constructing a surface does no checking beyond type
normalisation; call validate() to establish the structural invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import (
    DanglingBranchReference,
    DuplicateId,
    EmptySectorBoundary,
    IsolatedBranch,
    NotRegular,
    UnknownBranch,
    UnknownSector,
    ZeroDegree,
)


@dataclass(frozen=True)
class Prebranch:
    """One boundary circle of a sector, attached to `branch` with oriented
    degree `oriented_degree` (nonzero; |oriented_degree| is the covering
    degree)."""

    branch: str
    oriented_degree: int

    @property
    def degree(self) -> int:
        return abs(self.oriented_degree)


@dataclass(frozen=True)
class Sector:
    """A compact connected surface with nonempty boundary.

    `genus` counts handles when orientable, crosscaps when not.  The order of
    `prebranches` is kept as given: it feeds spine construction and document
    round-trips deterministically.
    """

    id: str
    genus: int
    prebranches: tuple[Prebranch, ...]
    orientable: bool = True

    def __post_init__(self):
        object.__setattr__(self, "prebranches", tuple(self.prebranches))
        if self.genus < 0:
            raise ValueError(f"sector {self.id}: negative genus")

    @property
    def boundary_count(self) -> int:
        return len(self.prebranches)

    def euler_characteristic(self) -> int:
        # chi = 2 - 2g - b orientable, 2 - k - b with k crosscaps otherwise
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary_count
        return 2 - self.genus - self.boundary_count


@dataclass(frozen=True)
class MultibranchedSurface:
    """Branches (circles, identified by id) plus sectors attached to them."""

    branches: tuple[str, ...]
    sectors: tuple[Sector, ...]
    name: str = "surface"

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        object.__setattr__(self, "sectors", tuple(self.sectors))

    def sector(self, sector_id: str) -> Sector:
        for s in self.sectors:
            if s.id == sector_id:
                return s
        raise UnknownSector(sector_id)

    def has_branch(self, branch_id: str) -> bool:
        return branch_id in self.branches

    def prebranches_at(self, branch_id: str) -> list[tuple[Sector, int]]:
        """All (sector, position) pairs whose prebranch sits on `branch_id`."""
        if branch_id not in self.branches:
            raise UnknownBranch(branch_id)
        found = []
        for s in self.sectors:
            for pos, pb in enumerate(s.prebranches):
                if pb.branch == branch_id:
                    found.append((s, pos))
        return found

    @property
    def total_prebranches(self) -> int:
        return sum(s.boundary_count for s in self.sectors)

    def is_empty(self) -> bool:
        return not self.branches and not self.sectors


def validate(x: MultibranchedSurface, prune: bool = True) -> MultibranchedSurface:
    """Check structural invariants and return the (possibly pruned) surface.

    Raises:
        DuplicateId: repeated branch or sector id.
        EmptySectorBoundary: a sector with no prebranches.
        DanglingBranchReference: a prebranch naming an unknown branch.
        ZeroDegree: a prebranch with oriented degree 0.
        IsolatedBranch: an index-0 branch when prune is False.

    With prune=True (the default), index-0 branches are dropped instead.
    """
    seen_branches = set()
    for b in x.branches:
        if b in seen_branches:
            raise DuplicateId(f"branch {b} declared twice")
        seen_branches.add(b)
    seen_sectors = set()
    used = set()
    for s in x.sectors:
        if s.id in seen_sectors:
            raise DuplicateId(f"sector {s.id} declared twice")
        seen_sectors.add(s.id)
        if not s.prebranches:
            raise EmptySectorBoundary(f"sector {s.id} has no boundary circles")
        for pb in s.prebranches:
            if pb.branch not in seen_branches:
                raise DanglingBranchReference(
                    f"sector {s.id} attaches to unknown branch {pb.branch}"
                )
            if pb.oriented_degree == 0:
                raise ZeroDegree(f"sector {s.id} has a degree-0 attachment")
            used.add(pb.branch)
    idle = [b for b in x.branches if b not in used]
    if idle and not prune:
        raise IsolatedBranch(f"branches with no sector: {', '.join(idle)}")
    if idle:
        x = replace(x, branches=tuple(b for b in x.branches if b in used))
    return x


def branch_index(x: MultibranchedSurface, branch_id: str) -> int:
    """Number of prebranches attached to the branch."""
    return len(x.prebranches_at(branch_id))


def branch_degree(x: MultibranchedSurface, branch_id: str) -> int:
    """Common covering degree at the branch; NotRegular if degrees differ."""
    degrees = {s.prebranches[pos].degree for s, pos in x.prebranches_at(branch_id)}
    if len(degrees) > 1:
        raise NotRegular(
            f"branch {branch_id} carries degrees {sorted(degrees)}"
        )
    return degrees.pop() if degrees else 0


def is_regular(x: MultibranchedSurface) -> bool:
    """True when, at every branch, all prebranches share one covering degree."""
    for b in x.branches:
        try:
            branch_degree(x, b)
        except NotRegular:
            return False
    return True


def euler_characteristic(x: MultibranchedSurface) -> int:
    """chi of the quotient space: branches and gluing circles contribute 0."""
    return sum(s.euler_characteristic() for s in x.sectors)


def connected_components(x: MultibranchedSurface) -> list[MultibranchedSurface]:
    """Split into connected pieces (branch and sector order preserved).

    A branch and a sector are adjacent when some prebranch of the sector is
    attached to the branch.  Branches with no sector form singleton
    components, so validate-with-prune first if those are unwanted.
    """
    parent: dict[str, str] = {}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: str, b: str):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for b in x.branches:
        parent[f"b:{b}"] = f"b:{b}"
    for s in x.sectors:
        parent[f"s:{s.id}"] = f"s:{s.id}"
        for pb in s.prebranches:
            union(f"s:{s.id}", f"b:{pb.branch}")

    roots: list[str] = []
    members: dict[str, set[str]] = {}
    for key in parent:
        r = find(key)
        if r not in members:
            members[r] = set()
            roots.append(r)
        members[r].add(key)

    # order components by first appearance in the branch list, then sectors
    order: list[str] = []
    for b in x.branches:
        r = find(f"b:{b}")
        if r not in order:
            order.append(r)
    for s in x.sectors:
        r = find(f"s:{s.id}")
        if r not in order:
            order.append(r)

    out = []
    for i, r in enumerate(order):
        keys = members[r]
        branches = tuple(b for b in x.branches if f"b:{b}" in keys)
        sectors = tuple(s for s in x.sectors if f"s:{s.id}" in keys)
        out.append(
            MultibranchedSurface(branches, sectors, name=f"{x.name}.{i}")
        )
    return out


def is_connected(x: MultibranchedSurface) -> bool:
    return len(connected_components(x)) <= 1


def rename(
    x: MultibranchedSurface,
    branch_map: dict[str, str] | None = None,
    sector_map: dict[str, str] | None = None,
    name: str | None = None,
) -> MultibranchedSurface:
    """Relabel branches and/or sectors; ids must stay distinct."""
    bm = branch_map or {}
    sm = sector_map or {}
    branches = tuple(bm.get(b, b) for b in x.branches)
    if len(set(branches)) != len(branches):
        raise DuplicateId("branch renaming collides")
    sectors = []
    for s in x.sectors:
        pbs = tuple(
            Prebranch(bm.get(pb.branch, pb.branch), pb.oriented_degree)
            for pb in s.prebranches
        )
        sectors.append(replace(s, id=sm.get(s.id, s.id), prebranches=pbs))
    ids = [s.id for s in sectors]
    if len(set(ids)) != len(ids):
        raise DuplicateId("sector renaming collides")
    return MultibranchedSurface(branches, tuple(sectors), name or x.name)
