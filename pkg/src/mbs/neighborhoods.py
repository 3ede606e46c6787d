"""Regular neighborhoods: boundary surfaces, dual graphs, genus bounds.

A regular neighborhood of a multibranched surface is assembled from one solid
torus per branch and one product block (sector x interval) per sector.  Its
boundary decomposes combinatorially into pieces:

  * two "sides" per sector (copies of the sector, chi = chi(e)), and
  * i(l) "gap" annuli per branch l: the branch torus minus the i(l) parallel
    annuli along which the sector blocks attach (chi = 0 each).

Gluing the pieces along circles only needs, per branch, the cyclic order in
which the prebranches sit around the torus (a circular permutation system);
the attaching slopes never change the combinatorics, so they are recorded but
unused.  A prebranch at cyclic position j sends its + side circle to gap j and
its - circle to gap j-1, swapped when its oriented degree is negative, and
swapped once more by an optional per-prebranch flip bit; every flip assignment
is realized by some honest gluing, so each one yields a valid genus bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd

from .errors import Disconnected, NonorientableSector, NotRegular, OddComponentChi
from .surfaces import (
    MultibranchedSurface,
    branch_degree,
    euler_characteristic,
    is_connected,
    is_regular,
)

# (sector id, position of the prebranch within the sector)
PrebranchRef = tuple[str, int]

_SAMPLE_SEED = 2026


@dataclass(frozen=True)
class CircularPermutationSystem:
    """Cyclic order of the attached prebranches around each branch.

    Each order is stored linearly starting from a fixed first element; two
    orders equal up to rotation or reflection are considered the same system
    and the enumerator never emits both.
    """

    orders: tuple[tuple[str, tuple[PrebranchRef, ...]], ...]

    def order(self, branch_id: str) -> tuple[PrebranchRef, ...]:
        for b, refs in self.orders:
            if b == branch_id:
                return refs
        raise KeyError(branch_id)


@dataclass(frozen=True)
class SlopeSystem:
    """Attaching slope (p, q) per branch with q = branch degree, gcd(p,q)=1.

    Carried for naming the neighborhood only; no computation consumes it.
    """

    slopes: tuple[tuple[str, int, int], ...]

    @classmethod
    def standard(cls, x: MultibranchedSurface) -> "SlopeSystem":
        out = []
        for b in x.branches:
            q = branch_degree(x, b)
            p = 1
            out.append((b, p, q))
        return cls(tuple(out))

    def __post_init__(self):
        for b, p, q in self.slopes:
            if gcd(p, q) != 1:
                raise ValueError(f"slope at {b} must be reduced")


@dataclass(frozen=True)
class BoundarySurface:
    """Closed orientable surface bounding a neighborhood.

    components: (component id, genus) pairs.  piece_assignment maps every
    piece to its component id; pieces are ("side", sector, "+"|"-") and
    ("gap", branch, position).  gluings records, per gluing circle
    (sector, position, "+"|"-"), the side piece and gap piece it joins.
    """

    components: tuple[tuple[str, int], ...]
    piece_assignment: tuple[tuple[tuple, str], ...]
    gluings: tuple[tuple[tuple, tuple, tuple], ...]

    def genus_sum(self) -> int:
        return sum(g for _, g in self.components)

    def component_of(self, piece: tuple) -> str:
        for p, c in self.piece_assignment:
            if p == piece:
                return c
        raise KeyError(piece)


@dataclass(frozen=True)
class DualGraph:
    """One vertex per boundary component, one edge per sector joining the
    components holding the sector's two sides."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (sector id, comp+, comp-)

    def component_count(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for _, u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(v) for v in self.vertices})

    def betti_number(self) -> int:
        return len(self.edges) - len(self.vertices) + self.component_count()

    def is_connected(self) -> bool:
        return self.component_count() <= 1


@dataclass(frozen=True)
class PermutationEnumeration:
    systems: tuple[CircularPermutationSystem, ...]
    exhaustive: bool
    total_count: int


def _refs_at(x: MultibranchedSurface, branch_id: str) -> list[PrebranchRef]:
    return [(s.id, pos) for s, pos in x.prebranches_at(branch_id)]


def identity_system(x: MultibranchedSurface) -> CircularPermutationSystem:
    return CircularPermutationSystem(
        tuple((b, tuple(_refs_at(x, b))) for b in x.branches)
    )


def _canon_cycle(refs: tuple[PrebranchRef, ...]) -> tuple[PrebranchRef, ...]:
    # normalise a cyclic order: rotate the least element to the front, then
    # pick the lexicographically smaller of the two reading directions
    if len(refs) <= 2:
        return tuple(sorted(refs))
    k = refs.index(min(refs))
    fwd = refs[k:] + refs[:k]
    rev = (refs[k],) + tuple(reversed(refs[k + 1 :] + refs[:k]))
    return min(fwd, rev)


def _arrangements(refs: list[PrebranchRef]) -> list[tuple[PrebranchRef, ...]]:
    """All cyclic orders of refs up to rotation and reflection."""
    if len(refs) <= 2:
        return [tuple(refs)]
    first, rest = refs[0], refs[1:]
    out = []
    for perm in itertools.permutations(rest):
        if perm <= tuple(reversed(perm)):  # reflection representative
            out.append((first,) + perm)
    return out


def enumerate_permutation_systems(
    x: MultibranchedSurface, cap: int = 10_000
) -> PermutationEnumeration:
    """All circular permutation systems, deduplicated per branch up to
    rotation and reflection; Π_l max(1, (i(l)-1)!/2) in total.

    Above the cap: the identity system plus a deterministic pseudo-random
    sample of size cap, flagged non-exhaustive.  The sample is drawn as the
    first distinct entries of a fixed RNG stream, so raising the cap only
    ever adds systems.
    """
    if not is_regular(x):
        raise NotRegular("permutation systems are defined for regular surfaces")
    per_branch = [_arrangements(_refs_at(x, b)) for b in x.branches]
    total = 1
    for arr in per_branch:
        total *= len(arr)
    if total <= cap:
        systems = tuple(
            CircularPermutationSystem(
                tuple((b, choice[i]) for i, b in enumerate(x.branches))
            )
            for choice in _cartesian(per_branch)
        )
        return PermutationEnumeration(systems, True, total)

    rng = random.Random(_SAMPLE_SEED)
    seen = set()
    systems = [identity_system(x)]
    seen.add(tuple(_canon_cycle(refs) for _, refs in systems[0].orders))
    attempts = 0
    while len(systems) < cap + 1 and attempts < 50 * cap:
        attempts += 1
        orders = []
        for b in x.branches:
            refs = _refs_at(x, b)
            if len(refs) > 2:
                rest = refs[1:]
                rng.shuffle(rest)
                refs = [refs[0]] + rest
            orders.append((b, tuple(refs)))
        key = tuple(_canon_cycle(refs) for _, refs in orders)
        if key in seen:
            continue
        seen.add(key)
        systems.append(CircularPermutationSystem(tuple(orders)))
    return PermutationEnumeration(tuple(systems), False, total)


def _cartesian(pools):
    # itertools.product, but lazy over potentially large pools
    return itertools.product(*pools)


def boundary_surface(
    x: MultibranchedSurface,
    p: CircularPermutationSystem | None = None,
    flips: dict[PrebranchRef, bool] | None = None,
) -> BoundarySurface:
    """Assemble the boundary of the neighborhood determined by p (and flips).

    Pieces and gluing circles are as in the module docstring.  Components are
    found by union-find; each must close up to an orientable surface, so a
    component with odd Euler characteristic raises OddComponentChi (that is a
    bug signal, not an input error).  chi(boundary) = 2 chi(X) always.
    """
    if not is_regular(x):
        raise NotRegular("neighborhoods require a regular surface")
    if not is_connected(x):
        raise Disconnected("neighborhoods require a connected surface")
    for s in x.sectors:
        if not s.orientable:
            raise NonorientableSector(s.id)
    if p is None:
        p = identity_system(x)
    flips = flips or {}

    pieces: list[tuple] = []
    chi: dict[tuple, int] = {}
    for s in x.sectors:
        for eps in ("+", "-"):
            piece = ("side", s.id, eps)
            pieces.append(piece)
            chi[piece] = s.euler_characteristic()
    gap_count = {}
    for b in x.branches:
        refs = p.order(b)
        gap_count[b] = len(refs)
        for j in range(len(refs)):
            piece = ("gap", b, j)
            pieces.append(piece)
            chi[piece] = 0

    parent = {piece: piece for piece in pieces}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    gluings = []
    for b in x.branches:
        refs = p.order(b)
        i = len(refs)
        for j, ref in enumerate(refs):
            sector_id, pos = ref
            od = x.sector(sector_id).prebranches[pos].oriented_degree
            ahead, behind = j, (j - 1) % i
            if od < 0:
                ahead, behind = behind, ahead
            if flips.get(ref, False):
                ahead, behind = behind, ahead
            for eps, gap_j in (("+", ahead), ("-", behind)):
                circle = (sector_id, pos, eps)
                side = ("side", sector_id, eps)
                gap = ("gap", b, gap_j)
                gluings.append((circle, side, gap))
                union(side, gap)

    comp_ids: dict[tuple, str] = {}
    comp_chi: dict[str, int] = {}
    assignment = []
    for piece in pieces:
        root = find(piece)
        if root not in comp_ids:
            comp_ids[root] = f"c{len(comp_ids)}"
            comp_chi[comp_ids[root]] = 0
        cid = comp_ids[root]
        comp_chi[cid] += chi[piece]
        assignment.append((piece, cid))

    components = []
    for root, cid in comp_ids.items():
        c = comp_chi[cid]
        if c % 2 or c > 2:
            raise OddComponentChi(
                f"component {cid} has chi {c}; the assembly is broken"
            )
        components.append((cid, (2 - c) // 2))
    return BoundarySurface(tuple(components), tuple(assignment), tuple(gluings))


def _dual_from_boundary(x: MultibranchedSurface, bs: BoundarySurface) -> DualGraph:
    comp = dict(bs.piece_assignment)
    vertices = tuple(cid for cid, _ in bs.components)
    edges = tuple(
        (s.id, comp[("side", s.id, "+")], comp[("side", s.id, "-")])
        for s in x.sectors
    )
    return DualGraph(vertices, edges)


def dual_graph(
    x: MultibranchedSurface,
    p: CircularPermutationSystem | None = None,
    flips: dict[PrebranchRef, bool] | None = None,
) -> DualGraph:
    """Abstract dual graph of the neighborhood given by p (slope-independent)."""
    return _dual_from_boundary(x, boundary_surface(x, p, flips))


def genus_upper_bound_sectors(x: MultibranchedSurface) -> int:
    """Bound from counting: genus never exceeds #branches + #sectors."""
    if not is_regular(x):
        raise NotRegular("the sector-count bound assumes a regular surface")
    return len(x.branches) + len(x.sectors)


@dataclass(frozen=True)
class HeegaardBound:
    bound: int
    exhaustive: bool
    witness: CircularPermutationSystem
    witness_flips: tuple[tuple[PrebranchRef, bool], ...] = ()
    dual_connected: bool = True


def _evaluate(x, p, flips):
    bs = boundary_surface(x, p, flips)
    dg = _dual_from_boundary(x, bs)
    return bs.genus_sum() + dg.betti_number(), dg.is_connected()


def genus_upper_bound_heegaard(
    x: MultibranchedSurface,
    cap: int = 10_000,
    enumerate_flips: bool = False,
) -> HeegaardBound:
    """Minimize genus(boundary) + betti(dual graph) over neighborhoods.

    Every evaluated neighborhood gives a valid upper bound, so a capped
    search is still sound, merely flagged non-exhaustive.  Flip enumeration,
    when requested, runs after all no-flip systems with a further `cap`
    evaluations in a fixed order; widening the search never worsens the
    bound.  dual_connected reports whether the winning dual graph was
    connected (the bound's derivation assumes it).
    """
    enum = enumerate_permutation_systems(x, cap)
    best = None
    for p in enum.systems:
        val, conn = _evaluate(x, p, None)
        if best is None or val < best[0]:
            best = (val, p, (), conn)
    flips_exhausted = True
    if enumerate_flips:
        refs = [(s.id, pos) for s in x.sectors for pos in range(len(s.prebranches))]
        budget = cap
        for p in enum.systems:
            if budget <= 0:
                break
            for mask in range(1, 1 << len(refs)):
                if budget <= 0:
                    flips_exhausted = False
                    break
                budget -= 1
                flips = {refs[i]: True for i in range(len(refs)) if mask >> i & 1}
                val, conn = _evaluate(x, p, flips)
                if val < best[0]:
                    best = (val, p, tuple(sorted(flips.items())), conn)
        if len(refs) and enum.systems:
            full = (1 << len(refs)) - 1
            if full * len(enum.systems) > cap:
                flips_exhausted = False
    if best is None:
        # no sectors: the neighborhood of nothing is nothing
        return HeegaardBound(0, True, identity_system(x))
    return HeegaardBound(
        best[0],
        enum.exhaustive and flips_exhausted,
        best[1],
        best[2],
        best[3],
    )


def best_genus_upper_bound(x: MultibranchedSurface, cap: int = 10_000) -> int:
    return min(
        genus_upper_bound_sectors(x),
        genus_upper_bound_heegaard(x, cap).bound,
    )
