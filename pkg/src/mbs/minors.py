"""Minor operations, isomorphism, canonical forms, obstruction candidacy.

Two surfaces are isomorphic when branches and sectors can be matched
preserving genus and orientability, allowing every branch and every sector to
reverse orientation: a matched prebranch must satisfy od' = s_l * t_e * od for
per-branch signs s and per-sector signs t.  canonical_form computes a minimal
encoding over all such symmetry choices, so form equality decides isomorphism
(for all-orientable surfaces; with nonorientable sectors present only |od| is
compared and the form is flagged approximate).

The minor order is generated by removing a sector and contracting an annulus
whose two ends have covering degree 1 on distinct branches.  Both moves drop
the sector count by one, so minor closures are finite and BFS terminates.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    DegreeNotOne,
    NonorientableSector,
    NotAnAnnulus,
    NotRegular,
    ResultCapExceeded,
    SameBranch,
    SearchBudgetExceeded,
    UnknownBranch,
    UnknownSector,
)
from .homology import S3Verdict, h1, s3_obstruction
from .surfaces import (
    MultibranchedSurface,
    Prebranch,
    Sector,
    connected_components,
    is_regular,
    validate,
)


class ApproximateComparison(UserWarning):
    """Nonorientable sectors present: isomorphism compared |od| only."""


# ---------------------------------------------------------------- operations


def remove_sector(x: MultibranchedSurface, e: str) -> MultibranchedSurface:
    """Delete sector e; branches left with nothing attached are pruned."""
    if all(s.id != e for s in x.sectors):
        raise UnknownSector(e)
    sectors = tuple(s for s in x.sectors if s.id != e)
    used = {pb.branch for s in sectors for pb in s.prebranches}
    branches = tuple(b for b in x.branches if b in used)
    return MultibranchedSurface(branches, sectors, x.name)


def _annulus_ends(x: MultibranchedSurface, e: str) -> tuple[Prebranch, Prebranch]:
    s = x.sector(e)
    if not s.orientable or s.genus != 0 or len(s.prebranches) != 2:
        raise NotAnAnnulus(f"sector {e} is not an orientable annulus")
    c_minus, c_plus = s.prebranches
    if c_minus.degree != 1 or c_plus.degree != 1:
        raise DegreeNotOne(f"annulus {e} has an end of degree > 1")
    if c_minus.branch == c_plus.branch:
        raise SameBranch(f"annulus {e} has both ends on {c_minus.branch}")
    return c_minus, c_plus


def is_contractible_annulus(x: MultibranchedSurface, e: str) -> bool:
    try:
        _annulus_ends(x, e)
    except (NotAnAnnulus, DegreeNotOne, SameBranch):
        return False
    return True


def contract_annulus(x: MultibranchedSurface, e: str) -> MultibranchedSurface:
    """Collapse the annulus e onto its core, merging its two branches.

    The merged branch is oriented by the annulus core.  The two boundary
    circles of an annulus run anti-parallel relative to the core, so the two
    old branches are identified with it with opposite sign conventions: a
    prebranch of oriented degree k formerly on l- becomes k*od(c-), one
    formerly on l+ becomes -k*od(c+).  This is exactly the rule under which
    h1 is preserved (contraction is a homotopy equivalence).
    """
    c_minus, c_plus = _annulus_ends(x, e)
    l_minus, l_plus = c_minus.branch, c_plus.branch
    merged = f"{l_minus}_{l_plus}"
    taken = set(x.branches)
    while merged in taken:
        merged += "m"
    branches = tuple(
        merged if b == l_minus else b for b in x.branches if b != l_plus
    )
    sectors = []
    for s in x.sectors:
        if s.id == e:
            continue
        pbs = []
        for pb in s.prebranches:
            if pb.branch == l_minus:
                pbs.append(Prebranch(merged, pb.oriented_degree * c_minus.oriented_degree))
            elif pb.branch == l_plus:
                pbs.append(Prebranch(merged, -pb.oriented_degree * c_plus.oriented_degree))
            else:
                pbs.append(pb)
        sectors.append(replace(s, prebranches=tuple(pbs)))
    used = {pb.branch for s in sectors for pb in s.prebranches}
    branches = tuple(b for b in branches if b in used)
    return MultibranchedSurface(branches, tuple(sectors), x.name)


def reduce_degree(x: MultibranchedSurface, l: str) -> MultibranchedSurface:
    """Lower every covering degree at branch l to 1, keeping orientations."""
    if l not in x.branches:
        raise UnknownBranch(l)
    sectors = []
    for s in x.sectors:
        pbs = tuple(
            Prebranch(pb.branch, 1 if pb.oriented_degree > 0 else -1)
            if pb.branch == l
            else pb
            for pb in s.prebranches
        )
        sectors.append(replace(s, prebranches=pbs))
    return MultibranchedSurface(x.branches, tuple(sectors), x.name)


def torus_sum(x: MultibranchedSurface, e: str) -> MultibranchedSurface:
    """Connected-sum a torus into sector e (genus + 1, attachments fixed)."""
    s = x.sector(e)
    if not s.orientable:
        raise NonorientableSector(e)
    sectors = tuple(
        replace(t, genus=t.genus + 1) if t.id == e else t for t in x.sectors
    )
    return MultibranchedSurface(x.branches, sectors, x.name)


def standard_decomposition(
    x: MultibranchedSurface,
) -> tuple[MultibranchedSurface, list[int]]:
    """Split every sector into boundary disks plus a closed surface.

    Each sector with b prebranches and genus g is cut into b disks (each
    keeping one of the original attachments) and a closed genus-g surface,
    recorded by genus only.  Disk sectors are already in the target shape and
    are kept untouched.
    """
    taken = {s.id for s in x.sectors}
    sectors = []
    genera = []
    for s in x.sectors:
        if not s.orientable:
            raise NonorientableSector(s.id)
        genera.append(s.genus)
        if s.genus == 0 and len(s.prebranches) == 1:
            sectors.append(s)
            continue
        for k, pb in enumerate(s.prebranches):
            disk_id = f"{s.id}_d{k+1}"
            while disk_id in taken:
                disk_id += "x"
            taken.add(disk_id)
            sectors.append(Sector(disk_id, 0, (pb,)))
    return MultibranchedSurface(x.branches, tuple(sectors), x.name), genera


def sector_genus_total(x: MultibranchedSurface) -> int:
    return sum(s.genus for s in x.sectors)


# ------------------------------------------------------- canonical form


@dataclass(frozen=True)
class CanonicalForm:
    """Total-order-comparable encoding; equal forms mean isomorphic surfaces
    (exactly when approximate is False)."""

    key: tuple
    approximate: bool = False

    def _pair(self):
        return (self.approximate, self.key)

    def __lt__(self, other):
        return self._pair() < other._pair()

    def __le__(self, other):
        return self._pair() <= other._pair()

    def __gt__(self, other):
        return self._pair() > other._pair()

    def __ge__(self, other):
        return self._pair() >= other._pair()


_FORM_CACHE: dict[tuple, CanonicalForm] = {}
_FORM_BUDGET = 500_000  # leaf encodings per canonicalization before giving up


def canonical_form(x: MultibranchedSurface) -> CanonicalForm:
    """Minimal encoding of x over relabelings, prebranch reorderings, branch
    reversals, and sector reversals.  Isolated branches are pruned first."""
    cache_key = (x.branches, x.sectors)
    hit = _FORM_CACHE.get(cache_key)
    if hit is not None:
        return hit
    x = validate(x, prune=True)
    approximate = any(not s.orientable for s in x.sectors)
    if approximate:
        warnings.warn(
            "nonorientable sectors: comparison uses |od| only",
            ApproximateComparison,
            stacklevel=2,
        )
    budget = [_FORM_BUDGET]
    keys = sorted(
        _canon_component(comp, not approximate, budget)
        for comp in connected_components(x)
    )
    form = CanonicalForm(tuple(keys), approximate)
    _FORM_CACHE[cache_key] = form
    return form


def are_isomorphic(x: MultibranchedSurface, y: MultibranchedSurface) -> bool:
    return canonical_form(x) == canonical_form(y)


def _rank(colors: dict) -> dict:
    order = sorted(set(colors.values()))
    index = {c: i for i, c in enumerate(order)}
    return {k: index[c] for k, c in colors.items()}


def _canon_component(x: MultibranchedSurface, signed: bool, budget: list) -> tuple:
    branches = list(x.branches)
    sectors = list(x.sectors)
    n = len(branches)
    incid: dict[str, list[tuple[str, int]]] = {b: [] for b in branches}
    for s in sectors:
        for pb in s.prebranches:
            incid[pb.branch].append((s.id, abs(pb.oriented_degree)))

    def refine(placed: dict[str, int]) -> dict[str, int]:
        srank = {s.id: 0 for s in sectors}
        brank = {b: 0 for b in branches}
        while True:
            scolor = {}
            for s in sectors:
                inc = tuple(
                    sorted((brank[pb.branch], abs(pb.oriented_degree)) for pb in s.prebranches)
                )
                scolor[s.id] = (s.genus, 0 if s.orientable else 1, inc)
            new_srank = _rank(scolor)
            bcolor = {}
            for b in branches:
                if b in placed:
                    bcolor[b] = (0, placed[b], ())
                else:
                    inc = tuple(sorted((new_srank[sid], d) for sid, d in incid[b]))
                    bcolor[b] = (1, 0, inc)
            new_brank = _rank(bcolor)
            if new_srank == srank and new_brank == brank:
                return brank
            srank, brank = new_srank, new_brank

    best: list = [None]

    def leaf(placed: dict[str, int]):
        bidx = dict(placed)
        for enc in _leaf_encodings(sectors, bidx, signed, budget):
            full = (n, len(sectors)) + enc
            if best[0] is None or full < best[0]:
                best[0] = full

    def search(placed: dict[str, int]):
        if len(placed) == n:
            leaf(placed)
            return
        brank = refine(placed)
        lo = min(brank[b] for b in branches if b not in placed)
        for b in branches:
            if b not in placed and brank[b] == lo:
                placed[b] = len(placed)
                search(placed)
                del placed[b]

    search({})
    return best[0]


def _leaf_encodings(sectors, bidx, signed, budget):
    keyed = []
    for s in sectors:
        inc = tuple(
            sorted((bidx[pb.branch], abs(pb.oriented_degree)) for pb in s.prebranches)
        )
        keyed.append(((s.genus, 0 if s.orientable else 1, inc), s))
    keyed.sort(key=lambda t: t[0])
    groups = []
    i = 0
    while i < len(keyed):
        j = i
        while j < len(keyed) and keyed[j][0] == keyed[i][0]:
            j += 1
        groups.append([s for _, s in keyed[i:j]])
        i = j
    # tied sectors are interchangeable a priori; their order can still shift
    # the sign normalisation, so orders within a tie class are tried, but two
    # sectors with literally equal data never need swapping
    def signed_sig(s):
        return (
            s.genus,
            s.orientable,
            tuple(sorted((bidx[pb.branch], pb.oriented_degree) for pb in s.prebranches)),
        )

    per_group = []
    for g in groups:
        seen = set()
        opts = []
        for perm in itertools.permutations(g):
            key = tuple(signed_sig(s) for s in perm)
            if key in seen:
                continue
            seen.add(key)
            opts.append(perm)
        per_group.append(opts)

    for arrangement in itertools.product(*per_group):
        seq = [s for grp in arrangement for s in grp]
        yield from _sign_encodings(seq, bidx, signed, budget)


def _spend(budget):
    budget[0] -= 1
    if budget[0] < 0:
        raise ResultCapExceeded("canonical form search exceeded its budget")


def _sign_encodings(seq, bidx, signed, budget):
    if not signed:
        entries = []
        for s in seq:
            members = tuple(
                sorted((bidx[pb.branch], abs(pb.oriented_degree), 0) for pb in s.prebranches)
            )
            entries.append((s.genus, 0 if s.orientable else 1, members))
        _spend(budget)
        yield tuple(entries)
        return

    plan = []
    for s in seq:
        by_branch: dict[str, list[int]] = {}
        for pb in s.prebranches:
            by_branch.setdefault(pb.branch, []).append(pb.oriented_degree)
        plan.append((s, sorted(by_branch.items(), key=lambda kv: bidx[kv[0]])))

    parent: dict = {}
    par: dict = {}

    def find(node):
        if node not in parent:
            parent[node] = node
            par[node] = 0
            return node, 0
        p = 0
        while parent[node] != node:
            p ^= par[node]
            node = parent[node]
        return node, p

    def group_tuple(b, ods, flip):
        out = []
        for od in ods:
            v = -od if flip else od
            out.append((bidx[b], abs(v), 0 if v > 0 else 1))
        return tuple(sorted(out))

    def dfs(si, gi, acc_entries, acc_members):
        if si == len(plan):
            _spend(budget)
            yield tuple(acc_entries)
            return
        s, groups = plan[si]
        if gi == len(groups):
            acc_entries.append((s.genus, 0 if s.orientable else 1, tuple(acc_members)))
            yield from dfs(si + 1, 0, acc_entries, [])
            acc_entries.pop()
            return
        b, ods = groups[gi]
        r_s, p_s = find(("s", s.id))
        r_b, p_b = find(("b", b))
        if r_s == r_b:
            t = group_tuple(b, ods, p_s ^ p_b)
            k = len(acc_members)
            acc_members.extend(t)
            yield from dfs(si, gi + 1, acc_entries, acc_members)
            del acc_members[k:]
            return
        # free relative orientation between the two components: pick the
        # lexicographically better reading, fork only on a tie
        t0 = group_tuple(b, ods, p_s ^ p_b)
        t1 = group_tuple(b, ods, p_s ^ p_b ^ 1)
        if t0 < t1:
            options = [(t0, 0)]
        elif t1 < t0:
            options = [(t1, 1)]
        else:
            options = [(t0, 0), (t1, 1)]
        for t, rel in options:
            parent[r_s] = r_b
            par[r_s] = rel
            k = len(acc_members)
            acc_members.extend(t)
            yield from dfs(si, gi + 1, acc_entries, acc_members)
            del acc_members[k:]
            parent[r_s] = r_s
            par[r_s] = 0

    yield from dfs(0, 0, [], [])


# ------------------------------------------------------------ minor closure


def all_minors(
    x: MultibranchedSurface, max_results: int = 10_000
) -> dict[CanonicalForm, MultibranchedSurface]:
    """Closure of {X} under sector removal and annulus contraction.

    Returns form -> representative surface; X's own class is included.
    Raises ResultCapExceeded past max_results distinct classes.
    """
    x = validate(x, prune=True)
    start = canonical_form(x)
    out = {start: x}
    queue = [x]
    while queue:
        cur = queue.pop(0)
        children = [remove_sector(cur, s.id) for s in cur.sectors]
        children += [
            contract_annulus(cur, s.id)
            for s in cur.sectors
            if is_contractible_annulus(cur, s.id)
        ]
        for child in children:
            form = canonical_form(child)
            if form in out:
                continue
            if len(out) >= max_results:
                raise ResultCapExceeded(f"more than {max_results} minor classes")
            out[form] = child
            queue.append(child)
    return out


def is_minor(
    x: MultibranchedSurface, y: MultibranchedSurface, max_results: int = 10_000
) -> bool:
    return canonical_form(validate(x, prune=True)) in all_minors(y, max_results)


# ----------------------------------------------------------- certificates


@dataclass(frozen=True)
class MinorStep:
    op: str  # remove-sector | contract-annulus | reduce-degree | torus-sum
    arg: str
    result: MultibranchedSurface


@dataclass(frozen=True)
class MinorCertificate:
    source: MultibranchedSurface
    target: MultibranchedSurface
    steps: tuple[MinorStep, ...]


_STEP_OPS = {
    "remove-sector": remove_sector,
    "contract-annulus": contract_annulus,
    "reduce-degree": reduce_degree,
    "torus-sum": torus_sum,
}


def replay_certificate(cert: MinorCertificate) -> MultibranchedSurface:
    """Re-apply the steps to the source; the result must be isomorphic to the
    target (checked by the caller or the tests)."""
    cur = cert.source
    for step in cert.steps:
        cur = _STEP_OPS[step.op](cur, step.arg)
    return cur


def neighborhood_minor_certificate(
    x: MultibranchedSurface,
    y: MultibranchedSurface,
    depth: int = 4,
    max_nodes: int = 20_000,
) -> MinorCertificate | None:
    """Search for a sequence of certified moves taking Y to X.

    The certified moves are annulus contraction, degree reduction, and torus
    connected sum; each yields a surface embeddable in every neighborhood of
    the previous one, so a certificate proves X embeds in every neighborhood
    of Y (and inherits Y's genus bounds).  Absence of a certificate within
    the depth bound refutes nothing.
    """
    x = validate(x, prune=True)
    y = validate(y, prune=True)
    if not is_regular(x) or not is_regular(y):
        raise NotRegular("certificates are searched for regular surfaces")
    target = canonical_form(x)
    target_sectors = len(x.sectors)
    target_genus = sector_genus_total(x)
    if canonical_form(y) == target:
        return MinorCertificate(y, x, ())
    seen = {canonical_form(y)}
    queue: list[tuple[MultibranchedSurface, tuple[MinorStep, ...]]] = [(y, ())]
    visited = 0
    while queue:
        cur, steps = queue.pop(0)
        visited += 1
        if visited > max_nodes:
            raise SearchBudgetExceeded(f"visited more than {max_nodes} states")
        if len(steps) >= depth:
            continue
        succ: list[tuple[str, str]] = []
        if len(cur.sectors) > target_sectors:
            succ += [
                ("contract-annulus", s.id)
                for s in cur.sectors
                if is_contractible_annulus(cur, s.id)
            ]
        succ += [
            ("reduce-degree", b)
            for b in cur.branches
            if any(
                pb.degree > 1
                for s, pos in cur.prebranches_at(b)
                for pb in (s.prebranches[pos],)
            )
        ]
        if sector_genus_total(cur) < target_genus:
            succ += [("torus-sum", s.id) for s in cur.sectors if s.orientable]
        for op, arg in succ:
            child = _STEP_OPS[op](cur, arg)
            if len(child.sectors) < target_sectors:
                continue
            if sector_genus_total(child) > target_genus:
                continue
            form = canonical_form(child)
            if form in seen:
                continue
            seen.add(form)
            chain = steps + (MinorStep(op, arg, child),)
            if form == target:
                return MinorCertificate(y, x, chain)
            queue.append((child, chain))
    return None


# ----------------------------------------------------- obstruction candidacy


class OmegaVerdict(Enum):
    CANDIDATE = "candidate"
    NOT_CANDIDATE = "not-candidate"
    UNKNOWN = "unknown"


_OMEGA_CAVEAT = (
    "necessary evidence only: the implemented obstruction is H1 torsion, and "
    "torsion-freeness of the proper minors does not certify their embeddability"
)


@dataclass(frozen=True)
class OmegaResult:
    verdict: OmegaVerdict
    caveat: str
    witness: MultibranchedSurface | None = None


def obstruction_candidate_s3(
    x: MultibranchedSurface, max_results: int = 10_000
) -> OmegaResult:
    """Is X minor-minimal among torsion-obstructed surfaces?

    Candidate: X is obstructed and every proper minor has torsion-free H1.
    NotCandidate: X is unobstructed, or some proper minor is obstructed
    (returned as witness).  Unknown: the minor closure exceeded max_results.
    """
    x = validate(x, prune=True)
    if s3_obstruction(x) is not S3Verdict.OBSTRUCTED:
        return OmegaResult(OmegaVerdict.NOT_CANDIDATE, "X itself is unobstructed")
    try:
        minors = all_minors(x, max_results)
    except ResultCapExceeded:
        return OmegaResult(OmegaVerdict.UNKNOWN, "minor closure exceeded the cap")
    xform = canonical_form(x)
    for form, rep in minors.items():
        if form == xform:
            continue
        if h1(rep).invariant_factors:
            return OmegaResult(
                OmegaVerdict.NOT_CANDIDATE,
                "a proper minor is already obstructed",
                witness=rep,
            )
    return OmegaResult(OmegaVerdict.CANDIDATE, _OMEGA_CAVEAT)
