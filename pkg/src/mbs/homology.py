"""First homology of a multibranched surface, exactly over Z.

H1(X) decomposes as the cokernel of an integer relation matrix (one row per
sector, recording how its boundary wraps the branches) plus a free part whose
rank comes from the once-punctured sectors collapsing onto a spine graph.
Torsion is read off a Smith normal form; all arithmetic is exact (Python
ints), no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import Disconnected, InternalMismatch, NonorientableSector, NotRegular
from .surfaces import MultibranchedSurface, connected_components, euler_characteristic, is_regular


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "IntegerMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(v for row in rows for v in row))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]


def _nearest_quotient(v: int, p: int) -> int:
    q, rem = divmod(v, p)
    if 2 * abs(rem) > abs(p):
        q += 1
    return q


def smith_normal_form(m: IntegerMatrix) -> list[int]:
    """Diagonal of the Smith normal form of m.

    Returns the full diagonal, length min(rows, cols), nonnegative, each entry
    dividing the next, including leading 1s and trailing 0s.  Gcd-driven
    elimination with two guards against coefficient blowup: the globally
    smallest entry is re-picked as pivot after every pass, and quotients are
    rounded to nearest so remainders never exceed half the pivot.
    """
    a = m.to_lists()
    r, c = m.rows, m.cols
    n = min(r, c)
    diag = [0] * n
    for t in range(n):
        while True:
            piv = None
            best = 0
            for i in range(t, r):
                for j in range(t, c):
                    v = abs(a[i][j])
                    if v and (piv is None or v < best):
                        piv, best = (i, j), v
            if piv is None:
                break
            pi, pj = piv
            a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    q = _nearest_quotient(a[i][t], p)
                    for j in range(t, c):
                        a[i][j] -= q * a[t][j]
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, c):
                if a[t][j]:
                    q = _nearest_quotient(a[t][j], p)
                    for i in range(t, r):
                        a[i][j] -= q * a[i][t]
                    clean = clean and a[t][j] == 0
            if clean:
                diag[t] = abs(p)
                break
    # enforce the divisibility chain
    for i in range(n):
        for j in range(i + 1, n):
            if diag[j] % (diag[i] or 1) != 0 or diag[i] == 0:
                g = gcd(diag[i], diag[j])
                l = diag[i] // g * diag[j] if g else 0
                diag[i], diag[j] = g, l
    return diag


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    invariant_factors are the torsion factors >= 2, each dividing the next.
    """

    invariant_factors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("torsion factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("torsion factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def from_factors(cls, factors: list[int], free_rank: int) -> "FgAbelianGroup":
        """Normalise an arbitrary bag of cyclic orders into invariant factors."""
        factors = [abs(f) for f in factors if abs(f) != 1]
        if any(f == 0 for f in factors):
            raise ValueError("use free_rank for infinite factors")
        if not factors:
            return cls((), free_rank)
        n = len(factors)
        diag = IntegerMatrix.from_rows(
            [[factors[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )
        snf = smith_normal_form(diag)
        return cls(tuple(f for f in snf if f >= 2), free_rank)

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_factors(
            list(self.invariant_factors) + list(other.invariant_factors),
            self.free_rank + other.free_rank,
        )

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def torsion_order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def pretty(self) -> str:
        """Render like 'Z/3 + Z^5'; the trivial group is '0'."""
        parts = [f"Z/{f}" for f in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def relation_matrix(x: MultibranchedSurface) -> IntegerMatrix:
    """One row per sector, one column per branch; entry = sum of oriented
    degrees of the sector's prebranches on that branch."""
    col = {b: j for j, b in enumerate(x.branches)}
    rows = []
    for s in x.sectors:
        row = [0] * len(x.branches)
        for pb in s.prebranches:
            row[col[pb.branch]] += pb.oriented_degree
        rows.append(row)
    if not rows:
        return IntegerMatrix(0, len(x.branches), ())
    return IntegerMatrix.from_rows(rows)


@dataclass(frozen=True)
class SpineGraph:
    """1-complex the punctured surface collapses onto.

    vertices: one per branch.  edges: (endpoint, endpoint, tag) with one loop
    per branch, a chain of connecting arcs per sector, and 2g loops per
    orientable genus-g sector.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def component_count(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v, _ in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(v) for v in self.vertices})

    def betti_number(self) -> int:
        return len(self.edges) - len(self.vertices) + self.component_count()


def spine_graph(x: MultibranchedSurface) -> SpineGraph:
    """Build the spine of the once-punctured surface.

    Each sector, punctured once, collapses to its first prebranch's branch
    carrying 2g loops, chained to the other prebranches' branches by arcs.
    """
    for s in x.sectors:
        if not s.orientable:
            raise NonorientableSector(s.id)
    edges = []
    for b in x.branches:
        edges.append((b, b, f"branch:{b}"))
    for s in x.sectors:
        anchors = [pb.branch for pb in s.prebranches]
        for i in range(len(anchors) - 1):
            edges.append((anchors[i], anchors[i + 1], f"arc:{s.id}:{i}"))
        for i in range(2 * s.genus):
            edges.append((anchors[0], anchors[0], f"handle:{s.id}:{i}"))
    return SpineGraph(tuple(x.branches), tuple(edges))


def punctured_spine_rank(x: MultibranchedSurface) -> int:
    """Rank of H1 of the once-punctured surface, computed two ways.

    Route a: first Betti number of the spine graph.  Route b: chi bookkeeping,
    1 + #sectors - chi(X) for connected X.  They must agree; a mismatch means
    a bug, not bad input.
    """
    if len(connected_components(x)) != 1:
        raise Disconnected("punctured spine rank needs a connected surface")
    a = spine_graph(x).betti_number()
    b = 1 + len(x.sectors) - euler_characteristic(x)
    if a != b:
        raise InternalMismatch(f"spine betti {a} != chi count {b}")
    return a


def _h1_connected(x: MultibranchedSurface) -> FgAbelianGroup:
    m = relation_matrix(x)
    snf = smith_normal_form(m)
    rank = sum(1 for d in snf if d != 0)
    torsion = [d for d in snf if d >= 2]
    free = punctured_spine_rank(x) - rank
    return FgAbelianGroup.from_factors(torsion, free)


def h1(x: MultibranchedSurface, require_regular: bool = False) -> FgAbelianGroup:
    """First homology group of X.

    Works per connected component and sums.  The computation is valid for
    irregular surfaces too; pass require_regular=True to enforce the stricter
    contract and get NotRegular instead.
    """
    if require_regular and not is_regular(x):
        raise NotRegular("h1 called with require_regular on an irregular surface")
    for s in x.sectors:
        if not s.orientable:
            raise NonorientableSector(s.id)
    total = FgAbelianGroup((), 0)
    for comp in connected_components(x):
        total = total.direct_sum(_h1_connected(comp))
    return total


class S3Verdict(Enum):
    OBSTRUCTED = "obstructed"
    INCONCLUSIVE = "inconclusive"


def s3_obstruction(x: MultibranchedSurface) -> S3Verdict:
    """Torsion test: H1 of anything embeddable in the 3-sphere is free.

    OBSTRUCTED is a proof of non-embeddability; INCONCLUSIVE is not a proof
    of embeddability.
    """
    g = h1(x)
    if g.invariant_factors:
        return S3Verdict.OBSTRUCTED
    return S3Verdict.INCONCLUSIVE
