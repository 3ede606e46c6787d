"""Text format for surface documents.

A document holds one or more named surfaces:

    mbs pants
    branch l1
    branch l2
    sector e1 genus 0
    prebranch e1 l1 1
    prebranch e1 l2 -1   # od sign relative to the reference orientations

Directives: `mbs <name>`, `branch <id>`, `sector <id> genus <g>
[nonorientable]`, `prebranch <sector-id> <branch-id> <od>`.  `#` starts a
comment.  Ids are tokens over [A-Za-z0-9_.-].  Prebranch line order is kept:
it fixes the order of a sector's boundary circles, which downstream code
(spines, default cyclic orders) depends on.
"""

from __future__ import annotations

import re

from .errors import DocumentSyntaxError, SemanticError
from .surfaces import MultibranchedSurface, Prebranch, Sector

_TOKEN = re.compile(r"[A-Za-z0-9_.\-]+\Z")
_WORD = re.compile(r"\S+")


def _tokenize(line: str) -> list[tuple[str, int]]:
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return [(m.group(), m.start() + 1) for m in _WORD.finditer(line)]


def _check_token(tok: str, col: int, lineno: int, what: str) -> str:
    if not _TOKEN.match(tok):
        raise DocumentSyntaxError(f"bad {what} token {tok!r}", lineno, col)
    return tok


def _check_int(tok: str, col: int, lineno: int, what: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise DocumentSyntaxError(f"{what} must be an integer, got {tok!r}", lineno, col) from None


class _Builder:
    def __init__(self, name: str, lineno: int):
        self.name = name
        self.lineno = lineno
        self.branches: list[str] = []
        self.sector_order: list[str] = []
        self.sectors: dict[str, tuple[int, bool, list[Prebranch]]] = {}

    def finish(self) -> MultibranchedSurface:
        sectors = []
        for sid in self.sector_order:
            genus, orientable, pbs = self.sectors[sid]
            if not pbs:
                raise SemanticError(f"sector {sid} has no prebranches", self.lineno)
            sectors.append(Sector(sid, genus, tuple(pbs), orientable))
        return MultibranchedSurface(tuple(self.branches), tuple(sectors), self.name)


def parse(text: str) -> list[MultibranchedSurface]:
    """Parse a document into its surfaces, in order of appearance."""
    surfaces: list[MultibranchedSurface] = []
    cur: _Builder | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokenize(raw)
        if not toks:
            continue
        (word, col0), args = toks[0], toks[1:]

        if word == "mbs":
            if len(args) != 1:
                raise DocumentSyntaxError("mbs takes exactly one name", lineno, col0)
            if cur is not None:
                surfaces.append(cur.finish())
            name, c = args[0]
            cur = _Builder(_check_token(name, c, lineno, "name"), lineno)
            continue

        if cur is None:
            raise SemanticError(f"{word!r} before any mbs header", lineno)

        if word == "branch":
            if len(args) != 1:
                raise DocumentSyntaxError("branch takes exactly one id", lineno, col0)
            bid, c = args[0]
            _check_token(bid, c, lineno, "branch id")
            if bid in cur.branches:
                raise SemanticError(f"duplicate branch id {bid}", lineno)
            cur.branches.append(bid)

        elif word == "sector":
            if len(args) not in (3, 4) or args[1][0] != "genus":
                raise DocumentSyntaxError(
                    "expected: sector <id> genus <g> [nonorientable]", lineno, col0
                )
            sid, c = args[0]
            _check_token(sid, c, lineno, "sector id")
            genus = _check_int(args[2][0], args[2][1], lineno, "genus")
            if genus < 0:
                raise SemanticError(f"negative genus for sector {sid}", lineno)
            orientable = True
            if len(args) == 4:
                flag, fc = args[3]
                if flag != "nonorientable":
                    raise DocumentSyntaxError(f"unexpected token {flag!r}", lineno, fc)
                orientable = False
            if sid in cur.sectors:
                raise SemanticError(f"duplicate sector id {sid}", lineno)
            cur.sectors[sid] = (genus, orientable, [])
            cur.sector_order.append(sid)

        elif word == "prebranch":
            if len(args) != 3:
                raise DocumentSyntaxError(
                    "expected: prebranch <sector-id> <branch-id> <od>", lineno, col0
                )
            sid, sc = args[0]
            bid, bc = args[1]
            _check_token(sid, sc, lineno, "sector id")
            _check_token(bid, bc, lineno, "branch id")
            od = _check_int(args[2][0], args[2][1], lineno, "oriented degree")
            if sid not in cur.sectors:
                raise SemanticError(f"prebranch for unknown sector {sid}", lineno)
            if bid not in cur.branches:
                raise SemanticError(f"prebranch onto unknown branch {bid}", lineno)
            if od == 0:
                raise SemanticError("zero oriented degree", lineno)
            cur.sectors[sid][2].append(Prebranch(bid, od))

        else:
            raise DocumentSyntaxError(f"unknown directive {word!r}", lineno, col0)

    if cur is not None:
        surfaces.append(cur.finish())
    return surfaces


def parse_one(text: str) -> MultibranchedSurface:
    """Parse a document that must contain exactly one surface."""
    surfaces = parse(text)
    if len(surfaces) != 1:
        raise SemanticError(f"expected exactly one surface, found {len(surfaces)}")
    return surfaces[0]


def serialize(x: MultibranchedSurface) -> str:
    lines = [f"mbs {x.name}"]
    for b in x.branches:
        lines.append(f"branch {b}")
    for s in x.sectors:
        flag = "" if s.orientable else " nonorientable"
        lines.append(f"sector {s.id} genus {s.genus}{flag}")
        for pb in s.prebranches:
            lines.append(f"prebranch {s.id} {pb.branch} {pb.oriented_degree}")
    return "\n".join(lines) + "\n"


def serialize_document(surfaces: list[MultibranchedSurface]) -> str:
    return "\n".join(serialize(x) for x in surfaces)
