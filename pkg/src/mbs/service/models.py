"""Request/response schemas; also the JSON export shapes.

Surface, group, spine, dual-graph and boundary models mirror the domain
types field for field, so a JSON export is exactly the wire format of the
service and vice versa.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

from ..homology import FgAbelianGroup, SpineGraph
from ..neighborhoods import BoundarySurface, CircularPermutationSystem, DualGraph
from ..surfaces import MultibranchedSurface, Prebranch, Sector


class PrebranchModel(BaseModel):
    branch: str
    oriented_degree: int


class SectorModel(BaseModel):
    id: str
    genus: int = Field(ge=0)
    orientable: bool = True
    prebranches: list[PrebranchModel]


class SurfaceModel(BaseModel):
    name: str = "surface"
    branches: list[str]
    sectors: list[SectorModel]

    @classmethod
    def from_domain(cls, x: MultibranchedSurface) -> "SurfaceModel":
        return cls(
            name=x.name,
            branches=list(x.branches),
            sectors=[
                SectorModel(
                    id=s.id,
                    genus=s.genus,
                    orientable=s.orientable,
                    prebranches=[
                        PrebranchModel(branch=pb.branch, oriented_degree=pb.oriented_degree)
                        for pb in s.prebranches
                    ],
                )
                for s in x.sectors
            ],
        )

    def to_domain(self) -> MultibranchedSurface:
        return MultibranchedSurface(
            tuple(self.branches),
            tuple(
                Sector(
                    s.id,
                    s.genus,
                    tuple(Prebranch(pb.branch, pb.oriented_degree) for pb in s.prebranches),
                    s.orientable,
                )
                for s in self.sectors
            ),
            self.name,
        )


class GroupModel(BaseModel):
    invariant_factors: list[int]
    free_rank: int
    pretty: str

    @classmethod
    def from_domain(cls, g: FgAbelianGroup) -> "GroupModel":
        return cls(
            invariant_factors=list(g.invariant_factors),
            free_rank=g.free_rank,
            pretty=g.pretty(),
        )


class SpineEdgeModel(BaseModel):
    u: str
    v: str
    tag: str


class SpineModel(BaseModel):
    vertices: list[str]
    edges: list[SpineEdgeModel]
    betti_number: int

    @classmethod
    def from_domain(cls, g: SpineGraph) -> "SpineModel":
        return cls(
            vertices=list(g.vertices),
            edges=[SpineEdgeModel(u=u, v=v, tag=t) for u, v, t in g.edges],
            betti_number=g.betti_number(),
        )


class DualEdgeModel(BaseModel):
    sector: str
    plus_component: str
    minus_component: str


class DualGraphModel(BaseModel):
    vertices: list[str]
    edges: list[DualEdgeModel]
    betti_number: int
    connected: bool

    @classmethod
    def from_domain(cls, g: DualGraph) -> "DualGraphModel":
        return cls(
            vertices=list(g.vertices),
            edges=[
                DualEdgeModel(sector=s, plus_component=cp, minus_component=cm)
                for s, cp, cm in g.edges
            ],
            betti_number=g.betti_number(),
            connected=g.is_connected(),
        )


class PieceModel(BaseModel):
    kind: Literal["side", "gap"]
    owner: str  # sector id for sides, branch id for gaps
    place: Union[int, str]  # "+"/"-" for sides, cyclic position for gaps

    @classmethod
    def from_tuple(cls, piece: tuple) -> "PieceModel":
        return cls(kind=piece[0], owner=piece[1], place=piece[2])


class PieceAssignmentModel(BaseModel):
    piece: PieceModel
    component: str


class GluingModel(BaseModel):
    sector: str
    position: int
    side: Literal["+", "-"]
    side_piece: PieceModel
    gap_piece: PieceModel


class BoundaryComponentModel(BaseModel):
    id: str
    genus: int


class BoundaryModel(BaseModel):
    components: list[BoundaryComponentModel]
    pieces: list[PieceAssignmentModel]
    gluings: list[GluingModel]
    genus_sum: int

    @classmethod
    def from_domain(cls, bs: BoundarySurface) -> "BoundaryModel":
        return cls(
            components=[BoundaryComponentModel(id=c, genus=g) for c, g in bs.components],
            pieces=[
                PieceAssignmentModel(piece=PieceModel.from_tuple(p), component=c)
                for p, c in bs.piece_assignment
            ],
            gluings=[
                GluingModel(
                    sector=circle[0],
                    position=circle[1],
                    side=circle[2],
                    side_piece=PieceModel.from_tuple(side),
                    gap_piece=PieceModel.from_tuple(gap),
                )
                for circle, side, gap in bs.gluings
            ],
            genus_sum=bs.genus_sum(),
        )


class PermutationSystemModel(BaseModel):
    # per branch: the prebranch cycle as (sector id, position) pairs
    orders: list[tuple[str, list[tuple[str, int]]]]

    @classmethod
    def from_domain(cls, p: CircularPermutationSystem) -> "PermutationSystemModel":
        return cls(orders=[(b, [list(r) for r in refs]) for b, refs in p.orders])


# ----------------------------------------------------------- requests


class SurfaceRequest(BaseModel):
    surface: SurfaceModel


class PairRequest(BaseModel):
    x: SurfaceModel
    y: SurfaceModel


class GenusBoundsRequest(SurfaceRequest):
    cap: int = 10_000
    flips: bool = False


class MinorsRequest(SurfaceRequest):
    max_results: int = 10_000


class IsMinorRequest(PairRequest):
    max_results: int = 10_000


class NminorRequest(PairRequest):
    depth: int = 4
    max_nodes: int = 20_000


class BuildRequest(BaseModel):
    family: str
    params: list[str] = []


class ExportRequest(SurfaceRequest):
    what: Literal["dual-graph", "boundary", "spine"]
    format: Literal["dot", "json"] = "dot"


# ---------------------------------------------------------- responses


class BranchInfoModel(BaseModel):
    id: str
    index: int
    degree: Optional[int] = None  # None when degrees at the branch disagree


class ValidateResponse(BaseModel):
    ok: bool
    surface: SurfaceModel  # pruned form
    messages: list[str] = []


class InvariantsResponse(BaseModel):
    name: str
    euler_characteristic: int
    regular: bool
    connected: bool
    branches: list[BranchInfoModel]
    h1: Optional[GroupModel] = None
    h1_error: Optional[str] = None
    punctured_spine_rank: Optional[int] = None


class S3Response(BaseModel):
    verdict: Literal["obstructed", "inconclusive"]
    torsion: list[int]
    h1: GroupModel


class HeegaardModel(BaseModel):
    bound: int
    exhaustive: bool
    dual_connected: bool
    witness: PermutationSystemModel
    witness_flips: list[tuple[tuple[str, int], bool]] = []


class GenusBoundsResponse(BaseModel):
    sector_bound: int
    heegaard: HeegaardModel
    best: int


class MinorsResponse(BaseModel):
    count: int
    minors: list[SurfaceModel]


class BoolResponse(BaseModel):
    answer: bool


class IsoResponse(BaseModel):
    isomorphic: bool
    approximate: bool


class StepModel(BaseModel):
    op: str
    arg: str
    result: SurfaceModel


class NminorResponse(BaseModel):
    found: bool
    steps: list[StepModel] = []


class OmegaResponse(BaseModel):
    verdict: Literal["candidate", "not-candidate", "unknown"]
    caveat: str
    witness: Optional[SurfaceModel] = None


class DecomposeResponse(BaseModel):
    surface: SurfaceModel
    closed_genera: list[int]
    text: str


class BuildResponse(BaseModel):
    surface: SurfaceModel
    text: str


class ExportResponse(BaseModel):
    format: Literal["dot", "json"]
    content: str


class ErrorResponse(BaseModel):
    error: str
    detail: str
