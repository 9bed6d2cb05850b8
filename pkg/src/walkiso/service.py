"""HTTP service exposing the library pipelines.

Thin FastAPI layer: pydantic models validate requests, the core package does
the work, responses carry the same JSON shapes as the CLI (big integers as
decimal strings).  Run it with ``uvicorn walkiso.service:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, model_validator

from .charpoly import (
    IntegrityError,
    charpoly_from_traces,
    check_derivative_identity,
    power_traces,
    vertex_deleted_charpolys,
)
from .graphs import (
    Graph,
    GraphParseError,
    fixture_graph,
    parse_edge_list,
    parse_graph6,
    random_graph,
    write_graph6,
)
from .invariants import (
    DEFAULT_MODULUS,
    InvariantTable,
    certificate,
    compare_certificates,
    walk_diagonal_table,
    walk_diagonal_table_mod,
)
from .isomatch import DEFAULT_BUDGET, IsoConfig, find_isomorphism
from .reconstruct import reconstruct_adjacency

app = FastAPI(
    title="walkiso",
    description="Walk-count graph invariants, characteristic polynomials, "
                "spectral reconstruction and isomorphism search.",
)


class GraphInput(BaseModel):
    """A graph, given as exactly one of a graph6 line or an edge-list text."""

    graph6: str | None = None
    edge_list: str | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "GraphInput":
        if (self.graph6 is None) == (self.edge_list is None):
            raise ValueError("provide exactly one of graph6, edge_list")
        return self

    def to_graph(self) -> Graph:
        try:
            if self.graph6 is not None:
                return parse_graph6(self.graph6)
            return parse_edge_list(self.edge_list)
        except GraphParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc))


class RandomSpec(BaseModel):
    n: int = Field(ge=1, le=4096)
    p: float = Field(ge=0.0, le=1.0)
    seed: int = 0


class GenerateRequest(BaseModel):
    fixture: str | None = None
    random: RandomSpec | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "GenerateRequest":
        if (self.fixture is None) == (self.random is None):
            raise ValueError("provide exactly one of fixture, random")
        return self


class GraphResponse(BaseModel):
    n: int
    edges: int
    graph6: str


class TableRequest(BaseModel):
    graph: GraphInput
    kmax: int | None = Field(default=None, ge=1)
    modulus: int | None = Field(default=None, ge=2)


class TableResponse(BaseModel):
    type: str
    n: int
    kmax: int
    modulus: str | None
    d: list[list[str]]


class CertificateResponse(BaseModel):
    type: str
    n: int
    kmax: int
    rows: list[list[str]]
    order: list[int]


class CompareRequest(BaseModel):
    graph_a: GraphInput
    graph_b: GraphInput
    kmax: int | None = Field(default=None, ge=1)
    modulus: int | None = Field(default=None, ge=2)


class CompareResponse(BaseModel):
    equal: bool
    position: int | None


class GraphOnlyRequest(BaseModel):
    graph: GraphInput


class PolynomialModel(BaseModel):
    type: str
    degree: int
    coeffs: list[str]


class CharpolyResponse(PolynomialModel):
    text: str


class DeletedResponse(BaseModel):
    type: str
    n: int
    polys: list[PolynomialModel]
    derivative_identity: bool


class ReconstructRequest(BaseModel):
    graph: GraphInput | None = None
    table: dict | None = None
    kmax: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _exactly_one(self) -> "ReconstructRequest":
        if (self.graph is None) == (self.table is None):
            raise ValueError("provide exactly one of graph, table")
        return self


class SpectrumModel(BaseModel):
    eigenvalues: list[float]
    gaps: list[float]
    min_gap: float | None


class ReconstructResponse(BaseModel):
    type: str
    status: str
    note: str
    spectrum: SpectrumModel | None
    max_residual: float | None
    graph6: str | None


class IsoRequest(BaseModel):
    graph_a: GraphInput
    graph_b: GraphInput
    kmax: int | None = Field(default=None, ge=1)
    rounds: int = Field(default=2, ge=0)
    budget: int = Field(default=DEFAULT_BUDGET, ge=1)
    modular_prefilter: bool = False
    modulus: int = Field(default=DEFAULT_MODULUS, ge=2)


class WitnessModel(BaseModel):
    kind: str
    position: int


class IsoStatsModel(BaseModel):
    nodes: int
    classes: int


class IsoResponse(BaseModel):
    type: str
    verdict: str
    permutation: list[int] | None
    witness: WitnessModel | None
    stats: IsoStatsModel


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/graphs/generate", response_model=GraphResponse)
def generate(req: GenerateRequest) -> GraphResponse:
    if req.fixture is not None:
        try:
            g = fixture_graph(req.fixture)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
    else:
        g = random_graph(req.random.n, req.random.p, req.random.seed)
    return GraphResponse(n=g.n, edges=g.edge_count, graph6=write_graph6(g))


def _table_for(req: TableRequest):
    g = req.graph.to_graph()
    kmax = req.kmax if req.kmax is not None else g.n
    if req.modulus is not None:
        return walk_diagonal_table_mod(g, kmax, req.modulus)
    return walk_diagonal_table(g, kmax)


@app.post("/invariants/table", response_model=TableResponse)
def invariants_table(req: TableRequest) -> TableResponse:
    return TableResponse(**_table_for(req).to_json_dict())


@app.post("/invariants/certificate", response_model=CertificateResponse)
def invariants_certificate(req: TableRequest) -> CertificateResponse:
    return CertificateResponse(**certificate(_table_for(req)).to_json_dict())


@app.post("/invariants/compare", response_model=CompareResponse)
def invariants_compare(req: CompareRequest) -> CompareResponse:
    g1 = req.graph_a.to_graph()
    g2 = req.graph_b.to_graph()
    k1 = req.kmax if req.kmax is not None else g1.n
    k2 = req.kmax if req.kmax is not None else g2.n
    if req.modulus is not None:
        c1 = certificate(walk_diagonal_table_mod(g1, k1, req.modulus))
        c2 = certificate(walk_diagonal_table_mod(g2, k2, req.modulus))
    else:
        c1 = certificate(walk_diagonal_table(g1, k1))
        c2 = certificate(walk_diagonal_table(g2, k2))
    return CompareResponse(**compare_certificates(c1, c2).to_json_dict())


@app.post("/charpoly", response_model=CharpolyResponse)
def charpoly(req: GraphOnlyRequest) -> CharpolyResponse:
    g = req.graph.to_graph()
    poly = charpoly_from_traces(power_traces(walk_diagonal_table(g, g.n)), g.n)
    return CharpolyResponse(**poly.to_json_dict(), text=poly.format_text())


@app.post("/charpoly/deleted", response_model=DeletedResponse)
def charpoly_deleted(req: GraphOnlyRequest) -> DeletedResponse:
    g = req.graph.to_graph()
    table = walk_diagonal_table(g, g.n)
    poly = charpoly_from_traces(power_traces(table), g.n)
    deleted = vertex_deleted_charpolys(table, poly)
    return DeletedResponse(
        **deleted.to_json_dict(),
        derivative_identity=check_derivative_identity(deleted, poly),
    )


@app.post("/reconstruct", response_model=ReconstructResponse)
def reconstruct(req: ReconstructRequest) -> ReconstructResponse:
    if req.table is not None:
        try:
            table = InvariantTable.from_json_dict(req.table)
        except (ValueError, KeyError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=f"bad table: {exc}")
    else:
        g = req.graph.to_graph()
        kmax = req.kmax if req.kmax is not None else g.n
        table = walk_diagonal_table(g, max(kmax, g.n))
    try:
        result = reconstruct_adjacency(table)
    except (ValueError, IntegrityError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return ReconstructResponse(**result.to_json_dict())


@app.post("/isomorphism", response_model=IsoResponse)
def isomorphism(req: IsoRequest) -> IsoResponse:
    g1 = req.graph_a.to_graph()
    g2 = req.graph_b.to_graph()
    cfg = IsoConfig(kmax=req.kmax, rounds=req.rounds, budget=req.budget,
                    use_modular=req.modular_prefilter, modulus=req.modulus)
    return IsoResponse(**find_isomorphism(g1, g2, cfg).to_json_dict())
