"""HTTP service exposing the decision engine.

Thin adapter layer: pydantic models validate the wire format (integers may
arrive as decimal strings, see jsonio), the core package does the work, and
responses are encoded with the same wide-integer convention.  Domain errors
map to HTTP 400 with a structured body; malformed requests get FastAPI's
usual 422.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel, BeforeValidator, model_validator

from . import __version__, jsonio, scan as scan_mod
from .decide import DecisionInput, decide
from .errors import IncompatibleConstraints, InvalidLattice, K3IsoError
from .lattice import PolarizedLattice, from_gram
from .mukai_model import verify_nu
from .qsolve import ConstraintSet, represent_detail

IntLike = Annotated[int, BeforeValidator(jsonio.as_int)]


class LatticeBody(BaseModel):
    n_half: Optional[IntLike] = None
    gamma: Optional[IntLike] = None
    delta: Optional[IntLike] = None
    mu: Optional[IntLike] = None
    gram: Optional[tuple[tuple[IntLike, IntLike], tuple[IntLike, IntLike]]] = None
    h: Optional[tuple[IntLike, IntLike]] = None

    @model_validator(mode="after")
    def _one_form(self) -> "LatticeBody":
        by_invariants = None not in (self.n_half, self.gamma, self.delta, self.mu)
        by_gram = self.gram is not None and self.h is not None
        if by_invariants == by_gram:
            raise ValueError(
                "give either (n_half, gamma, delta, mu) or (gram, h), not both"
            )
        return self

    def build(self) -> PolarizedLattice:
        if self.gram is not None:
            if self.h is None:
                raise InvalidLattice("gram form needs 'h'")
            return from_gram([list(r) for r in self.gram], tuple(self.h)).lattice
        return PolarizedLattice(self.n_half, self.gamma, self.delta, self.mu)


class DecideBody(BaseModel):
    r: IntLike
    s: IntLike
    d: IntLike = 1
    lattice: LatticeBody
    full: bool = False
    series: Optional[Literal["A", "B"]] = None


class ConstraintBody(BaseModel):
    var: Literal["x", "y", "coupled"]
    modulus: IntLike
    residue: IntLike = 0
    mu: Optional[IntLike] = None


class SolveFormBody(BaseModel):
    gamma: IntLike
    delta: IntLike
    m: IntLike
    constraints: tuple[ConstraintBody, ...] = ()


class VerifyModelBody(BaseModel):
    a: IntLike
    b: IntLike
    c: IntLike
    d1: IntLike = 1
    d2: IntLike = 1


class ScanBody(BaseModel):
    r_max: IntLike
    s_max: IntLike
    d_max: IntLike = 1
    max_gamma_delta: IntLike = 120
    max_n_half: Optional[IntLike] = None
    full: bool = False
    series: Optional[Literal["A", "B"]] = None
    format: Literal["csv", "json"] = "csv"
    jobs: IntLike = 1


def constraint_set(bodies: tuple[ConstraintBody, ...]) -> Optional[ConstraintSet]:
    if not bodies:
        return None
    x_moduli: list[int] = []
    y_moduli: list[int] = []
    coupled: Optional[tuple[int, int]] = None
    for c in bodies:
        if c.residue != 0:
            raise IncompatibleConstraints(
                "only residue-0 (divisibility) congruences are supported"
            )
        if c.var == "coupled":
            if c.mu is None:
                raise IncompatibleConstraints("coupled congruence needs 'mu'")
            if coupled is not None:
                raise IncompatibleConstraints("at most one coupled congruence")
            coupled = (c.mu, c.modulus)
        elif c.mu is not None:
            raise IncompatibleConstraints("'mu' only applies to var='coupled'")
        elif c.var == "x":
            x_moduli.append(c.modulus)
        else:
            y_moduli.append(c.modulus)
    return ConstraintSet(tuple(x_moduli), tuple(y_moduli), coupled)


def _reply(payload: dict, status_code: int = 200) -> JSONResponse:
    return JSONResponse(content=jsonio.encode(payload), status_code=status_code)


def create_app() -> FastAPI:
    app = FastAPI(title="k3iso", version=__version__)

    @app.exception_handler(K3IsoError)
    async def _domain_error(_, exc: K3IsoError) -> JSONResponse:
        return _reply(
            {"error": {"type": type(exc).__name__, "detail": str(exc)}},
            status_code=400,
        )

    @app.get("/health")
    async def health() -> JSONResponse:
        return _reply({"status": "ok", "version": __version__})

    @app.post("/decide")
    async def decide_endpoint(body: DecideBody) -> JSONResponse:
        verdict = decide(
            DecisionInput(body.r, body.s, body.d, body.lattice.build(), body.full),
            series_filter=body.series,
        )
        return _reply(jsonio.verdict_to_json(verdict))

    @app.post("/solve-form")
    async def solve_form(body: SolveFormBody) -> JSONResponse:
        result = represent_detail(
            body.gamma, body.delta, body.m, constraint_set(body.constraints)
        )
        return _reply(
            {
                "solvable": result.witness is not None,
                "witness": list(result.witness) if result.witness else None,
                "status": result.status,
                "stats": result.stats,
            }
        )

    @app.post("/verify-model")
    async def verify_model(body: VerifyModelBody) -> JSONResponse:
        report = verify_nu(body.a, body.b, body.c, body.d1, body.d2)
        return _reply(
            {
                "nu_ok": report.ok,
                "detail": report.detail,
                "gram": report.gram,
                "gram_1": report.gram_1,
                "h_sq": report.h_sq,
                "index": report.index,
                "index_1": report.index_1,
            }
        )

    @app.post("/scan")
    async def scan_endpoint(body: ScanBody) -> StreamingResponse:
        spec = scan_mod.ScanSpec(
            r_max=body.r_max,
            s_max=body.s_max,
            d_max=body.d_max,
            max_gamma_delta=body.max_gamma_delta,
            max_n_half=body.max_n_half,
            full_picard_general=body.full,
            series=body.series,
            jobs=body.jobs,
        )
        media = "text/csv" if body.format == "csv" else "application/x-ndjson"
        return StreamingResponse(scan_mod.render(spec, body.format), media_type=media)

    return app
