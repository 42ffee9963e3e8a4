"""FastAPI application wrapping the core package.

Run with:  uvicorn roughvar.service.app:app
Every computational error maps to HTTP 400 with a machine-readable code.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, report
from ..errors import RoughVarError
from . import schemas

app = FastAPI(
    title="roughvar",
    version=__version__,
    description="exact and asymptotic variance of rough numbers in short intervals",
)


@app.exception_handler(RoughVarError)
async def roughvar_error_handler(_: Request, exc: RoughVarError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": {"code": exc.code, "message": str(exc)}},
    )


def _clean(row: dict) -> dict:
    return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in row.items()}


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/variance", response_model=schemas.VarianceResponse)
def variance(req: schemas.VarianceRequest):
    return _clean(report.variance_row(req.X, req.H, req.y, workers=req.workers))


@app.post("/mainterm", response_model=schemas.MainTermResponse)
def mainterm(req: schemas.MainTermRequest):
    return _clean(report.mainterm_row(req.H, req.y, method=req.method))


@app.post("/vq", response_model=schemas.VqResponse)
def vq(req: schemas.VqRequest):
    return _clean(report.vq_row(req.q, req.H))


@app.post("/friable", response_model=schemas.FriableResponse)
def friable(req: schemas.FriableRequest):
    return _clean(report.friable_row(req.x, req.y))


@app.post("/saddle", response_model=schemas.SaddleResponse)
def saddle(req: schemas.SaddleRequest):
    return _clean(report.saddle_row(req.x, req.y))


@app.post("/contour", response_model=schemas.ContourResponse)
def contour(req: schemas.ContourRequest):
    return _clean(report.contour_row(req.x, req.y, req.c, tol=req.tol))


@app.post("/converge", response_model=schemas.ConvergeResponse)
def converge(req: schemas.ConvergeRequest):
    rows = report.converge_rows(
        req.H, req.y, req.X_list, epsilon=req.epsilon, delta=req.delta,
        force=req.force, workers=req.workers,
    )
    return {"rows": [_clean(r) for r in rows]}


@app.post("/regimes", response_model=schemas.RegimesResponse)
def regimes(req: schemas.RegimesRequest):
    rows = report.regimes_rows([(p.H, p.y) for p in req.pairs])
    return {"rows": [_clean(r) for r in rows]}
