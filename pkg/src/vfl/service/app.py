"""HTTP face of the force engine.

POST /v1/sweep            run a force sweep, one row per (d, kind, mode, regime)
POST /v1/compare          medium-aware vs conventional slab force, with ratios
POST /v1/materials/evaluate   sample a dispersion model on the imaginary axis
GET  /health              liveness + version
"""

from __future__ import annotations

import logging

from fastapi import FastAPI, HTTPException

from .. import __version__
from . import models, runner

log = logging.getLogger("vfl.service")


def create_app() -> FastAPI:
    app = FastAPI(title="vfl", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/sweep", response_model=models.SweepResponse)
    def sweep(req: models.SweepRequest) -> models.SweepResponse:
        try:
            return runner.execute_sweep(req)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/v1/compare", response_model=models.CompareResponse)
    def compare(req: models.CompareRequest) -> models.CompareResponse:
        try:
            return runner.execute_compare(req)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/v1/materials/evaluate", response_model=models.MaterialEvalResponse)
    def materials_evaluate(req: models.MaterialEvalRequest) -> models.MaterialEvalResponse:
        return runner.evaluate_material(req)

    return app


app = create_app()
