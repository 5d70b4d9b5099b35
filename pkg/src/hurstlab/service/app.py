"""FastAPI service wrapping the core library.

Endpoints mirror the CLI: synthesis, estimation, the Monte-Carlo study,
convergence and sliding-window tracks, and trace ingestion.  Domain errors
map to HTTP 400 with a machine-readable code; payload validation is
pydantic's usual 422.  Track and study responses reuse the library's
stable JSON formats byte for byte.
"""

import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .. import __version__
from ..convergence import ConvergenceConfig, WindowConfig, converge_mean, sliding_window, track_to_json
from ..core import exact_autocorrelation
from ..errors import HurstLabError, InvalidArgumentError
from ..estimators import EstimatorId, estimate, fgn_spectral_density
from ..ingestion import BinningSpec, bin_trace, parse_trace
from ..study import StudyConfig, run_study
from ..synthesis import FgnSpec, derive_seed, generate_batch
from . import schemas

__all__ = ["create_app", "app"]


def _as_methods(values) -> list:
    if "all" in values:
        return list(EstimatorId)
    try:
        return [EstimatorId(v) for v in values]
    except ValueError as exc:
        raise InvalidArgumentError(f"unknown estimator in {list(values)!r}") from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="hurstlab",
        version=__version__,
        description="Fractal time-series toolkit: fGn synthesis, Hurst estimation, accuracy studies.",
    )

    @app.exception_handler(HurstLabError)
    async def domain_error_handler(request: Request, exc: HurstLabError):
        payload = {"error": exc.code, "detail": str(exc)}
        line = getattr(exc, "line", None)
        if line is not None:
            payload["line"] = line
        return JSONResponse(status_code=400, content=payload)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/fgn", response_model=schemas.GenerateResponse)
    def fgn(req: schemas.GenerateRequest):
        spec = FgnSpec(req.hurst, req.length, req.variance, 0)
        batch = generate_batch(spec, req.count, req.seed)
        return schemas.GenerateResponse(
            series=[s.samples.tolist() for s in batch],
            seeds=[derive_seed(req.seed, i) for i in range(req.count)],
        )

    @app.post("/estimates", response_model=schemas.EstimateResponse)
    def estimates(req: schemas.EstimateRequest):
        methods = _as_methods(req.methods)
        results = []
        for method in methods:
            try:
                est = estimate(method, req.samples)
            except HurstLabError as exc:
                results.append(
                    schemas.EstimateResult(method=method.value, error=exc.code)
                )
                continue
            results.append(
                schemas.EstimateResult(
                    method=method.value,
                    h_hat=est.h_hat,
                    flags=est.flags,
                    diagnostics={
                        k: (list(v) if isinstance(v, tuple) else v)
                        for k, v in est.diagnostics.items()
                    },
                )
            )
        return schemas.EstimateResponse(estimates=results)

    @app.post("/autocorrelation", response_model=schemas.AutocorrelationResponse)
    def autocorrelation(req: schemas.AutocorrelationRequest):
        lags = list(range(req.max_lag + 1))
        return schemas.AutocorrelationResponse(
            lags=lags, values=[exact_autocorrelation(req.hurst, k) for k in lags]
        )

    @app.post("/spectral-density", response_model=schemas.SpectralDensityResponse)
    def spectral_density(req: schemas.SpectralDensityRequest):
        return schemas.SpectralDensityResponse(
            values=[float(fgn_spectral_density(req.hurst, f)) for f in req.frequencies]
        )

    @app.post("/study")
    def study(req: schemas.StudyRequest):
        config = StudyConfig(
            h_grid=tuple(req.h_grid),
            length_exponents=tuple(req.length_exponents),
            replicates=req.replicates,
            estimators=tuple(_as_methods(req.estimators)),
            base_seed=req.base_seed,
        )
        report = run_study(config, jobs=req.jobs)
        return Response(content=report.to_json(), media_type="application/json")

    @app.post("/converge")
    def converge_endpoint(req: schemas.ConvergeRequest):
        cfg = ConvergenceConfig(req.method, req.tau0, req.tau_u)
        track = converge_mean(req.series, cfg, jobs=req.jobs)
        return Response(content=track_to_json(track), media_type="application/json")

    @app.post("/slide")
    def slide(req: schemas.SlideRequest):
        cfg = WindowConfig(req.method, req.window, req.step if req.step is not None else req.window)
        track = sliding_window(req.samples, cfg)
        return Response(content=track_to_json(track), media_type="application/json")

    @app.post("/ingest", response_model=schemas.IngestResponse)
    def ingest(req: schemas.IngestRequest):
        records = parse_trace(req.text)
        series = bin_trace(records, BinningSpec(req.bin_width, req.value))
        duration = records[-1].timestamp - records[0].timestamp
        return schemas.IngestResponse(
            samples=series.samples.tolist(),
            records=len(records),
            duration=duration,
            length=len(series),
        )

    return app


app = create_app()
