"""HTTP service exposing the quantifier, threshold, scan and verification
operations.

The endpoint bodies are plain functions over the pydantic models; the
command-line client calls them in-process, so running a server is never
required for local use.  Domain errors map to structured 422 responses
with a machine-readable ``code``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .errors import (InvalidConfigError, TruncationInadequateError,
                     UndefinedQuantifierError)
from .quantifiers import classify, thresholds
from .scan import label_point, run_scan
from .schemas import (HealthResponse, PointRequest, QuantifyResponse,
                      ScanRequest, ScanResponse, ThresholdRequest,
                      ThresholdResponse, ThresholdValue, VerifyRequest,
                      VerifyResponse, VerifyRow)
from .seeds import SeedFamily, output_moments
from .verify import verify_point


def quantify_point(req: PointRequest) -> QuantifyResponse:
    """Quantifier values, flags and label for a single configuration.

    Raises UndefinedQuantifierError when both output beams are empty.
    """
    cfg = req.to_config()
    rep = classify(cfg)
    moments = output_moments(cfg)
    coherent = cfg.family is SeedFamily.COHERENT
    return QuantifyResponse(
        family=req.family, s_a=req.s_a, s_b=req.s_b, n_pdc=req.n_pdc,
        phase_r=req.phase_r if coherent else None,
        mean_a=moments.mean_a, mean_b=moments.mean_b,
        mean_sum=moments.mean_sum, var_diff=moments.var_diff,
        p_ssn=rep.p_ssn, p_lee=rep.p_lee, p_ent=rep.p_ent,
        d_minus=rep.d_minus, is_ssn=rep.is_ssn,
        is_lee_nonclassical=rep.is_lee_nonclassical,
        is_entangled=rep.is_entangled, label=label_point(rep))


def threshold_point(req: ThresholdRequest) -> ThresholdResponse:
    """Gain thresholds above which each quantifier turns positive."""
    seed_a, seed_b, phi = req.to_seeds()
    report = thresholds(seed_a, seed_b, phi=phi)
    coherent = SeedFamily(req.family) is SeedFamily.COHERENT
    pack = lambda t: (None if t is None
                      else ThresholdValue(value=t.value, always=t.always))
    return ThresholdResponse(
        family=req.family, s_a=req.s_a, s_b=req.s_b,
        phase_r=req.phase_r if coherent else None,
        n_ssn=pack(report.n_ssn), n_lee=pack(report.n_lee),
        n_ent=pack(report.n_ent))


def scan_region(req: ScanRequest) -> ScanResponse:
    return ScanResponse.from_result(run_scan(req.to_spec()))


def verify_config(req: VerifyRequest) -> VerifyResponse:
    report = verify_point(req.to_config(), dim=req.dim,
                          tail_bound=req.tail_bound, auto_dim=req.auto_dim)
    return VerifyResponse(
        family=req.family, s_a=report.s_a, s_b=report.s_b,
        n_pdc=report.n_gain, phase_r=report.phase_r,
        dim_used=report.dim_used, tail_mass=report.tail_mass,
        passed=report.passed, max_abs_diff=report.max_abs_diff,
        rows=[VerifyRow(quantity=r.quantity, closed=r.closed,
                        oracle=r.oracle, abs_diff=r.abs_diff,
                        tolerance=r.tolerance, passed=r.passed)
              for r in report.rows])


def create_app() -> FastAPI:
    app = FastAPI(title="pdcquant",
                  description="Nonclassicality quantifiers for seeded "
                              "parametric pair sources",
                  version=__version__)

    def _handler(code: str, status: int = 422):
        async def handle(_: Request, exc: Exception):
            detail = {"code": code, "message": str(exc)}
            if isinstance(exc, TruncationInadequateError):
                detail["tail_mass"] = exc.tail_mass
                detail["dim"] = exc.dim
            return JSONResponse(status_code=status,
                                content={"detail": detail})
        return handle

    app.add_exception_handler(UndefinedQuantifierError,
                              _handler("undefined-quantifier"))
    app.add_exception_handler(InvalidConfigError,
                              _handler("invalid-config"))
    app.add_exception_handler(TruncationInadequateError,
                              _handler("truncation-inadequate"))
    app.add_exception_handler(ValueError, _handler("invalid-config"))

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/quantify", response_model=QuantifyResponse)
    async def quantify(req: PointRequest) -> QuantifyResponse:
        return quantify_point(req)

    @app.post("/threshold", response_model=ThresholdResponse)
    async def threshold(req: ThresholdRequest) -> ThresholdResponse:
        return threshold_point(req)

    @app.post("/scan", response_model=ScanResponse)
    async def scan(req: ScanRequest) -> ScanResponse:
        return scan_region(req)

    @app.post("/verify", response_model=VerifyResponse)
    async def verify(req: VerifyRequest) -> VerifyResponse:
        return verify_config(req)

    return app


app = create_app()
