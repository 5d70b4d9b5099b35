"""Pydantic request/response models for the HTTP service."""

from typing import Optional

from pydantic import BaseModel, Field

METHOD_PATTERN = "^(rs|aggvar|periodogram|whittle|wavelet|all)$"


class HealthResponse(BaseModel):
    status: str
    version: str


class GenerateRequest(BaseModel):
    hurst: float = Field(gt=0.0, lt=1.0)
    length: int = Field(ge=2, le=1 << 20)
    variance: float = Field(default=1.0, gt=0.0)
    seed: int = Field(default=0, ge=0)
    count: int = Field(default=1, ge=1, le=1000)


class GenerateResponse(BaseModel):
    series: list[list[float]]
    seeds: list[int]


class EstimateRequest(BaseModel):
    samples: list[float] = Field(min_length=1)
    methods: list[str] = Field(default=["all"], min_length=1)


class EstimateResult(BaseModel):
    method: str
    h_hat: Optional[float] = None
    flags: list[str] = []
    diagnostics: Optional[dict] = None
    error: Optional[str] = None


class EstimateResponse(BaseModel):
    estimates: list[EstimateResult]


class AutocorrelationRequest(BaseModel):
    hurst: float = Field(gt=0.0, lt=1.0)
    max_lag: int = Field(ge=0, le=100_000)


class AutocorrelationResponse(BaseModel):
    lags: list[int]
    values: list[float]


class SpectralDensityRequest(BaseModel):
    hurst: float = Field(gt=0.0, lt=1.0)
    frequencies: list[float] = Field(min_length=1)


class SpectralDensityResponse(BaseModel):
    values: list[float]


class StudyRequest(BaseModel):
    h_grid: list[float] = Field(default=[0.5, 0.6, 0.7, 0.8, 0.9, 0.99], min_length=1)
    length_exponents: list[int] = Field(default=list(range(6, 17)), min_length=1)
    replicates: int = Field(default=100, ge=2, le=10_000)
    estimators: list[str] = Field(default=["all"], min_length=1)
    base_seed: int = Field(default=0, ge=0)
    jobs: Optional[int] = Field(default=None, ge=1)


class ConvergeRequest(BaseModel):
    series: list[list[float]] = Field(min_length=1)
    method: str = Field(pattern="^(rs|aggvar|periodogram|whittle|wavelet)$")
    tau0: int = Field(default=64, ge=64)
    tau_u: int = Field(default=200, ge=1)
    jobs: Optional[int] = Field(default=None, ge=1)


class SlideRequest(BaseModel):
    samples: list[float] = Field(min_length=1)
    method: str = Field(pattern="^(rs|aggvar|periodogram|whittle|wavelet)$")
    window: int = Field(ge=64)
    step: Optional[int] = Field(default=None, ge=1)


class IngestRequest(BaseModel):
    text: str
    bin_width: float = Field(default=0.01, gt=0.0)
    value: str = Field(default="packet_count", pattern="^(packet_count|byte_count)$")


class IngestResponse(BaseModel):
    samples: list[float]
    records: int
    duration: float
    length: int


class ErrorResponse(BaseModel):
    error: str
    detail: str
    line: Optional[int] = None
