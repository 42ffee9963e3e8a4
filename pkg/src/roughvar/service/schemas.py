"""Pydantic request/response models for the HTTP surface.

Exact rationals travel as "p/q" strings (plain integer string when the
denominator is 1); float mirrors sit in separate fields.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class VarianceRequest(BaseModel):
    X: int = Field(ge=1)
    H: int = Field(ge=1)
    y: int = Field(ge=2)
    workers: int | None = Field(default=None, ge=1, le=64)


class VarianceResponse(BaseModel):
    X: int
    H: int
    y: int
    S1: int
    S2: int
    variance_exact: str
    variance_float: float
    mertens_exact: str
    mertens_float: float


class MainTermRequest(BaseModel):
    H: int = Field(ge=1)
    y: int = Field(ge=2)
    method: str = Field(default="auto", pattern="^(auto|direct|correlation)$")


class MainTermResponse(BaseModel):
    H: int
    y: int
    method: str
    value_exact: str
    value_float: float


class VqRequest(BaseModel):
    q: int = Field(ge=1)
    H: int = Field(ge=1)


class VqResponse(BaseModel):
    q: int
    H: int
    closed_form_exact: str
    brute_force_exact: str
    agree: bool
    value_float: float


class FriableRequest(BaseModel):
    x: int = Field(ge=0)
    y: int = Field(ge=1)


class FriableResponse(BaseModel):
    x: int
    y: int
    count: int
    count_squarefree: int
    count_2omega: int
    saddle_estimate: float | None = None
    estimate_ratio: float | None = None


class SaddleRequest(BaseModel):
    x: float = Field(ge=2)
    y: int = Field(ge=2)


class SaddleResponse(BaseModel):
    x: float
    y: int
    alpha: float
    u: float
    xi: float | None
    sigma2: float
    zeta_partial_alpha: float
    shift_gap: float | None


class ContourRequest(BaseModel):
    x: float = Field(ge=1)
    y: int = Field(ge=3)
    c: float = 0.75
    tol: float = Field(default=1e-3, gt=0)


class ContourResponse(BaseModel):
    x: float
    y: int
    c: float
    tolerance: float
    integral: float
    exact_reference: float | None
    abs_error: float | None


class ConvergeRequest(BaseModel):
    H: int = Field(ge=16)
    y: int = Field(ge=3)
    X_list: list[int] = Field(min_length=1, max_length=16)
    epsilon: float = 0.1
    delta: float = 0.1
    force: bool = False
    workers: int | None = Field(default=None, ge=1, le=64)


class ConvergeRow(BaseModel):
    X: int
    H: int
    y: int
    variance_exact: str
    main_term_exact: str
    ratio: float
    stronger_ok: bool
    sieve_ok: bool
    a: float
    u: float


class ConvergeResponse(BaseModel):
    rows: list[ConvergeRow]


class RegimePair(BaseModel):
    H: int = Field(ge=16)
    y: int = Field(ge=3)


class RegimesRequest(BaseModel):
    pairs: list[RegimePair] = Field(min_length=1, max_length=64)


class RegimeRow(BaseModel):
    H: int
    y: int
    u: float
    a: float
    regime: str
    main_term_exact: str
    main_term_float: float
    predicted: float
    ratio: float
    psi: int
    mertens_float: float
    alpha: float | None
    one_minus_a: float


class RegimesResponse(BaseModel):
    rows: list[RegimeRow]


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
