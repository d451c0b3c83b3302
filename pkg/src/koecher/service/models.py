"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class VerifyRequest(BaseModel):
    identity_id: str
    params: dict[str, str] = Field(default_factory=dict)
    digits: int = Field(30, ge=4, le=200)
    max_terms: int = Field(10**6, ge=100, le=10**8)


class ReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    identity_id: str
    parameters: dict[str, str]
    lhs: str
    rhs: str
    abs_diff: str
    tolerance: str
    terms_used: int
    provenance: str
    elapsed_ms: int
    passed: bool = Field(alias="pass", serialization_alias="pass")


class VerifyResponse(BaseModel):
    status: Literal["pass", "fail", "accuracy-error"]
    report: Optional[ReportModel] = None
    detail: Optional[str] = None


class ParamInfo(BaseModel):
    name: str
    kind: Literal["int", "number"]
    default: str
    minimum: Optional[str] = None
    maximum: Optional[str] = None
    help: str = ""


class IdentityInfo(BaseModel):
    identity_id: str
    description: str
    parameters: list[ParamInfo]


class ExpandRequest(BaseModel):
    sequence: str
    alpha: str = "0.5"
    order: int = Field(2, ge=0, le=10)
    digits: int = Field(30, ge=4, le=200)
    max_terms: int = Field(10**6, ge=100, le=10**8)


class ExpandRow(BaseModel):
    m: int
    coefficient: str
    reference: str
    abs_diff: str


class ExpandResponse(BaseModel):
    sequence: str
    alpha: str
    rows: list[ExpandRow]


class TableRequest(BaseModel):
    cmax: int = Field(5, ge=0, le=12)


class TableRow(BaseModel):
    c: int
    coefficients: list[str]  # low-to-high, exact decimal integers
    degree: int
    leading: str
    constant: str
    confirmed: bool


class TableResponse(BaseModel):
    rows: list[TableRow]
    all_confirmed: bool


class BenchRequest(BaseModel):
    identity_id: str
    digits: int = Field(30, ge=4, le=200)
    max_terms: int = Field(10**6, ge=100, le=10**8)


class BenchResponse(BaseModel):
    identity_id: str
    digits: int
    accelerated_terms: int
    accelerated_ms: int
    accelerated_value: str
    direct_reference: str
    direct_terms_estimate: str
    direct_feasible: bool
    direct_terms: Optional[int] = None
    direct_ms: Optional[int] = None
