"""Request and response models for the verification service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class LawsRequest(BaseModel):
    category: str
    max_card: int = 3
    samples: int = 64
    seed: int = 0
    machine: bool = False


class LawResult(BaseModel):
    name: str
    passed: bool
    expected_pass: bool
    ok: bool
    instances: int
    strategy: str
    counterexample: str | None = None


class LawsResponse(BaseModel):
    exit_code: int
    report: str
    category: str
    overall_pass: bool
    results: list[LawResult]


class CompareRequest(BaseModel):
    file_text: str
    a: str
    b: str
    accuracy: str = "equality"
    machine: bool = False


class CompareResponse(BaseModel):
    exit_code: int
    report: str
    verdict: str
    forward: str
    backward: str


class ConditionalRequest(BaseModel):
    file_text: str
    joint: str
    wrt: str = "first"
    machine: bool = False


class ConditionalResponse(BaseModel):
    exit_code: int
    report: str
    rows: list[str]


class BayesRequest(BaseModel):
    file_text: str
    prior: str
    channel: str
    utility: str
    machine: bool = False


class BayesResponse(BaseModel):
    exit_code: int
    report: str
    value: str
    equal: bool
    pointwise_equal: bool
    prior_opt: list[str]
    posterior_opt: list[str]


class ClassesRequest(BaseModel):
    category: str = "set"
    card: int = 3
    machine: bool = False


class ClassesResponse(BaseModel):
    exit_code: int
    report: str
    count: int
    classes: list[str]
    zero: int
    one: int


class ErrorDetail(BaseModel):
    exit_code: int = Field(default=2)
    error: str
