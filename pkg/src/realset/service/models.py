"""Request and response schemas for the realset service.

Automata travel by value in the v1 text format; rationals as ``p/q``
strings.  The service is stateless.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class AutomatonPayload(BaseModel):
    automaton: str = Field(description="automaton in the v1 text format")


class AutomatonResponse(BaseModel):
    automaton: str


class CompileRequest(BaseModel):
    formula: str
    base: int = Field(ge=2)


class CompileResponse(BaseModel):
    automaton: str
    classification: str


class MemberRequest(AutomatonPayload):
    point: str = Field(description="rational p/q, comma-separated per track")


class BoolResponse(BaseModel):
    result: bool


class ClassifyResponse(BaseModel):
    verdict: str
    witness_inner: Optional[list[int]] = None
    witness_outer: Optional[list[int]] = None
    witness_inner_accepting: Optional[bool] = None


class IntervalsResponse(BaseModel):
    not_interval_finite: bool
    intervals: Optional[str] = None


class AffineRequest(AutomatonPayload):
    a: str
    b: str


class ClipRequest(AutomatonPayload):
    lo: str
    hi: str


class BasePowerRequest(AutomatonPayload):
    direction: str = Field(pattern="^(up|down)$")
    power: int = Field(ge=1)


class StabilityRequest(AutomatonPayload):
    factor: str
    lo: str
    hi: str


class SumStabilityRequest(AutomatonPayload):
    offset: str
    lo: str
    hi: str


class PipelineRequest(BaseModel):
    automaton_r: str
    automaton_s: str


class PipelineResponse(BaseModel):
    p: int
    q: int
    p2: int
    q2: int
    verified_r: bool
    verified_s: bool
    anchor: str
    anchor_sequence: list[str]
    s3: str


class DualSetRequest(BaseModel):
    base: int = Field(ge=2)


class CompareRequest(BaseModel):
    automaton_r: str
    automaton_s: str
    samples: int = Field(ge=1)
    seed: int


class CompareResponse(BaseModel):
    base_r: int
    base_s: int
    sample_count: int
    agreements: int
    first_disagreement: Optional[str] = None
    classify_r: str
    classify_s: str


class OscillateRequest(AutomatonPayload):
    depth: int = Field(ge=1)
    granularity: int = Field(default=2, ge=1)


class OscillatePoint(BaseModel):
    value: str
    epsilon: str


class OscillateResponse(BaseModel):
    found: bool
    points: list[OscillatePoint] = []


class SuiteRequest(BaseModel):
    base_r: int = Field(ge=2)
    base_s: int = Field(ge=2)
    seed: int


class SuiteResponse(BaseModel):
    ok: bool
    report: str
    csv: str


class DotResponse(BaseModel):
    dot: str


class EncodeRequest(BaseModel):
    value: str
    base: int = Field(ge=2)


class EncodeResponse(BaseModel):
    word: str
    dual: Optional[str] = None
