"""FastAPI service wrapping the core package.

Every endpoint is a pure function of its payload: automata are passed by
value in the v1 text format, so the service holds no session state and can
be scaled or embedded in-process (the CLI drives it through an ASGI
transport without a running server).

Error contract: domain failures map to HTTP 400 with a structured detail
``{"code": ..., "message": ...}``; ``code`` is ``syntax`` for parse-level
problems and a lower-case failure kind otherwise.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import arith, lab, rna
from ..automata import (
    AutomatonError,
    classify,
    dump_automaton,
    dump_dot,
    load_automaton,
)
from ..numeric import (
    EncodingError,
    dual_of,
    encode_rational,
    format_rational,
    format_up_word,
    parse_rational,
)
from . import models


def _fail(code: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"code": code, "message": message})


def _load_rna(text: str) -> rna.RNA:
    """Automata arriving over the wire are treated as already saturated;
    producers in this package always write saturated languages."""
    try:
        aut = load_automaton(text)
    except (AutomatonError, ValueError) as exc:
        raise _fail("syntax", f"bad automaton: {exc}") from exc
    return rna.RNA(aut, aut.alphabet.base, aut.alphabet.arity, True)


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except EncodingError as exc:
        raise _fail("syntax", str(exc)) from exc


def _point(text: str) -> list[Fraction]:
    return [_rat(part) for part in text.split(",")]


def _dump(R: rna.RNA) -> str:
    return dump_automaton(R.automaton)


def create_app() -> FastAPI:
    app = FastAPI(
        title="realset",
        description="sets of real numbers as deterministic omega-automata",
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/compile", response_model=models.CompileResponse)
    def compile_endpoint(req: models.CompileRequest) -> models.CompileResponse:
        try:
            compiled = arith.compile_formula(req.formula, req.base)
        except arith.FormulaSyntaxError as exc:
            raise _fail("syntax", str(exc)) from exc
        except (rna.RnaError, AutomatonError, ValueError) as exc:
            raise _fail("domain", str(exc)) from exc
        verdict = classify(compiled.automaton).kind.value
        return models.CompileResponse(automaton=_dump(compiled), classification=verdict)

    @app.post("/member", response_model=models.BoolResponse)
    def member_endpoint(req: models.MemberRequest) -> models.BoolResponse:
        R = _load_rna(req.automaton)
        point = _point(req.point)
        try:
            return models.BoolResponse(result=rna.member(R, point))
        except rna.RnaError as exc:
            raise _fail("domain", str(exc)) from exc

    @app.post("/classify", response_model=models.ClassifyResponse)
    def classify_endpoint(req: models.AutomatonPayload) -> models.ClassifyResponse:
        R = _load_rna(req.automaton)
        try:
            verdict = classify(R.automaton)
        except AutomatonError as exc:
            raise _fail("domain", str(exc)) from exc
        witness = verdict.witness
        return models.ClassifyResponse(
            verdict=verdict.kind.value,
            witness_inner=list(witness.inner) if witness else None,
            witness_outer=list(witness.outer) if witness else None,
            witness_inner_accepting=witness.inner_accepting if witness else None,
        )

    @app.post("/boundary", response_model=models.AutomatonResponse)
    def boundary_endpoint(req: models.AutomatonPayload) -> models.AutomatonResponse:
        R = _load_rna(req.automaton)
        try:
            return models.AutomatonResponse(automaton=_dump(rna.boundary(R)))
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc

    @app.post("/intervals", response_model=models.IntervalsResponse)
    def intervals_endpoint(req: models.AutomatonPayload) -> models.IntervalsResponse:
        R = _load_rna(req.automaton)
        try:
            result = rna.interval_extract(R)
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        if isinstance(result, rna.NotIntervalFinite):
            return models.IntervalsResponse(not_interval_finite=True)
        return models.IntervalsResponse(
            not_interval_finite=False,
            intervals=rna.dump_interval_decomposition(result),
        )

    @app.post("/affine", response_model=models.AutomatonResponse)
    def affine_endpoint(req: models.AffineRequest) -> models.AutomatonResponse:
        R = _load_rna(req.automaton)
        try:
            out = rna.affine(R, _rat(req.a), _rat(req.b))
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.AutomatonResponse(automaton=_dump(out))

    @app.post("/clip", response_model=models.AutomatonResponse)
    def clip_endpoint(req: models.ClipRequest) -> models.AutomatonResponse:
        R = _load_rna(req.automaton)
        try:
            out = rna.clip(R, _rat(req.lo), _rat(req.hi))
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.AutomatonResponse(automaton=_dump(out))

    @app.post("/basepow", response_model=models.AutomatonResponse)
    def basepow_endpoint(req: models.BasePowerRequest) -> models.AutomatonResponse:
        R = _load_rna(req.automaton)
        try:
            if req.direction == "up":
                out = rna.base_power_up(R, req.power)
            else:
                out = rna.base_power_down(R, req.power)
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.AutomatonResponse(automaton=_dump(out))

    @app.post("/stability", response_model=models.BoolResponse)
    def stability_endpoint(req: models.StabilityRequest) -> models.BoolResponse:
        R = _load_rna(req.automaton)
        try:
            ok = rna.product_stability(R, _rat(req.factor), (_rat(req.lo), _rat(req.hi)))
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.BoolResponse(result=ok)

    @app.post("/sumstability", response_model=models.BoolResponse)
    def sumstability_endpoint(req: models.SumStabilityRequest) -> models.BoolResponse:
        R = _load_rna(req.automaton)
        try:
            ok = rna.sum_stability(R, _rat(req.offset), (_rat(req.lo), _rat(req.hi)))
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.BoolResponse(result=ok)

    @app.post("/stardelay", response_model=models.AutomatonResponse)
    def stardelay_endpoint(req: models.AutomatonPayload) -> models.AutomatonResponse:
        R = _load_rna(req.automaton)
        try:
            out = rna.star_delay(R)
        except rna.PreconditionFailedError as exc:
            raise _fail("precondition_failed", str(exc)) from exc
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.AutomatonResponse(automaton=_dump(out))

    @app.post("/pipeline", response_model=models.PipelineResponse)
    def pipeline_endpoint(req: models.PipelineRequest) -> models.PipelineResponse:
        R_r = _load_rna(req.automaton_r)
        R_s = _load_rna(req.automaton_s)
        try:
            report = rna.stability_pipeline(R_r, R_s)
        except rna.PreconditionFailedError as exc:
            raise _fail("precondition_failed", str(exc)) from exc
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.PipelineResponse(
            p=report.p,
            q=report.q,
            p2=report.p2,
            q2=report.q2,
            verified_r=report.verified_r,
            verified_s=report.verified_s,
            anchor=format_rational(report.anchor),
            anchor_sequence=[format_rational(v) for v in report.anchor_sequence],
            s3=_dump(report.s3),
        )

    @app.post("/dualset", response_model=models.AutomatonResponse)
    def dualset_endpoint(req: models.DualSetRequest) -> models.AutomatonResponse:
        try:
            out = lab.dual_set(req.base)
        except (rna.RnaError, AutomatonError, ValueError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.AutomatonResponse(automaton=_dump(out))

    @app.post("/compare", response_model=models.CompareResponse)
    def compare_endpoint(req: models.CompareRequest) -> models.CompareResponse:
        R_r = _load_rna(req.automaton_r)
        R_s = _load_rna(req.automaton_s)
        try:
            report = lab.cross_base_compare(R_r, R_s, req.samples, req.seed)
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.CompareResponse(
            base_r=report.base_r,
            base_s=report.base_s,
            sample_count=report.sample_count,
            agreements=report.agreements,
            first_disagreement=(
                format_rational(report.first_disagreement)
                if report.first_disagreement is not None
                else None
            ),
            classify_r=report.classify_r.value,
            classify_s=report.classify_s.value,
        )

    @app.post("/oscillate", response_model=models.OscillateResponse)
    def oscillate_endpoint(req: models.OscillateRequest) -> models.OscillateResponse:
        R = _load_rna(req.automaton)
        try:
            witness = lab.oscillation_witness(R, req.depth, req.granularity)
        except (rna.RnaError, AutomatonError) as exc:
            raise _fail("domain", str(exc)) from exc
        if witness is None:
            return models.OscillateResponse(found=False)
        return models.OscillateResponse(
            found=True,
            points=[
                models.OscillatePoint(
                    value=format_rational(x), epsilon=format_rational(eps)
                )
                for x, eps in witness.points
            ],
        )

    @app.post("/suite", response_model=models.SuiteResponse)
    def suite_endpoint(req: models.SuiteRequest) -> models.SuiteResponse:
        try:
            report = lab.run_cobham_suite(req.base_r, req.base_s, req.seed)
        except (rna.RnaError, AutomatonError, ValueError) as exc:
            raise _fail("domain", str(exc)) from exc
        return models.SuiteResponse(ok=report.ok, report=report.text(), csv=report.csv())

    @app.post("/dot", response_model=models.DotResponse)
    def dot_endpoint(req: models.AutomatonPayload) -> models.DotResponse:
        R = _load_rna(req.automaton)
        return models.DotResponse(dot=dump_dot(R.automaton))

    @app.post("/encode", response_model=models.EncodeResponse)
    def encode_endpoint(req: models.EncodeRequest) -> models.EncodeResponse:
        value = _rat(req.value)
        word = encode_rational(value, req.base)
        dual = dual_of(word)
        return models.EncodeResponse(
            word=format_up_word(word),
            dual=format_up_word(dual) if dual is not None else None,
        )

    return app


app = create_app()
