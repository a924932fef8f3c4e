"""FastAPI application wrapping the command layer.

Every endpoint is a stateless computation: it validates the request, runs the
corresponding command, and returns the rendered report plus structured fields
and the process exit code a client should adopt.  Invalid inputs map to HTTP
400 with ``{"detail": {"exit_code": 2, "error": ...}}``.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..commands import (
    CommandError,
    cmd_bayes,
    cmd_classes,
    cmd_compare,
    cmd_conditional,
    cmd_laws,
)
from . import schemas


def _bad_request(err: CommandError) -> HTTPException:
    return HTTPException(status_code=400, detail={"exit_code": 2, "error": str(err)})


def create_app() -> FastAPI:
    """Build the HTTP application wrapping the command layer.

    Command input errors surface as 400 responses whose detail carries the
    CLI exit code alongside the message.
    """
    app = FastAPI(
        title="itcat",
        description=(
            "Verification service for categories of information transformers: "
            "law suites, informativeness comparison, conditioning, decision "
            "analysis, and class enumeration."
        ),
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/laws", response_model=schemas.LawsResponse)
    def laws(req: schemas.LawsRequest) -> schemas.LawsResponse:
        try:
            result = cmd_laws(req.category, req.max_card, req.samples, req.seed, req.machine)
        except CommandError as err:
            raise _bad_request(err) from None
        return schemas.LawsResponse(
            exit_code=result.exit_code,
            report=result.report,
            category=result.data["category"],
            overall_pass=result.data["overall_pass"],
            results=[schemas.LawResult(**r) for r in result.data["results"]],
        )

    @app.post("/compare", response_model=schemas.CompareResponse)
    def compare(req: schemas.CompareRequest) -> schemas.CompareResponse:
        try:
            result = cmd_compare(req.file_text, req.a, req.b, req.accuracy, req.machine)
        except CommandError as err:
            raise _bad_request(err) from None
        return schemas.CompareResponse(
            exit_code=result.exit_code,
            report=result.report,
            verdict=result.data["verdict"],
            forward=result.data["forward"],
            backward=result.data["backward"],
        )

    @app.post("/conditional", response_model=schemas.ConditionalResponse)
    def conditional(req: schemas.ConditionalRequest) -> schemas.ConditionalResponse:
        try:
            result = cmd_conditional(req.file_text, req.joint, req.wrt, req.machine)
        except CommandError as err:
            raise _bad_request(err) from None
        return schemas.ConditionalResponse(
            exit_code=result.exit_code,
            report=result.report,
            rows=result.data["rows"],
        )

    @app.post("/bayes", response_model=schemas.BayesResponse)
    def bayes(req: schemas.BayesRequest) -> schemas.BayesResponse:
        try:
            result = cmd_bayes(
                req.file_text, req.prior, req.channel, req.utility, req.machine
            )
        except CommandError as err:
            raise _bad_request(err) from None
        return schemas.BayesResponse(
            exit_code=result.exit_code,
            report=result.report,
            value=result.data["value"],
            equal=result.data["equal"],
            pointwise_equal=result.data["pointwise_equal"],
            prior_opt=result.data["prior_opt"],
            posterior_opt=result.data["posterior_opt"],
        )

    @app.post("/classes", response_model=schemas.ClassesResponse)
    def classes(req: schemas.ClassesRequest) -> schemas.ClassesResponse:
        try:
            result = cmd_classes(req.category, req.card, req.machine)
        except CommandError as err:
            raise _bad_request(err) from None
        return schemas.ClassesResponse(
            exit_code=result.exit_code,
            report=result.report,
            count=result.data["count"],
            classes=result.data["classes"],
            zero=result.data["zero"],
            one=result.data["one"],
        )

    return app
