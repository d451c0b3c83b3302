"""FastAPI front end around the verification registry.

All numeric payloads are decimal strings, so responses are reproducible
byte-for-byte (modulo elapsed_ms) and survive JSON round trips without
binary-float drift.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from mpmath import mp

from ..apery import pc_polynomial
from ..errors import (AccuracyError, DomainError, InternalConsistencyError,
                      KoecherError, UnsupportedCaseError)
from ..registry import REGISTRY, context_for, run_bench, run_verify
from ..sequences import parse_sequence_spec, zeta_z
from ..transform import TransformInstance, expand_coefficients
from .models import (BenchRequest, BenchResponse, ExpandRequest,
                     ExpandResponse, ExpandRow, IdentityInfo, ParamInfo,
                     ReportModel, TableRequest, TableResponse, TableRow,
                     VerifyRequest, VerifyResponse)

app = FastAPI(
    title="koecher",
    description="High-precision verification of Markov-Apery type zeta "
                "identities via generalized series acceleration",
    version="0.1.0",
)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.get("/identities", response_model=list[IdentityInfo])
def identities() -> list[IdentityInfo]:
    out = []
    for entry in REGISTRY.values():
        params = [ParamInfo(name=name, kind=spec.kind, default=_fmt(spec.default),
                            minimum=None if spec.minimum is None else _fmt(spec.minimum),
                            maximum=None if spec.maximum is None else _fmt(spec.maximum),
                            help=spec.help)
                  for name, spec in entry.params.items()]
        out.append(IdentityInfo(identity_id=entry.identity_id,
                                description=entry.description, parameters=params))
    return out


@app.post("/verify", response_model=VerifyResponse,
          response_model_exclude_none=True)
def verify(req: VerifyRequest):
    try:
        report = run_verify(req.identity_id, req.params, req.digits, req.max_terms)
    except AccuracyError as exc:
        return VerifyResponse(status="accuracy-error", detail=str(exc))
    except (DomainError, UnsupportedCaseError) as exc:
        return JSONResponse(status_code=400, content={"detail": str(exc)})
    model = ReportModel(**report.as_dict())
    return VerifyResponse(status="pass" if report.passed else "fail", report=model)


@app.post("/expand", response_model=ExpandResponse)
def expand(req: ExpandRequest):
    try:
        seq = parse_sequence_spec(req.sequence)
        alpha = Fraction(req.alpha)
        ctx = context_for(req.digits, req.max_terms)
        inst = TransformInstance(seq, alpha, Fraction(0))
        coefs = expand_coefficients(inst, req.order, ctx)
        rows = []
        with ctx.workprec():
            for m, coef in enumerate(coefs):
                s = Fraction(m) + alpha + 1
                ref = zeta_z(seq, s, ctx)
                rows.append(ExpandRow(
                    m=m,
                    coefficient=mp.nstr(coef.value, req.digits, strip_zeros=False),
                    reference=mp.nstr(ref.value, req.digits, strip_zeros=False),
                    abs_diff=mp.nstr(abs(coef.value - ref.value), 6),
                ))
        return ExpandResponse(sequence=req.sequence, alpha=req.alpha, rows=rows)
    except AccuracyError as exc:
        return JSONResponse(status_code=400, content={"detail": f"accuracy: {exc}"})
    except (DomainError, UnsupportedCaseError, ValueError) as exc:
        return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.post("/table", response_model=TableResponse)
def table(req: TableRequest):
    try:
        rows = []
        for c in range(req.cmax + 1):
            poly = pc_polynomial(c)
            audit = poly.conjecture_audit()
            rows.append(TableRow(
                c=c,
                coefficients=[str(a) for a in poly.coefficients],
                degree=audit["degree"],
                leading=str(audit["leading"]),
                constant=str(audit["constant"]),
                confirmed=audit["confirmed"],
            ))
        return TableResponse(rows=rows, all_confirmed=all(r.confirmed for r in rows))
    except InternalConsistencyError as exc:
        return JSONResponse(status_code=500,
                            content={"detail": str(exc), "error": "internal-consistency"})
    except DomainError as exc:
        return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.post("/bench", response_model=BenchResponse, response_model_exclude_none=False)
def bench(req: BenchRequest):
    try:
        record = run_bench(req.identity_id, req.digits, req.max_terms)
    except (DomainError, UnsupportedCaseError) as exc:
        return JSONResponse(status_code=400, content={"detail": str(exc)})
    except KoecherError as exc:
        return JSONResponse(status_code=500, content={"detail": str(exc)})
    return BenchResponse(**record)
