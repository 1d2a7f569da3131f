"""FastAPI service wrapping the decision engine.

Endpoints mirror the CLI surface: /check, /transmissions, /solve-dio,
/certify and /enumerate (NDJSON stream).  Caps and worker counts come from
:class:`RunConfig`; build a custom app with ``build_app(config)``.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Iterator, Literal

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse
from pydantic import BaseModel

from . import __version__
from .catalog import catalog_rows, iter_double_starlike_specs, iter_starlike_specs
from .characterize import CaseTarget, check_tree, scan_double_cases, scan_starlike_cases
from .config import RunConfig
from .diophantine import BoxDioProblem, DivisorWitness, c_star, solve_bruteforce, solve_by_divisors
from .polycert import (
    CertifierInapplicable,
    FamilySpec,
    certificate_to_dict,
    certify_family,
    format_family_line,
    parse_family_line,
)
from .transmission import bfs_transmissions, is_ti_bruteforce
from .trees import StarlikeSpec, TreeSpec, build_tree, parse_spec
from .verdicts import Verdict, label_to_dict, verdict_to_dict


class LabelModel(BaseModel):
    side: str
    branch: int
    position: int
    name: str


class WitnessModel(BaseModel):
    label1: LabelModel
    label2: LabelModel
    transmission: int | None = None


class ReasonModel(BaseModel):
    kind: str
    side: str | None = None
    branch: int | None = None
    branch_i: int | None = None
    branch_j: int | None = None


class OracleModel(BaseModel):
    is_ti: bool
    agrees: bool
    witness: WitnessModel | None = None


class CaseScanModel(BaseModel):
    case: str
    value: int
    sum_bounds: tuple[int, int]
    diff_bounds: tuple[int, int]
    box: tuple[int, int]
    solvable: bool
    witness: dict[str, int] | None = None


class CheckRequest(BaseModel):
    spec: str
    oracle: bool = False
    explain: bool = False


class CheckResponse(BaseModel):
    spec: str
    n: int
    is_ti: bool
    reason: ReasonModel | None = None
    witness: WitnessModel | None = None
    oracle: OracleModel | None = None
    cases: list[CaseScanModel] | None = None


class TransmissionsRequest(BaseModel):
    spec: str


class TransmissionEntry(BaseModel):
    label: LabelModel
    transmission: int


class TransmissionsResponse(BaseModel):
    spec: str
    n: int
    entries: list[TransmissionEntry]


class SolveDioRequest(BaseModel):
    c1: int
    c2: int
    c3: int
    c4: int
    c5: int


class DivisorWitnessModel(BaseModel):
    p: int
    q: int
    x: int
    y: int


class SolveDioResponse(BaseModel):
    c1: int
    c2: int
    c3: int
    c4: int
    c5: int
    c_star: int
    divisor: DivisorWitnessModel | None = None
    bruteforce: tuple[int, int] | None = None
    agree: bool


class CertifyRequest(BaseModel):
    families: list[str]
    spot_check: int | None = None


class SpotFailure(BaseModel):
    t: int
    spec: str


class FamilyResult(BaseModel):
    family: str
    status: Literal["certified", "inapplicable"]
    certificate: dict[str, Any] | None = None
    reason: str | None = None
    failing_case: str | None = None
    spot_checked: int = 0
    spot_failures: list[SpotFailure] = []


class CertifyResponse(BaseModel):
    results: list[FamilyResult]
    all_ok: bool


class EnumerateRequest(BaseModel):
    type: Literal["starlike", "double"]
    max_order: int
    k: int
    m: int | None = None
    max_c: int | None = None
    verify: bool = False


def _witness_model(d: dict[str, Any] | None) -> WitnessModel | None:
    if d is None:
        return None
    return WitnessModel(
        label1=LabelModel(**d["label1"]),
        label2=LabelModel(**d["label2"]),
        transmission=d["transmission"],
    )


def _verdict_fields(verdict: Verdict) -> dict[str, Any]:
    d = verdict_to_dict(verdict)
    return {
        "is_ti": d["is_ti"],
        "reason": ReasonModel(**d["reason"]) if "reason" in d else None,
        "witness": _witness_model(d.get("witness")),
    }


def _case_scan_model(target: CaseTarget, found: DivisorWitness | None) -> CaseScanModel:
    return CaseScanModel(
        case=target.case_name(),
        value=target.value,
        sum_bounds=target.sum_bounds,
        diff_bounds=target.diff_bounds,
        box=(target.problem.c4, target.problem.c5),
        solvable=found is not None,
        witness=None if found is None else {"p": found.p, "q": found.q, "x": found.x, "y": found.y},
    )


def _parse_spec_or_400(text: str) -> TreeSpec:
    try:
        return parse_spec(text)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _certify_one(fam: FamilySpec, spot_check: int | None) -> FamilyResult:
    fields: dict[str, Any] = {"family": format_family_line(fam)}
    try:
        cert = certify_family(fam)
        fields.update(status="certified", certificate=certificate_to_dict(cert))
    except CertifierInapplicable as exc:
        fields.update(status="inapplicable", reason=exc.reason, failing_case=exc.case)
    if spot_check is not None:
        failures = []
        for t in range(spot_check + 1):
            spec = fam.instantiate(t)
            if not check_tree(spec).is_ti:
                failures.append(SpotFailure(t=t, spec=str(spec)))
        fields.update(spot_checked=spot_check + 1, spot_failures=failures)
    return FamilyResult(**fields)


def build_app(config: RunConfig | None = None) -> FastAPI:
    cfg = config or RunConfig.from_env()
    app = FastAPI(
        title="ti-trees",
        version=__version__,
        description="Exact TI decisions for starlike and double starlike trees.",
    )
    app.state.config = cfg

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/check", response_model=CheckResponse, response_model_exclude_none=True)
    def check(req: CheckRequest) -> CheckResponse:
        spec = _parse_spec_or_400(req.spec)
        verdict = check_tree(spec)
        fields = _verdict_fields(verdict)
        oracle = None
        if req.oracle:
            if spec.order > cfg.max_oracle_n:
                raise HTTPException(
                    status_code=400,
                    detail=f"order {spec.order} exceeds the oracle cap {cfg.max_oracle_n}",
                )
            oracle_verdict = is_ti_bruteforce(build_tree(spec))
            od = verdict_to_dict(oracle_verdict)
            oracle = OracleModel(
                is_ti=oracle_verdict.is_ti,
                agrees=oracle_verdict.is_ti == verdict.is_ti,
                witness=_witness_model(od.get("witness")),
            )
        cases = None
        if req.explain:
            try:
                scans = (
                    scan_starlike_cases(spec)
                    if isinstance(spec, StarlikeSpec)
                    else scan_double_cases(spec)
                )
                cases = [_case_scan_model(t, w) for t, w in scans]
            except ValueError:
                cases = []
        return CheckResponse(spec=str(spec), n=spec.order, oracle=oracle, cases=cases, **fields)

    @app.post("/transmissions", response_model=TransmissionsResponse)
    def transmissions(req: TransmissionsRequest) -> TransmissionsResponse:
        spec = _parse_spec_or_400(req.spec)
        if spec.order > cfg.max_oracle_n:
            raise HTTPException(
                status_code=400,
                detail=f"order {spec.order} exceeds the oracle cap {cfg.max_oracle_n}",
            )
        table = bfs_transmissions(build_tree(spec))
        entries = [
            TransmissionEntry(label=LabelModel(**label_to_dict(table.graph.label_of(i))), transmission=v)
            for i, v in enumerate(table.values)
        ]
        return TransmissionsResponse(spec=str(spec), n=spec.order, entries=entries)

    @app.post("/solve-dio", response_model=SolveDioResponse, response_model_exclude_none=True)
    def solve_dio(req: SolveDioRequest) -> SolveDioResponse:
        try:
            problem = BoxDioProblem(req.c1, req.c2, req.c3, req.c4, req.c5)
            brute = solve_bruteforce(problem, cap=cfg.max_box)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        witness = solve_by_divisors(problem)
        return SolveDioResponse(
            c1=req.c1,
            c2=req.c2,
            c3=req.c3,
            c4=req.c4,
            c5=req.c5,
            c_star=c_star(problem),
            divisor=None if witness is None else DivisorWitnessModel(**vars(witness)),
            bruteforce=brute,
            agree=(witness is None) == (brute is None),
        )

    @app.post("/certify", response_model=CertifyResponse, response_model_exclude_none=True)
    def certify(req: CertifyRequest) -> CertifyResponse:
        try:
            families = [parse_family_line(line) for line in req.families]
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        if cfg.jobs > 1 and len(families) > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(lambda f: _certify_one(f, req.spot_check), families))
        else:
            results = [_certify_one(f, req.spot_check) for f in families]
        all_ok = all(r.status == "certified" and not r.spot_failures for r in results)
        return CertifyResponse(results=results, all_ok=all_ok)

    @app.post("/enumerate")
    def enumerate_specs(req: EnumerateRequest) -> StreamingResponse:
        if req.type == "starlike":
            if req.k < 3:
                raise HTTPException(status_code=400, detail="starlike enumeration needs k >= 3")
            specs: Iterator[TreeSpec] = iter_starlike_specs(req.k, req.max_order)
        else:
            if req.m is None:
                raise HTTPException(status_code=400, detail="double enumeration needs both k and m")
            if req.k < 2 or req.m < 2:
                raise HTTPException(status_code=400, detail="double enumeration needs k, m >= 2")
            specs = iter_double_starlike_specs(req.k, req.m, req.max_order, req.max_c)
        if req.verify and req.max_order > cfg.max_oracle_n:
            raise HTTPException(
                status_code=400,
                detail=f"--verify needs max order within the oracle cap {cfg.max_oracle_n}",
            )

        def stream() -> Iterator[bytes]:
            for row in catalog_rows(specs, verify=req.verify, jobs=cfg.jobs):
                yield (json.dumps(row) + "\n").encode()

        return StreamingResponse(stream(), media_type="application/x-ndjson")

    return app


app = build_app()
