"""HTTP face of the engine: one POST endpoint per run, pydantic models on
the wire, the same dispatcher the CLI uses underneath.

Every computation is a pure request/response pair, so the service is
stateless and safe to run multi-worker.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .corpus import CorpusError, SamplingUnavailable, corpus_generate
from .groebner import DegreeCapExceeded
from .inputlang import InputError
from .reports import COMMANDS, CommandError, Report, run_command


class RunRequest(BaseModel):
    command: str = Field(..., description="one of the registered commands")
    input_text: str | None = Field(None, description="input-language source")
    family: str | None = Field(
        None, description="built-in family spec, e.g. rational-normal-curve:4"
    )
    ideal: str | None = Field(None, description="named ideal to operate on")
    seed: int = 0
    degree_cap: int = 40
    trials: int = 100
    field: str = "q"
    params: dict[str, int | str] | None = Field(
        None, description="command-specific knobs (a, d, window, variant, point, ...)"
    )


class RunResponse(BaseModel):
    command: str
    engine_version: str
    input_hash: str
    seed: str
    ok: bool
    parameters: dict
    payload: dict


class CorpusRequest(BaseModel):
    family: str
    seed: int = 0


class CorpusResponse(BaseModel):
    family: str
    input_text: str


def _to_response(report: Report) -> RunResponse:
    doc = report.document()
    return RunResponse(
        command=doc["command"],
        engine_version=doc["engine_version"],
        input_hash=doc["input_hash"],
        seed=doc["seed"],
        ok=report.ok,
        parameters=doc["parameters"],
        payload=doc["payload"],
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="secantkit",
        version=__version__,
        description="Exact computer algebra checks for syzygy conditions, "
                    "secant varieties, cohomology vanishing and flip "
                    "lattice arithmetic.",
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "engine_version": __version__}

    @app.get("/commands")
    def commands():
        return {"commands": list(COMMANDS)}

    @app.post("/run", response_model=RunResponse)
    def run(req: RunRequest):
        options = {
            "seed": req.seed,
            "degree_cap": req.degree_cap,
            "trials": req.trials,
            "field": req.field,
        }
        for key, value in (req.params or {}).items():
            options[key] = value
        try:
            report = run_command(req.command, req.input_text, req.family,
                                 req.ideal, options)
        except (CommandError, InputError, CorpusError,
                SamplingUnavailable, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except DegreeCapExceeded as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return _to_response(report)

    @app.post("/corpus", response_model=CorpusResponse)
    def corpus(req: CorpusRequest):
        try:
            variety = corpus_generate(req.family, seed=req.seed)
        except CorpusError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        ring = variety.ideal.ring
        lines = [f"ring R vars {' '.join(ring.vars)};"]
        gens = ", ".join(str(g) for g in variety.ideal.gens)
        lines.append(f"ideal X = {gens};")
        return CorpusResponse(family=variety.name,
                              input_text="\n".join(lines) + "\n")

    return app


app = create_app()
