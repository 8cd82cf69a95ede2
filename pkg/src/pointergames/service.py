"""HTTP front end wrapping the core package.

All endpoints are stateless: payloads use the same JSON schemas as the file
formats, so a request body is exactly what the CLI would read from disk.
Run with ``uvicorn pointergames.service:app``.
"""

from __future__ import annotations

from typing import Any, Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .checks import run_check_chain
from .config import caps as make_caps, tolerances
from .errors import DimensionCapError, EnumerationCapError, PointergamesError, ValidationError
from .game import accept_probability, game_value, per_question_stats
from .oracle import sample_play
from .pointer import pointer_value
from .reductions import game_to_pointer, pointer_to_slh, slh_to_game
from .serialize import (
    digest,
    game_from_json,
    game_to_json,
    proof_to_json,
    slh_from_json,
    slh_to_json,
    strategy_from_json,
    strategy_to_json,
    verifier_from_json,
    verifier_to_json,
)
from .slh import decide_slh, gen_no, gen_random, gen_yes, solve_exact

app = FastAPI(
    title="pointergames",
    version=__version__,
    description="Exact solving and cross-checking of set local Hamiltonians, "
                "swap-prover games, and pointer proof systems.",
)


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValidationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except (DimensionCapError, EnumerationCapError) as exc:
        raise HTTPException(status_code=400, detail=f"cap exceeded: {exc}") from exc
    except PointergamesError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


class CapsParams(BaseModel):
    max_enum: int | None = None
    max_dim: int | None = None


class GenRequest(CapsParams):
    kind: Literal["slh-yes", "slh-no", "slh-random"]
    n: int
    m: int
    l: int
    k: int
    a: float
    b: float
    seed: int = 0


class InstanceRequest(CapsParams):
    instance: dict


class GameRequest(CapsParams):
    game: dict


class PlayRequest(CapsParams):
    game: dict
    strategy: dict
    mode: Literal["exact", "sample"] = "exact"
    samples: int = 100000
    seed: int = 0


class VerifierRequest(CapsParams):
    verifier: dict


class PointerToSlhRequest(VerifierRequest):
    alpha: float
    beta: float


class CheckRequest(InstanceRequest):
    seed: int = 0
    tolerance: float | None = Field(default=None, description="value-identity tolerance")


class HealthResponse(BaseModel):
    status: str
    version: str


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/gen")
def gen(req: GenRequest) -> dict:
    generators = {"slh-yes": gen_yes, "slh-no": gen_no, "slh-random": gen_random}
    generated = _run(generators[req.kind], req.n, req.m, req.l, req.k, req.a, req.b, req.seed)
    payload = slh_to_json(generated.instance)
    out: dict[str, Any] = {"instance": payload, "digest": digest(payload)}
    if req.kind in ("slh-yes", "slh-no"):
        caps = make_caps(req.max_dim, req.max_enum)
        verdict = _run(decide_slh, generated.instance, caps.max_enum, caps.max_dim)
        out["verdict"] = verdict.value
    return out


@app.post("/slh/solve")
def slh_solve(req: InstanceRequest) -> dict:
    instance = _run(slh_from_json, req.instance)
    caps = make_caps(req.max_dim, req.max_enum)
    sol = _run(solve_exact, instance, caps.max_enum, caps.max_dim)
    verdict = _run(decide_slh, instance, caps.max_enum, caps.max_dim)
    return {
        "e_min": sol.energy,
        "assignment": list(sol.assignment),
        "verdict": verdict.value,
    }


@app.post("/game/build")
def game_build(req: InstanceRequest) -> dict:
    game = _run(lambda: slh_to_game(slh_from_json(req.instance)))
    return {"game": game_to_json(game)}


@app.post("/game/play")
def game_play(req: PlayRequest) -> dict:
    game = _run(game_from_json, req.game)
    strategy = _run(strategy_from_json, req.strategy, game)
    exact = _run(accept_probability, game, strategy)
    stats = per_question_stats(game, strategy)
    out: dict[str, Any] = {
        "accept_probability": exact,
        "per_question": [s._asdict() for s in stats],
    }
    if req.mode == "sample":
        freq, stderr = _run(sample_play, game, strategy, req.samples, req.seed)
        out["sampled_frequency"] = freq
        out["sampled_stderr"] = stderr
    return out


@app.post("/game/value")
def game_value_endpoint(req: GameRequest) -> dict:
    game = _run(game_from_json, req.game)
    caps = make_caps(req.max_dim, req.max_enum)
    result = _run(game_value, game, caps.max_enum, caps.max_dim)
    return {"value": result.value, "best_strategy": strategy_to_json(result.best)}


@app.post("/pointer/value")
def pointer_value_endpoint(req: VerifierRequest) -> dict:
    verifier = _run(verifier_from_json, req.verifier)
    caps = make_caps(req.max_dim, req.max_enum)
    result = _run(pointer_value, verifier, caps.max_enum, caps.max_dim)
    return {"value": result.value, "best_proof": proof_to_json(result.best)}


@app.post("/reduce/pqpcp-to-slh")
def reduce_pointer_to_slh(req: PointerToSlhRequest) -> dict:
    verifier = _run(verifier_from_json, req.verifier)
    instance = _run(pointer_to_slh, verifier, req.alpha, req.beta)
    return {"instance": slh_to_json(instance)}


@app.post("/reduce/slh-to-game")
def reduce_slh_to_game(req: InstanceRequest) -> dict:
    game = _run(lambda: slh_to_game(slh_from_json(req.instance)))
    return {"game": game_to_json(game)}


@app.post("/reduce/game-to-pqpcp")
def reduce_game_to_pointer(req: GameRequest) -> dict:
    game = _run(game_from_json, req.game)
    caps = make_caps(req.max_dim, req.max_enum)
    verifier = _run(game_to_pointer, game, caps.max_enum)
    return {"verifier": verifier_to_json(verifier)}


@app.post("/check")
def check(req: CheckRequest) -> dict:
    instance = _run(slh_from_json, req.instance)
    caps = make_caps(req.max_dim, req.max_enum)
    tol = tolerances(value_match=req.tolerance) if req.tolerance else None
    report = _run(run_check_chain, instance, seed=req.seed, caps=caps, tol=tol)
    return report.to_dict()
