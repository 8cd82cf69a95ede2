"""End-to-end identity checks across all three formulations, plus run reports.

The chain solves the set instance exactly, plays it as a game, translates the
game into a pointer system and back, and asserts every value identity along
the way.  A cap hit mid-chain yields a partial report with explicit skip
markers instead of an error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Caps, Tolerances, caps as make_caps
from .errors import DimensionCapError, EnumerationCapError
from .game import (
    Game,
    Strategy,
    accept_probability,
    game_value,
    honest_answers,
    honest_strategy,
    is_honest,
)
from .hamiltonian import Verdict, state_energy
from .oracle import dense_accept_probability, dense_feasible
from .pointer import PointerProof, pointer_value
from .pointer import accept_probability as pointer_accept
from .qla import qubits, random_state
from .reductions import (
    game_to_pointer,
    mapped_game_thresholds,
    pointer_to_slh,
    proof_to_strategy,
    slh_to_game,
    strategy_to_proof,
)
from .serialize import digest, slh_to_json
from .slh import SLHInstance, select, solve_exact


@dataclass
class CheckResult:
    name: str
    passed: bool
    tolerance: float | None = None
    observed: float | str | None = None
    detail: str = ""
    skipped: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "observed": self.observed,
            "detail": self.detail,
            "skipped": self.skipped,
        }

    def render(self) -> str:
        if self.skipped:
            tag = "SKIP"
        else:
            tag = "PASS" if self.passed else "FAIL"
        bits = [f"[{tag}] {self.name}"]
        if self.observed is not None:
            bits.append(f"observed={self.observed}")
        if self.tolerance is not None:
            bits.append(f"tolerance={self.tolerance:g}")
        if self.detail:
            bits.append(self.detail)
        return "  ".join(bits)


@dataclass
class RunReport:
    command: str
    params: dict
    seed: int | None
    input_digest: str | None
    results: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    wall_time_s: float = 0.0
    cap_exceeded: str | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed or c.skipped for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "input_digest": self.input_digest,
            "results": self.results,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "cap_exceeded": self.cap_exceeded,
            "wall_time_s": self.wall_time_s,
        }

    def render(self) -> str:
        lines = [f"# {self.command}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        if self.input_digest:
            lines.append(f"input sha256: {self.input_digest}")
        for key, value in self.results.items():
            lines.append(f"{key}: {value}")
        lines.extend(c.render() for c in self.checks)
        if self.cap_exceeded:
            lines.append(f"cap exceeded: {self.cap_exceeded} (remaining checks skipped)")
        lines.append(f"wall time: {self.wall_time_s:.3f} s")
        lines.append("result: " + ("ok" if self.passed else "CHECK FAILURE"))
        return "\n".join(lines)


def _close(name: str, observed: float, expected: float, tol: float,
           detail: str = "") -> CheckResult:
    delta = abs(observed - expected)
    return CheckResult(name, delta <= tol, tol, f"|delta|={delta:.3e}", detail)


def _sample_strategies(game: Game, base: Strategy, seed: int, count: int) -> list[Strategy]:
    """Honest base plus seeded cheats: wrong blocks, wrong choices, random states."""
    rng = np.random.default_rng(seed)
    shape = qubits(game.n)
    out = [base]
    honest = honest_answers(game, base.assignment)
    for _ in range(count):
        f = tuple(int(x) for x in rng.integers(0, game.l, size=game.m))
        answers = []
        for i in range(game.m):
            if rng.random() < 0.5:
                answers.append(game.slh.sets[i][f[i]].support)
            else:
                answers.append(tuple(int(q) for q in rng.choice(game.n, size=game.k,
                                                                replace=False)))
        out.append(Strategy(f, tuple(answers), random_state(shape, rng)))
    # one single-question cheat on the honest base, when a wrong block exists
    if game.n > game.k:
        i = int(rng.integers(0, game.m))
        wrong = [q for q in range(game.n) if q not in honest[i]]
        answers = list(honest)
        answers[i] = (wrong[0],) + honest[i][1:]
        out.append(Strategy(base.assignment, tuple(answers), base.state))
    return out


def run_check_chain(instance: SLHInstance, seed: int = 0,
                    caps: Caps | None = None,
                    tol: Tolerances | None = None) -> RunReport:
    """Run the full reduction chain on one instance and assert every identity."""
    caps = caps if caps is not None else make_caps()
    tol = tol if tol is not None else DEFAULT_TOLERANCES
    started = time.perf_counter()
    report = RunReport(
        command="check",
        params={"n": instance.n, "k": instance.k, "m": instance.m, "l": instance.l,
                "a": instance.a, "b": instance.b},
        seed=seed,
        input_digest=digest(slh_to_json(instance)),
    )
    checks = report.checks
    try:
        _run_chain_body(instance, seed, caps, tol, report)
    except (DimensionCapError, EnumerationCapError) as exc:
        report.cap_exceeded = str(exc)
        checks.append(CheckResult("chain-complete", True, None, None,
                                  f"skipped after cap: {exc}", skipped=True))
    report.wall_time_s = time.perf_counter() - started
    return report


def _run_chain_body(instance: SLHInstance, seed: int, caps: Caps,
                    tol: Tolerances, report: RunReport) -> None:
    checks = report.checks
    m = instance.m

    exact = solve_exact(instance, caps.max_enum, caps.max_dim)
    report.results["e_min"] = exact.energy
    report.results["assignment"] = list(exact.assignment)
    slh_verdict = (
        Verdict.YES if exact.energy <= instance.a * m
        else Verdict.NO if exact.energy >= instance.b * m
        else Verdict.PROMISE_VIOLATED
    )
    report.results["slh_verdict"] = slh_verdict.value

    game = slh_to_game(instance)
    alpha, beta = mapped_game_thresholds(instance.a, instance.b)

    # game value identity: value == 1 - E_min / (2m)
    gv = game_value(game, caps.max_enum, caps.max_dim)
    expected_value = 1.0 - exact.energy / (2.0 * m)
    report.results["game_value"] = gv.value
    checks.append(_close("game-value-identity", gv.value, expected_value, tol.value_match,
                         "value == 1 - E_min/(2m)"))

    game_verdict = (
        Verdict.YES if gv.value >= alpha
        else Verdict.NO if gv.value <= beta
        else Verdict.PROMISE_VIOLATED
    )
    report.results["game_verdict"] = game_verdict.value
    checks.append(CheckResult("slh-vs-game-verdict", game_verdict == slh_verdict,
                              None, f"{slh_verdict.value}/{game_verdict.value}",
                              "verdicts agree under mapped thresholds"))

    # completeness formula on the honest strategy over the optimal assignment
    base = honest_strategy(game, exact.assignment, exact.state)
    honest_accept = accept_probability(game, base)
    h_energy = state_energy(select(game.slh, exact.assignment).terms, exact.state)
    checks.append(_close("honest-completeness", honest_accept,
                         1.0 - h_energy / (2.0 * m), tol.value_match,
                         "honest acceptance == 1 - <H>/(2m)"))

    strategies = _sample_strategies(game, base, seed, count=3)

    # structured vs dense acceptance
    if dense_feasible(game, caps.max_dim):
        worst = 0.0
        for s in strategies:
            worst = max(worst, abs(accept_probability(game, s)
                                   - dense_accept_probability(game, s, caps.max_dim)))
        checks.append(CheckResult("structured-vs-dense", worst <= tol.value_match,
                                  tol.value_match, f"max|delta|={worst:.3e}",
                                  f"{len(strategies)} strategies"))
    else:
        checks.append(CheckResult("structured-vs-dense", True, tol.value_match, None,
                                  "dense oracle over the dimension cap", skipped=True))

    # hybrid monotonicity: cheating strategies never beat the honest optimum
    hybrid_ok = all(accept_probability(game, s) <= honest_accept + tol.monotonic_slack
                    for s in strategies if not is_honest(game, s))
    checks.append(CheckResult("hybrid-monotonicity", hybrid_ok, tol.monotonic_slack,
                              None, "cheats never beat the honest optimum"))

    verifier = game_to_pointer(game, caps.max_enum)
    report.results["pointer_alphabet"] = verifier.l

    # strategy -> proof acceptance equality
    worst = 0.0
    for s in strategies:
        proof = strategy_to_proof(game, s)
        worst = max(worst, abs(pointer_accept(verifier, proof) - accept_probability(game, s)))
    checks.append(CheckResult("strategy-to-proof-acceptance", worst <= tol.value_match,
                              tol.value_match, f"max|delta|={worst:.3e}",
                              "translated proofs accept like their strategies"))

    # proof -> strategy acceptance equality on seeded proofs
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for _ in range(4):
        y = tuple(int(v) for v in rng.integers(0, verifier.l, size=verifier.m))
        psi = random_state(qubits(verifier.p), rng)
        proof = PointerProof(y, psi)
        back = proof_to_strategy(game, proof)
        worst = max(worst, abs(pointer_accept(verifier, proof)
                               - accept_probability(game, back)))
    checks.append(CheckResult("proof-to-strategy-acceptance", worst <= tol.value_match,
                              tol.value_match, f"max|delta|={worst:.3e}",
                              "4 seeded proofs"))

    # brute-forced pointer value equals the game value
    pv = pointer_value(verifier, caps.max_enum, caps.max_dim)
    report.results["pointer_value"] = pv.value
    checks.append(_close("pointer-value-identity", pv.value, gv.value, tol.value_match,
                         "max pointer acceptance == game value"))

    pointer_verdict = (
        Verdict.YES if pv.value >= alpha
        else Verdict.NO if pv.value <= beta
        else Verdict.PROMISE_VIOLATED
    )
    report.results["pointer_verdict"] = pointer_verdict.value
    checks.append(CheckResult("game-vs-pointer-verdict", pointer_verdict == game_verdict,
                              None, f"{game_verdict.value}/{pointer_verdict.value}",
                              "verdicts agree across the translation"))

    # close the loop: pointer system back to a set instance
    slh2 = pointer_to_slh(verifier, alpha, beta)
    exact2 = solve_exact(slh2, caps.max_enum, caps.max_dim)
    checks.append(_close("round-trip-energy", exact2.energy, exact.energy / 2.0,
                         tol.value_match, "round-trip E_min halves with the thresholds"))

    # proof/energy bijection on the closing instance (exact identity)
    worst = 0.0
    for _ in range(4):
        y = tuple(int(v) for v in rng.integers(0, slh2.l, size=slh2.m))
        psi = random_state(qubits(slh2.n), rng)
        acc = pointer_accept(verifier, PointerProof(y, psi))
        energy = state_energy(select(slh2, y).terms, psi)
        worst = max(worst, abs(acc - (1.0 - energy / slh2.m)))
    checks.append(CheckResult("proof-energy-bijection", worst <= tol.identity_map,
                              tol.identity_map, f"max|delta|={worst:.3e}",
                              "acceptance == 1 - energy/m, proof for proof"))
