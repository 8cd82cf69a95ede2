"""Swap-prover games built on set local Hamiltonian instances.

The verifier draws a question (a set index) uniformly, the classical prover
names a representative term, and every quantum prover swaps the same blocks
of the shared encoded state into the message registers.  The verifier then

* projects each requested qubit's subset qudits onto its codespace,
* accepts outright on a fair coin,
* otherwise decodes the answered rows and measures the acceptance POVM
  ``identity - term`` on the decoded qubits (decode failure rejects).

Acceptance probabilities are computed exactly on the logical space: for each
question the whole procedure reduces to a ``2^k``-dimensional operator built
from per-slot 2x2 crosstalk blocks, traced against the reduced state of the
answered qubits.  A full qudit-space oracle lives in :mod:`.oracle`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .encoding import EncodingLayout, codespace_pass_operator, decode_cross_operator, layout
from .errors import EnumerationCapError, ValidationError
from .hamiltonian import LocalTerm, Verdict, groundstate_energy
from .qla import (
    QOperator,
    QState,
    hermitian_eig,
    kron_all,
    qubits,
    reduced_density,
)
from .slh import SLHInstance, check_assignment, select

_I2 = np.eye(2, dtype=np.complex128)


def _pad_support(term: LocalTerm, n: int, k: int) -> LocalTerm:
    """Extend a term's support to exactly k qubits (identity on the padding)."""
    if term.locality == k:
        return term
    extra = [q for q in range(n) if q not in term.support][: k - term.locality]
    support = term.support + tuple(extra)
    mat = np.kron(term.op.entries, np.eye(2 ** len(extra), dtype=np.complex128))
    return LocalTerm(n, support, QOperator(qubits(len(support)), mat))


@dataclass(frozen=True, eq=False)
class Game:
    """A playable game over an instance whose terms all touch exactly k qubits."""

    slh: SLHInstance
    layout: EncodingLayout
    k: int

    @classmethod
    def from_slh(cls, instance: SLHInstance) -> "Game":
        if instance.m < 1:
            raise ValidationError("Game: at least one question (set) required")
        if instance.k > instance.n:
            raise ValidationError(
                f"Game: locality {instance.k} exceeds qubit count {instance.n}"
            )
        sets = tuple(
            tuple(_pad_support(t, instance.n, instance.k) for t in group)
            for group in instance.sets
        )
        padded = SLHInstance(instance.n, instance.k, sets, instance.a, instance.b)
        return cls(padded, layout(instance.n), instance.k)

    @property
    def m(self) -> int:
        return self.slh.m

    @property
    def l(self) -> int:
        return self.slh.l

    @property
    def n(self) -> int:
        return self.slh.n


@dataclass(frozen=True, eq=False)
class Strategy:
    """Classical answers, per-question block choices, and the shared state."""

    assignment: tuple[int, ...]
    answers: tuple[tuple[int, ...], ...]
    state: QState


def validate_strategy(game: Game, strategy: Strategy) -> None:
    """Raise with the violated invariant's name on any malformed strategy."""
    check_assignment(game.slh, strategy.assignment)
    if len(strategy.answers) != game.m:
        raise ValidationError(
            f"strategy.answers: {len(strategy.answers)} questions, game has {game.m}"
        )
    for i, ans in enumerate(strategy.answers):
        if len(ans) != game.k:
            raise ValidationError(
                f"strategy.answers[{i}]: {len(ans)} blocks answered, game expects {game.k}"
            )
        if len(set(ans)) != len(ans):
            raise ValidationError(
                f"strategy.answers[{i}]: answer indices must be distinct, got {ans}"
            )
        for q in ans:
            if not 0 <= q < game.n:
                raise ValidationError(
                    f"strategy.answers[{i}]: qubit index {q} out of range [0, {game.n})"
                )
    if strategy.state.shape.factors != (2,) * game.n:
        raise ValidationError(
            f"strategy.state: factors {strategy.state.shape.factors} are not {game.n} qubits"
        )


def honest_answers(game: Game, assignment: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    f = check_assignment(game.slh, assignment)
    return tuple(game.slh.sets[i][f[i]].support for i in range(game.m))


def honest_strategy(game: Game, assignment: Sequence[int], state: QState | None = None) -> Strategy:
    """Answers follow the selected terms' supports; default state is the groundstate."""
    f = check_assignment(game.slh, assignment)
    if state is None:
        _, state = groundstate_energy(select(game.slh, f))
    return Strategy(f, honest_answers(game, f), state)


def is_honest(game: Game, strategy: Strategy) -> bool:
    return strategy.answers == honest_answers(game, strategy.assignment)


# ---------------------------------------------------------------------------
# exact acceptance


def question_operator(game: Game, question: int, choice: int,
                      answers: Sequence[int]) -> np.ndarray:
    """Acceptance operator for one question on the answered qubits (slot order).

    Equals ``(codespace part)/2 + (decode† (1 - term) decode)/2`` where both
    parts factor into per-slot 2x2 blocks; slots follow the selected term's
    support in ascending order.
    """
    term = game.slh.sets[question][choice]
    support = term.support
    cross = [codespace_pass_operator(game.layout, support[t], answers[t])
             for t in range(game.k)]
    deco = [decode_cross_operator(game.layout, support[t], answers[t])
            for t in range(game.k)]
    codespace_part = kron_all(cross)
    d = kron_all(deco)
    accept3 = np.eye(2 ** game.k, dtype=np.complex128) - term.op.entries
    return 0.5 * codespace_part + 0.5 * (d.conj().T @ accept3 @ d)


def _question_ops(game: Game, assignment: Sequence[int],
                  answers: Sequence[Sequence[int]]) -> list[np.ndarray]:
    return [question_operator(game, i, assignment[i], answers[i]) for i in range(game.m)]


def _accept_with_ops(ops: Sequence[np.ndarray], answers: Sequence[Sequence[int]],
                     state: QState) -> float:
    total = 0.0
    for op, ans in zip(ops, answers):
        rho = reduced_density(state, ans)
        total += float(np.real(np.trace(op @ rho)))
    return total / len(ops)


def accept_probability(game: Game, strategy: Strategy) -> float:
    """Exact probability that the verifier accepts the given strategy."""
    validate_strategy(game, strategy)
    ops = _question_ops(game, strategy.assignment, strategy.answers)
    return _accept_with_ops(ops, strategy.answers, strategy.state)


class QuestionStats(NamedTuple):
    question: int
    pass_codespace: float
    accept: float
    contribution: float


def per_question_stats(game: Game, strategy: Strategy) -> tuple[QuestionStats, ...]:
    """Codespace pass probability and acceptance, question by question."""
    validate_strategy(game, strategy)
    out = []
    for i in range(game.m):
        ans = strategy.answers[i]
        term = game.slh.sets[i][strategy.assignment[i]]
        cross = kron_all([
            codespace_pass_operator(game.layout, term.support[t], ans[t])
            for t in range(game.k)
        ])
        rho = reduced_density(strategy.state, ans)
        pass_t1 = float(np.real(np.trace(cross @ rho)))
        op = question_operator(game, i, strategy.assignment[i], ans)
        accept = float(np.real(np.trace(op @ rho)))
        out.append(QuestionStats(i, pass_t1, accept, accept / game.m))
    return tuple(out)


def acceptance_operator(game: Game, assignment: Sequence[int],
                        answers: Sequence[Sequence[int]],
                        max_dim: int | None = None) -> QOperator:
    """Hermitian A with <phi|A|phi> = acceptance for every shared state phi.

    Built by evaluating the acceptance quadratic form on computational basis
    vectors and their pairwise superpositions (polarization).
    """
    f = check_assignment(game.slh, assignment)
    shape = qubits(game.n, max_dim)
    answers = tuple(tuple(a) for a in answers)
    ops = _question_ops(game, f, answers)
    dim = shape.dim
    inv_sqrt2 = 1.0 / math.sqrt(2.0)

    def form(vec: np.ndarray) -> float:
        return _accept_with_ops(ops, answers, QState(shape, vec))

    mat = np.zeros((dim, dim), dtype=np.complex128)
    diag = np.empty(dim)
    for x in range(dim):
        e = np.zeros(dim, dtype=np.complex128)
        e[x] = 1.0
        diag[x] = form(e)
        mat[x, x] = diag[x]
    for x in range(dim):
        for y in range(x + 1, dim):
            u = np.zeros(dim, dtype=np.complex128)
            u[x] = inv_sqrt2
            u[y] = inv_sqrt2
            v = np.zeros(dim, dtype=np.complex128)
            v[x] = inv_sqrt2
            v[y] = 1j * inv_sqrt2
            re = form(u) - 0.5 * (diag[x] + diag[y])
            im = 0.5 * (diag[x] + diag[y]) - form(v)
            mat[x, y] = re + 1j * im
            mat[y, x] = re - 1j * im
    return QOperator(shape, mat)


# ---------------------------------------------------------------------------
# game value by strategy enumeration


def count_strategies(game: Game) -> int:
    return (game.l * math.perm(game.n, game.k)) ** game.m


class GameValue(NamedTuple):
    value: float
    best: Strategy


def game_value(game: Game, max_enum: int | None = None,
               max_dim: int | None = None) -> GameValue:
    """Maximum acceptance over all strategies and shared states.

    Enumerates every (assignment, answer map) pair and takes the top
    eigenvalue of its acceptance operator; the shared state of the best
    strategy is the corresponding eigenvector.  Deterministic: the first
    maximizer in lexicographic enumeration order wins ties.
    """
    cap = DEFAULT_CAPS.max_enum if max_enum is None else max_enum
    total = count_strategies(game)
    if total > cap:
        raise EnumerationCapError(f"game_value: {total} strategies exceed cap {cap}")
    tuples = list(itertools.permutations(range(game.n), game.k))
    best_value = -1.0
    best: Strategy | None = None
    for f in itertools.product(range(game.l), repeat=game.m):
        for answers in itertools.product(tuples, repeat=game.m):
            op = acceptance_operator(game, f, answers, max_dim)
            evals, evecs = hermitian_eig(op)
            if evals[-1] > best_value:
                best_value = float(evals[-1])
                best = Strategy(f, answers, evecs[-1])
    assert best is not None
    return GameValue(best_value, best)


def decide_game(game: Game, alpha: float, beta: float,
                max_enum: int | None = None, max_dim: int | None = None) -> Verdict:
    """YES if the value reaches alpha, NO if it stays at or below beta."""
    if not alpha > beta:
        raise ValidationError(f"decide_game: thresholds must satisfy alpha > beta, got {alpha} <= {beta}")
    value, _ = game_value(game, max_enum, max_dim)
    if value >= alpha:
        return Verdict.YES
    if value <= beta:
        return Verdict.NO
    return Verdict.PROMISE_VIOLATED
