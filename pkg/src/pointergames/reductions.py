"""The three value-preserving reductions between the problem formulations.

* pointer system -> set local Hamiltonian: rejection operators become the
  candidate terms; acceptance equals 1 - energy/m for the matching
  assignment, proof for proof.
* set local Hamiltonian -> game: play the instance; thresholds map
  (a, b) -> (1 - a/2, 1 - b/2) and the game value is 1 - E_min/(2m).
* game -> pointer system: each alphabet value encodes a (blocks, choice)
  pair, and the rejection operator is one minus the single-question
  acceptance operator, so translated proofs accept exactly as the strategy
  they came from.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import EnumerationCapError, ValidationError
from .game import Game, Strategy, question_operator
from .hamiltonian import LocalTerm
from .pointer import PointerCheck, PointerProof, PointerVerifier
from .qla import QOperator, qubits
from .slh import SLHInstance


def mapped_game_thresholds(a: float, b: float) -> tuple[float, float]:
    """Threshold map for the instance -> game direction."""
    return 1.0 - a / 2.0, 1.0 - b / 2.0


def pointer_to_slh(verifier: PointerVerifier, alpha: float, beta: float) -> SLHInstance:
    """Sets are the rejection operators per position; thresholds flip to 1-alpha, 1-beta."""
    if not alpha > beta:
        raise ValidationError(
            f"pointer_to_slh: thresholds must satisfy alpha > beta, got {alpha} <= {beta}"
        )
    sets = []
    for row in verifier.checks:
        group = tuple(
            LocalTerm(verifier.p, check.support,
                      QOperator(qubits(len(check.support)), check.reject))
            for check in row
        )
        sets.append(group)
    return SLHInstance(verifier.p, verifier.q, tuple(sets), 1.0 - alpha, 1.0 - beta)


def slh_to_game(instance: SLHInstance) -> Game:
    """Wrap the instance as a playable game (supports padded to exactly k)."""
    return Game.from_slh(instance)


# ---------------------------------------------------------------------------
# game -> pointer system
#
# Alphabet codec: a value encodes (answer tuple, classical choice) as
# value = rank(answers) * l + choice, where injective k-tuples over [n] are
# ranked lexicographically.  See the JSON schema notes in the README.


def answer_tuple_count(n: int, k: int) -> int:
    return math.perm(n, k)


def encode_answer_value(n: int, k: int, l: int, answers: Sequence[int], choice: int) -> int:
    ans = tuple(int(a) for a in answers)
    if len(ans) != k or len(set(ans)) != k or any(not 0 <= a < n for a in ans):
        raise ValidationError(f"encode_answer_value: {ans} is not an injective {k}-tuple over [0, {n})")
    if not 0 <= choice < l:
        raise ValidationError(f"encode_answer_value: choice {choice} out of range [0, {l})")
    remaining = list(range(n))
    rank = 0
    for t, a in enumerate(ans):
        pos = remaining.index(a)
        rank += pos * math.perm(n - 1 - t, k - 1 - t)
        remaining.pop(pos)
    return rank * l + choice


def decode_answer_value(n: int, k: int, l: int, value: int) -> tuple[tuple[int, ...], int]:
    total = answer_tuple_count(n, k) * l
    if not 0 <= value < total:
        raise ValidationError(f"decode_answer_value: value {value} out of range [0, {total})")
    rank, choice = divmod(value, l)
    remaining = list(range(n))
    answers = []
    for t in range(k):
        block = math.perm(n - 1 - t, k - 1 - t)
        pos, rank = divmod(rank, block)
        answers.append(remaining.pop(pos))
    return tuple(answers), choice


def game_to_pointer(game: Game, alphabet_cap: int | None = None) -> PointerVerifier:
    """One rejection operator per (question, answer tuple, choice) triple.

    The rejection operator is the identity minus the single-question
    acceptance operator, supported on the answered qubits in slot order.
    """
    cap = DEFAULT_CAPS.max_enum if alphabet_cap is None else alphabet_cap
    alphabet = answer_tuple_count(game.n, game.k) * game.l
    if alphabet > cap:
        raise EnumerationCapError(
            f"game_to_pointer: alphabet size {alphabet} exceeds cap {cap}"
        )
    eye = np.eye(2 ** game.k, dtype=np.complex128)
    checks = []
    for i in range(game.m):
        row = []
        for value in range(alphabet):
            answers, choice = decode_answer_value(game.n, game.k, game.l, value)
            accept_op = question_operator(game, i, choice, answers)
            row.append(PointerCheck(answers, eye - accept_op))
        checks.append(tuple(row))
    return PointerVerifier(game.m, alphabet, game.n, game.k, tuple(checks))


def strategy_to_proof(game: Game, strategy: Strategy) -> PointerProof:
    """Write the discrete strategy into the pointer string; the state carries over."""
    y = tuple(
        encode_answer_value(game.n, game.k, game.l, strategy.answers[i], strategy.assignment[i])
        for i in range(game.m)
    )
    return PointerProof(y, strategy.state)


def proof_to_strategy(game: Game, proof: PointerProof) -> Strategy:
    """Read a strategy back out of a pointer proof."""
    answers = []
    assignment = []
    for v in proof.y:
        ans, choice = decode_answer_value(game.n, game.k, game.l, v)
        answers.append(ans)
        assignment.append(choice)
    return Strategy(tuple(assignment), tuple(answers), proof.psi)
