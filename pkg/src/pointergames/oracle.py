"""Dense full-qudit-space evaluation of the game protocol.

This module replays the verifier literally on the complete encoded state
(4^(n * provers) amplitudes): codespace projectors collapse the state, rows
are decoded afterwards, and the acceptance POVM is applied to what survives.
It shares only the encoding constructors with :mod:`.game`; the acceptance
arithmetic is entirely separate, which makes it the cross-check oracle for
the logical-subspace computation.

Only small systems fit (the dimension cap binds quickly); that is the point.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_CAPS
from .encoding import EncodingLayout, QUDIT_DIM, encode_state, isometry, projector
from .errors import ValidationError
from .game import Game, Strategy, per_question_stats, validate_strategy
from .qla import QState, apply_on_factors, reduced_density


def _encoded_amplitudes(lay: EncodingLayout, state: QState, max_dim: int | None) -> np.ndarray:
    return encode_state(lay, state, None, max_dim).amplitudes


def _decode_row(amps: np.ndarray, factors: list[int], start: int, provers: int,
                e_dag: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Replace `provers` qudit axes starting at `start` by one decoded qubit axis."""
    pre = int(np.prod(factors[:start], dtype=np.int64)) if start else 1
    blk = int(np.prod(factors[start:start + provers], dtype=np.int64))
    post_factors = factors[start + provers:]
    post = int(np.prod(post_factors, dtype=np.int64)) if post_factors else 1
    t = amps.reshape(pre, blk, post)
    out = np.einsum("lb,pbq->plq", e_dag, t)
    return out.reshape(-1), factors[:start] + [2] + post_factors


def dense_accept_probability(game: Game, strategy: Strategy,
                             max_dim: int | None = None) -> float:
    """Acceptance probability computed on the full qudit space."""
    validate_strategy(game, strategy)
    lay = game.layout
    p = lay.provers
    qudit_factors = [QUDIT_DIM] * (lay.n * p)
    full = _encoded_amplitudes(lay, strategy.state, max_dim)
    total = 0.0
    for i in range(game.m):
        term = game.slh.sets[i][strategy.assignment[i]]
        answers = strategy.answers[i]
        cur = full
        for t in range(game.k):
            proj = projector(lay, term.support[t]).matrix
            axes = [answers[t] * p + prover for prover in lay.subsets[term.support[t]]]
            cur = apply_on_factors(proj, axes, cur, qudit_factors)
        pass_t1 = float(np.real(np.vdot(cur, cur)))

        factors = list(qudit_factors)
        slots_by_row = sorted(range(game.k), key=lambda t: answers[t], reverse=True)
        for t in slots_by_row:
            e_dag = isometry(lay, term.support[t]).matrix.conj().T
            cur, factors = _decode_row(cur, factors, answers[t] * p, p, e_dag)
        rows_sorted = sorted(answers)
        axis_of_row = {row: row * p - idx * (p - 1) for idx, row in enumerate(rows_sorted)}
        slot_axes = [axis_of_row[answers[t]] for t in range(game.k)]
        accept3 = np.eye(2 ** game.k, dtype=np.complex128) - term.op.entries
        measured = apply_on_factors(accept3, slot_axes, cur, factors)
        joint = float(np.real(np.vdot(cur, measured)))

        total += 0.5 * pass_t1 + 0.5 * joint
    return total / game.m


def dense_codespace_pass_probability(lay: EncodingLayout, state: QState, requested: int,
                                     answered: int, max_dim: int | None = None) -> float:
    """Probability that the answered row passes the requested codespace test.

    Builds the answered row's reduced density matrix on the requested subset
    positions and traces it against the codespace projector.
    """
    if requested == answered:
        raise ValidationError("dense_codespace_pass_probability: requested == answered")
    p = lay.provers
    full = encode_state(lay, state, None, max_dim)
    axes = [answered * p + prover for prover in lay.subsets[requested]]
    rho = reduced_density(full, axes)
    return float(np.real(np.trace(projector(lay, requested).matrix @ rho)))


def sample_play(game: Game, strategy: Strategy, samples: int, seed: int) -> tuple[float, float]:
    """Simulate plays of the protocol; returns (frequency, binomial std error).

    Debug aid only: each play walks the exact outcome tree of its question
    (codespace test, coin, energy measurement) with seeded randomness.
    """
    if samples < 1:
        raise ValidationError(f"sample_play: need at least one sample, got {samples}")
    stats = per_question_stats(game, strategy)
    rng = np.random.default_rng(seed)
    accepted = 0
    for _ in range(samples):
        i = int(rng.integers(0, game.m))
        st = stats[i]
        joint3 = max(0.0, 2.0 * st.accept - st.pass_codespace)
        if rng.random() >= st.pass_codespace:
            continue
        if rng.random() < 0.5:
            accepted += 1
            continue
        cond = joint3 / st.pass_codespace if st.pass_codespace > 0 else 0.0
        if rng.random() < cond:
            accepted += 1
    freq = accepted / samples
    stderr = float(np.sqrt(max(freq * (1.0 - freq), 1e-12) / samples))
    return freq, stderr


def estimate_caps_for_dense(game: Game) -> int:
    """Ambient dimension the dense oracle needs for this game."""
    return QUDIT_DIM ** (game.n * game.layout.provers)


def dense_feasible(game: Game, max_dim: int | None = None) -> bool:
    cap = DEFAULT_CAPS.max_dim if max_dim is None else max_dim
    return estimate_caps_for_dense(game) <= cap
