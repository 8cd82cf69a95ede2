import itertools

import numpy as np
import pytest

from conftest import term

from pointergames.errors import EnumerationCapError, ValidationError
from pointergames.game import Strategy, accept_probability, game_value, honest_strategy
from pointergames.hamiltonian import state_energy
from pointergames.pointer import PointerCheck, PointerProof, PointerVerifier
from pointergames.pointer import accept_probability as pointer_accept
from pointergames.pointer import pointer_value, rejection_sum
from pointergames.qla import qubits, random_contraction, random_state
from pointergames.reductions import (
    answer_tuple_count,
    decode_answer_value,
    encode_answer_value,
    game_to_pointer,
    mapped_game_thresholds,
    pointer_to_slh,
    proof_to_strategy,
    slh_to_game,
    strategy_to_proof,
)
from pointergames.slh import SLHInstance, gen_no, gen_random, gen_yes, select, solve_exact


def random_verifier(rng, m=2, l=2, p=2, q=1):
    checks = tuple(
        tuple(PointerCheck((int(rng.integers(0, p)),), random_contraction(2, rng))
              for _ in range(l))
        for _ in range(m)
    )
    return PointerVerifier(m, l, p, q, checks)


# --- pointer system -> set instance ------------------------------------------

def test_pointer_to_slh_singleton_alphabet_degenerates(rng):
    v = random_verifier(rng, m=2, l=1)
    inst = pointer_to_slh(v, 0.9, 0.4)
    assert inst.l == 1 and inst.m == 2
    assert inst.a == pytest.approx(0.1) and inst.b == pytest.approx(0.6)


def test_pointer_to_slh_rejects_bad_thresholds(rng):
    v = random_verifier(rng)
    with pytest.raises(ValidationError):
        pointer_to_slh(v, 0.4, 0.9)


def test_pointer_to_slh_acceptance_energy_bijection(rng):
    v = random_verifier(rng)
    inst = pointer_to_slh(v, 0.9, 0.4)
    for _ in range(6):
        y = tuple(int(x) for x in rng.integers(0, v.l, size=v.m))
        psi = random_state(qubits(v.p), rng)
        acc = pointer_accept(v, PointerProof(y, psi))
        energy = state_energy(select(inst, y).terms, psi)
        assert abs(acc - (1.0 - energy / v.m)) < 1e-12


def test_pointer_to_slh_joint_brute_force_oracle(rng):
    # max acceptance over (y, psi) equals 1 - E_min/m of the produced instance
    v = random_verifier(rng, m=2, l=2, p=2, q=1)
    inst = pointer_to_slh(v, 0.9, 0.4)
    best = max(
        1.0 - np.linalg.eigvalsh(rejection_sum(v, y).entries)[0] / v.m
        for y in itertools.product(range(v.l), repeat=v.m)
    )
    sol = solve_exact(inst)
    assert best == pytest.approx(1.0 - sol.energy / inst.m, abs=1e-12)


# --- set instance -> game -----------------------------------------------------

def test_thresholds_map():
    assert mapped_game_thresholds(0.2, 0.8) == (0.9, 0.6)


def test_yes_instance_reaches_mapped_completeness():
    gen = gen_yes(3, 2, 2, 2, 0.2, 0.8, seed=5)
    game = slh_to_game(gen.instance)
    alpha, _ = mapped_game_thresholds(gen.instance.a, gen.instance.b)
    value, _ = game_value(game)
    assert value >= alpha - 1e-12


def test_no_instance_stays_below_mapped_soundness():
    gen = gen_no(3, 2, 2, 2, 0.2, 0.8, seed=5)
    game = slh_to_game(gen.instance)
    _, beta = mapped_game_thresholds(gen.instance.a, gen.instance.b)
    value, _ = game_value(game)
    assert value <= beta + 1e-12


def test_zero_instance_has_value_one():
    zero = term(2, (0,), np.zeros((2, 2), dtype=complex))
    game = slh_to_game(SLHInstance(2, 1, ((zero,),), 0.1, 0.9))
    value, _ = game_value(game)
    assert value == pytest.approx(1.0, abs=1e-12)


# --- answer-value codec ---------------------------------------------------------

def test_answer_codec_roundtrip_covers_the_alphabet():
    n, k, l = 4, 2, 3
    seen = set()
    for value in range(answer_tuple_count(n, k) * l):
        answers, choice = decode_answer_value(n, k, l, value)
        assert len(set(answers)) == k
        assert encode_answer_value(n, k, l, answers, choice) == value
        seen.add((answers, choice))
    assert len(seen) == answer_tuple_count(n, k) * l


def test_answer_codec_validation():
    with pytest.raises(ValidationError):
        encode_answer_value(3, 2, 2, (0, 0), 0)
    with pytest.raises(ValidationError):
        encode_answer_value(3, 2, 2, (0, 1), 5)
    with pytest.raises(ValidationError):
        decode_answer_value(3, 2, 2, 12 * 2)


# --- game -> pointer system -----------------------------------------------------

def test_zero_game_honest_proof_accepts_with_probability_one(rng):
    zero = term(2, (0,), np.zeros((2, 2), dtype=complex))
    game = slh_to_game(SLHInstance(2, 1, ((zero,),), 0.1, 0.9))
    verifier = game_to_pointer(game)
    hs = honest_strategy(game, (0,), random_state(qubits(2), rng))
    proof = strategy_to_proof(game, hs)
    assert pointer_accept(verifier, proof) == pytest.approx(1.0, abs=1e-12)


def test_translated_honest_groundstate_matches_energy_formula():
    gen = gen_random(3, 2, 2, 2, 0.2, 0.8, seed=17)
    game = slh_to_game(gen.instance)
    sol = solve_exact(gen.instance)
    hs = honest_strategy(game, sol.assignment, sol.state)
    verifier = game_to_pointer(game)
    proof = strategy_to_proof(game, hs)
    both = 1.0 - sol.energy / (2 * game.m)
    assert accept_probability(game, hs) == pytest.approx(both, abs=1e-12)
    assert pointer_accept(verifier, proof) == pytest.approx(both, abs=1e-12)


def test_translation_preserves_acceptance_both_directions(rng):
    gen = gen_random(3, 2, 2, 2, 0.2, 0.8, seed=23)
    game = slh_to_game(gen.instance)
    verifier = game_to_pointer(game)
    # strategy -> proof, including wrong-block cheats
    for _ in range(5):
        f = tuple(int(x) for x in rng.integers(0, 2, size=2))
        answers = tuple(tuple(int(q) for q in rng.choice(3, size=2, replace=False))
                        for _ in range(2))
        s = Strategy(f, answers, random_state(qubits(3), rng))
        proof = strategy_to_proof(game, s)
        assert pointer_accept(verifier, proof) == pytest.approx(
            accept_probability(game, s), abs=1e-9)
    # proof -> strategy on arbitrary classical strings
    for _ in range(5):
        y = tuple(int(x) for x in rng.integers(0, verifier.l, size=verifier.m))
        psi = random_state(qubits(3), rng)
        proof = PointerProof(y, psi)
        back = proof_to_strategy(game, proof)
        assert accept_probability(game, back) == pytest.approx(
            pointer_accept(verifier, proof), abs=1e-9)


def test_translation_roundtrip_is_identity(rng):
    gen = gen_random(3, 2, 2, 2, 0.2, 0.8, seed=29)
    game = slh_to_game(gen.instance)
    s = Strategy((1, 0), ((2, 0), (0, 1)), random_state(qubits(3), rng))
    back = proof_to_strategy(game, strategy_to_proof(game, s))
    assert back.assignment == s.assignment
    assert back.answers == s.answers


def test_game_to_pointer_operator_bounds(rng):
    gen = gen_random(3, 1, 2, 2, 0.2, 0.8, seed=3)
    game = slh_to_game(gen.instance)
    verifier = game_to_pointer(game)
    assert verifier.l == answer_tuple_count(3, 2) * 2
    for row in verifier.checks:
        for check in row:
            evals = np.linalg.eigvalsh(check.reject)
            assert evals[0] > -1e-10 and evals[-1] < 1 + 1e-10


def test_game_to_pointer_alphabet_cap():
    gen = gen_random(3, 1, 2, 2, 0.2, 0.8, seed=3)
    game = slh_to_game(gen.instance)
    with pytest.raises(EnumerationCapError):
        game_to_pointer(game, alphabet_cap=5)


def test_full_round_trip_preserves_values():
    gen = gen_random(3, 2, 2, 2, 0.2, 0.8, seed=41)
    inst = gen.instance
    sol = solve_exact(inst)
    game = slh_to_game(inst)
    gv = game_value(game)
    assert gv.value == pytest.approx(1.0 - sol.energy / (2 * inst.m), abs=1e-9)
    verifier = game_to_pointer(game)
    pv = pointer_value(verifier)
    assert pv.value == pytest.approx(gv.value, abs=1e-9)
    alpha, beta = mapped_game_thresholds(inst.a, inst.b)
    inst2 = pointer_to_slh(verifier, alpha, beta)
    sol2 = solve_exact(inst2)
    assert sol2.energy == pytest.approx(sol.energy / 2, abs=1e-9)
    assert inst2.a == pytest.approx(inst.a / 2)
    assert inst2.b == pytest.approx(inst.b / 2)
