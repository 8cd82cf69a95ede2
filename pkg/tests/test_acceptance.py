"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.  Every tolerance is pinned here, next to the assertion
that uses it.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np

from pointergames.checks import run_check_chain
from pointergames.encoding import (
    isometry,
    layout,
    mixed_answer_pass_probability,
    projector,
    sigma_zero_overlap,
)
from pointergames.game import Strategy, accept_probability, game_value, honest_strategy
from pointergames.hamiltonian import Verdict, groundstate_energy
from pointergames.oracle import dense_accept_probability, dense_codespace_pass_probability
from pointergames.qla import qubits, random_state, reduced_density
from pointergames.reductions import mapped_game_thresholds, slh_to_game
from pointergames.slh import as_lh, decide_slh, gen_no, gen_random, gen_yes, select, solve_exact


@contextmanager
def criterion(number, description, budget_s):
    started = time.perf_counter()
    failed = False
    try:
        yield
    except BaseException:
        failed = True
        raise
    finally:
        elapsed = time.perf_counter() - started
        status = "FAIL" if failed else "PASS"
        print(f"\n[{status}] criterion {number}: {description} ({elapsed:.2f}s, budget {budget_s}s)")
    assert elapsed < budget_s, f"criterion {number} exceeded its runtime budget"


def corpus_small(count=10):
    """Seeded instances with n <= 3, m <= 2, l <= 2, k <= 2, labels mixed."""
    shapes = [(2, 1, 2, 1), (3, 2, 2, 2), (2, 2, 2, 2), (3, 1, 2, 2), (3, 2, 2, 1)]
    out = []
    for seed in range(count):
        n, m, l, k = shapes[seed % len(shapes)]
        maker = (gen_yes, gen_no, gen_random)[seed % 3]
        out.append(maker(n, m, l, k, 0.2, 0.8, seed=seed).instance)
    return out


def test_criterion_1_encoding_algebra():
    with criterion(1, "encoding algebra for n in {1,2,3,7}", 1.0):
        tol = 1e-10
        for n in (1, 2, 3, 7):
            lay = layout(n)
            for i in range(n):
                e = isometry(lay, i).matrix
                assert np.max(np.abs(e.conj().T @ e - np.eye(2))) <= tol
                p = projector(lay, i).matrix
                assert np.max(np.abs(p @ p - p)) <= tol
                assert np.max(np.abs(p - p.conj().T)) <= tol
                evals = np.linalg.eigvalsh(p)
                assert np.all((np.abs(evals) <= tol) | (np.abs(evals - 1) <= tol))
                assert abs(np.sum(evals) - 2.0) <= tol  # rank 2
                # the projector fixes both encoded basis states on the subset part
                subset = lay.subsets[i]
                comp = [q for q in range(lay.provers) if q not in subset]
                for b in range(2):
                    col = e[:, b].reshape((4,) * lay.provers)
                    moved = np.moveaxis(col, subset + tuple(comp), range(lay.provers))
                    block = moved.reshape(4 ** len(subset), -1)[:, 0]  # complement all |0>
                    assert np.linalg.norm(p @ block - block) <= tol


def test_criterion_2_crosstalk_exactness():
    with criterion(2, "wrong-block pass probabilities, closed form vs dense", 5.0):
        lay = layout(3)
        rng = np.random.default_rng(2024)
        states = [random_state(qubits(3), rng) for _ in range(25)]
        for req, ans in itertools.permutations(range(3), 2):
            subset_case = set(lay.subsets[req]) < set(lay.subsets[ans])
            for phi in states:
                rho = reduced_density(phi, [ans])
                sigma = sigma_zero_overlap(lay, req, ans, rho)
                closed = mixed_answer_pass_probability(lay, req, ans, sigma)
                dense = dense_codespace_pass_probability(lay, phi, req, ans)
                assert abs(closed - dense) <= 1e-10
                assert closed <= 0.5 + 1e-12
                if subset_case:
                    assert closed == 0.5


def test_criterion_3_completeness_formula():
    with criterion(3, "honest acceptance == 1 - <H>/(2m) on groundstates", 10.0):
        rng = np.random.default_rng(7)
        shapes = [(2, 1, 2, 1), (3, 3, 2, 2), (3, 2, 2, 2), (2, 3, 2, 2), (3, 1, 2, 1)]
        for seed in range(10):
            n, m, l, k = shapes[seed % len(shapes)]
            inst = gen_random(n, m, l, k, 0.2, 0.8, seed=seed).instance
            game = slh_to_game(inst)
            f = tuple(int(x) for x in rng.integers(0, l, size=m))
            energy, psi = groundstate_energy(select(game.slh, f))
            acc = accept_probability(game, honest_strategy(game, f, psi))
            assert abs(acc - (1.0 - energy / (2 * m))) <= 1e-9


def test_criterion_4_value_identity_and_thresholds():
    with criterion(4, "game value == 1 - E_min/(2m); mapped thresholds hold", 120.0):
        for inst in corpus_small(10):
            sol = solve_exact(inst)
            game = slh_to_game(inst)
            value, _ = game_value(game)
            assert abs(value - (1.0 - sol.energy / (2 * inst.m))) <= 1e-9
            alpha, beta = mapped_game_thresholds(inst.a, inst.b)
            verdict = decide_slh(inst)
            if verdict is Verdict.YES:
                assert value >= alpha - 1e-9
            elif verdict is Verdict.NO:
                assert value <= beta + 1e-9


def test_criterion_5_hybrid_monotonicity():
    with criterion(5, "single-question honest->cheat never increases acceptance", 120.0):
        for inst in corpus_small(10):
            sol = solve_exact(inst)
            game = slh_to_game(inst)
            hs = honest_strategy(game, sol.assignment, sol.state)
            base = accept_probability(game, hs)
            for i in range(game.m):
                for cheat in itertools.permutations(range(game.n), game.k):
                    if cheat == hs.answers[i]:
                        continue
                    answers = hs.answers[:i] + (cheat,) + hs.answers[i + 1:]
                    acc = accept_probability(game, Strategy(hs.assignment, answers, hs.state))
                    assert acc <= base + 1e-12


def test_criterion_6_reduction_chain():
    with criterion(6, "full reduction chain on 20 seeded instances", 300.0):
        shapes = [(2, 1, 2, 1), (3, 2, 2, 2), (2, 2, 2, 2), (3, 1, 2, 2), (3, 2, 2, 1)]
        for seed in range(20):
            n, m, l, k = shapes[seed % len(shapes)]
            maker = (gen_yes, gen_no, gen_random)[seed % 3]
            inst = maker(n, m, l, k, 0.2, 0.8, seed=100 + seed).instance
            report = run_check_chain(inst, seed=seed)
            assert report.cap_exceeded is None, report.render()
            assert report.passed, report.render()


def test_criterion_7_oracle_cross_check():
    with criterion(7, "logical-subspace acceptance == dense oracle", 120.0):
        rng = np.random.default_rng(99)
        for inst in corpus_small(10):
            game = slh_to_game(inst)
            sol = solve_exact(inst)
            strategies = [honest_strategy(game, sol.assignment, sol.state)]
            hs = strategies[0]
            for i in range(game.m):
                for cheat in itertools.permutations(range(game.n), game.k):
                    if cheat != hs.answers[i]:
                        answers = hs.answers[:i] + (cheat,) + hs.answers[i + 1:]
                        strategies.append(Strategy(hs.assignment, answers, hs.state))
                        break
            for _ in range(3):
                f = tuple(int(x) for x in rng.integers(0, game.l, size=game.m))
                answers = tuple(
                    tuple(int(q) for q in rng.choice(game.n, size=game.k, replace=False))
                    for _ in range(game.m))
                strategies.append(Strategy(f, answers, random_state(qubits(game.n), rng)))
            for s in strategies:
                structured = accept_probability(game, s)
                dense = dense_accept_probability(game, s)
                assert abs(structured - dense) <= 1e-9


def test_criterion_8_degeneration_to_plain_instances():
    with criterion(8, "l=1 set instances reproduce plain groundstate energies", 60.0):
        shapes = [(2, 2, 1, 1), (3, 2, 1, 2), (2, 3, 1, 2), (3, 1, 1, 1), (3, 3, 1, 2)]
        for seed in range(10):
            n, m, l, k = shapes[seed % len(shapes)]
            inst = gen_random(n, m, l, k, 0.2, 0.8, seed=200 + seed).instance
            sol = solve_exact(inst)
            energy, _ = groundstate_energy(as_lh(inst))
            assert abs(sol.energy - energy) <= 1e-10
