"""Batch command-line front end; JSON in, JSON out.

Thin client over the core package: every subcommand parses arguments, loads
JSON, calls the corresponding library function and emits a run report.  Exit
codes: 0 ok, 1 check failure, 2 invalid input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time

from .checks import CheckResult, RunReport, run_check_chain
from .config import caps as make_caps, tolerances
from .errors import DimensionCapError, EnumerationCapError, PointergamesError, ValidationError
from .game import accept_probability, game_value, per_question_stats
from .oracle import sample_play
from .pointer import pointer_value
from .reductions import game_to_pointer, pointer_to_slh, slh_to_game
from .serialize import (
    canonical_dumps,
    digest,
    dump_json_file,
    game_from_json,
    game_to_json,
    layout_to_json,
    load_json_file,
    proof_to_json,
    slh_from_json,
    slh_to_json,
    strategy_from_json,
    strategy_to_json,
    verifier_from_json,
    verifier_to_json,
)
from .slh import decide_slh, gen_no, gen_random, gen_yes, solve_exact

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_CAP_EXCEEDED = 3


def _add_cap_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-enum", type=int, default=None,
                        help="enumeration cap (default 10^6)")
    parser.add_argument("--max-dim", type=int, default=None,
                        help="ambient dimension cap (default 2^20)")


def _emit(report: RunReport, out: str | None) -> None:
    print(report.render())
    if out:
        dump_json_file(report.to_dict(), out)


def _report(command: str, params: dict, seed: int | None = None,
            input_digest: str | None = None) -> RunReport:
    return RunReport(command=command, params=params, seed=seed, input_digest=input_digest)


def cmd_gen(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    generators = {"slh-yes": gen_yes, "slh-no": gen_no, "slh-random": gen_random}
    generated = generators[args.kind](args.n, args.m, args.l, args.k, args.a, args.b, args.seed)
    payload = slh_to_json(generated.instance)
    dump_json_file(payload, args.out)
    report = _report("gen", {"kind": args.kind, "n": args.n, "m": args.m, "l": args.l,
                             "k": args.k, "a": args.a, "b": args.b, "out": args.out},
                     seed=args.seed, input_digest=digest(payload))
    caps = make_caps(args.max_dim, args.max_enum)
    if args.kind in ("slh-yes", "slh-no"):
        verdict = decide_slh(generated.instance, caps.max_enum, caps.max_dim)
        wanted = "YES" if args.kind == "slh-yes" else "NO"
        report.results["verdict"] = verdict.value
        report.checks.append(CheckResult(
            "generator-certification", verdict.value == wanted, None, verdict.value,
            f"solve_exact certifies the planted {wanted} label"))
    report.wall_time_s = time.perf_counter() - started
    _emit(report, None)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def cmd_solve_slh(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    data = load_json_file(args.instance)
    instance = slh_from_json(data)
    caps = make_caps(args.max_dim, args.max_enum)
    sol = solve_exact(instance, caps.max_enum, caps.max_dim)
    verdict = decide_slh(instance, caps.max_enum, caps.max_dim)
    report = _report("solve-slh", {"instance": args.instance}, input_digest=digest(data))
    report.results.update({
        "e_min": sol.energy,
        "assignment": list(sol.assignment),
        "verdict": verdict.value,
        "thresholds": {"a*m": instance.a * instance.m, "b*m": instance.b * instance.m},
    })
    report.wall_time_s = time.perf_counter() - started
    _emit(report, args.out)
    return EXIT_OK


def cmd_build_game(args: argparse.Namespace) -> int:
    data = load_json_file(args.instance)
    game = slh_to_game(slh_from_json(data))
    dump_json_file(game_to_json(game), args.out)
    print(f"game written to {args.out} (n={game.n}, m={game.m}, provers={game.layout.provers})")
    return EXIT_OK


def cmd_play(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    game = game_from_json(load_json_file(args.game))
    strategy = strategy_from_json(load_json_file(args.strategy), game)
    report = _report("play", {"game": args.game, "strategy": args.strategy,
                              "mode": args.mode}, seed=args.seed,
                     input_digest=digest(load_json_file(args.game)))
    exact = accept_probability(game, strategy)
    report.results["accept_probability"] = exact
    stats = per_question_stats(game, strategy)
    report.results["per_question"] = [
        {"question": s.question, "pass_codespace": s.pass_codespace,
         "accept": s.accept, "contribution": s.contribution}
        for s in stats
    ]
    if args.mode == "sample":
        freq, stderr = sample_play(game, strategy, args.samples, args.seed)
        report.results["sampled_frequency"] = freq
        report.results["sampled_stderr"] = stderr
        report.checks.append(CheckResult(
            "sampled-vs-exact", abs(freq - exact) <= 4.0 * stderr + 1e-12,
            None, f"|delta|={abs(freq - exact):.3e}",
            f"{args.samples} plays, 4 standard errors = {4.0 * stderr:.3e}"))
    report.wall_time_s = time.perf_counter() - started
    _emit(report, args.out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def cmd_value(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    game = game_from_json(load_json_file(args.game))
    caps = make_caps(args.max_dim, args.max_enum)
    result = game_value(game, caps.max_enum, caps.max_dim)
    report = _report("value", {"game": args.game},
                     input_digest=digest(load_json_file(args.game)))
    report.results["value"] = result.value
    report.results["best_assignment"] = list(result.best.assignment)
    report.results["best_answers"] = [list(a) for a in result.best.answers]
    report.wall_time_s = time.perf_counter() - started
    if args.out:
        dump_json_file(strategy_to_json(result.best), args.out)
        report.results["best_strategy_file"] = args.out
    _emit(report, None)
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    data = load_json_file(args.input)
    if args.direction == "pqpcp-to-slh":
        verifier = verifier_from_json(data)
        instance = pointer_to_slh(verifier, args.alpha, args.beta)
        dump_json_file(slh_to_json(instance), args.out)
        print(f"set instance written to {args.out} "
              f"(a={instance.a}, b={instance.b}, m={instance.m}, l={instance.l})")
    elif args.direction == "slh-to-game":
        game = slh_to_game(slh_from_json(data))
        dump_json_file(game_to_json(game), args.out)
        print(f"game written to {args.out} (provers={game.layout.provers})")
    else:  # game-to-pqpcp
        game = game_from_json(data)
        caps = make_caps(args.max_dim, args.max_enum)
        verifier = game_to_pointer(game, caps.max_enum)
        dump_json_file(verifier_to_json(verifier), args.out)
        print(f"pointer verifier written to {args.out} (alphabet={verifier.l})")
    return EXIT_OK


def cmd_pointer_value(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    verifier = verifier_from_json(load_json_file(args.verifier))
    caps = make_caps(args.max_dim, args.max_enum)
    result = pointer_value(verifier, caps.max_enum, caps.max_dim)
    report = _report("pointer-value", {"verifier": args.verifier})
    report.results["value"] = result.value
    report.results["best_y"] = list(result.best.y)
    report.wall_time_s = time.perf_counter() - started
    if args.out:
        dump_json_file(proof_to_json(result.best), args.out)
    _emit(report, None)
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    payload = layout_to_json(args.n)
    if args.out:
        dump_json_file(payload, args.out)
    print(canonical_dumps(payload), end="")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    data = load_json_file(args.instance)
    instance = slh_from_json(data)
    caps = make_caps(args.max_dim, args.max_enum)
    tol = tolerances(value_match=args.tolerance) if args.tolerance else None
    report = run_check_chain(instance, seed=args.seed, caps=caps, tol=tol)
    _emit(report, args.out)
    if report.cap_exceeded:
        return EXIT_CAP_EXCEEDED
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointergames",
        description="Exact solving and cross-checking of set local Hamiltonians, "
                    "swap-prover games, and pointer proof systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--kind", choices=["slh-yes", "slh-no", "slh-random"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    _add_cap_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve-slh", help="exact minimum over assignments")
    p.add_argument("instance")
    p.add_argument("--out", default=None, help="write the JSON report here")
    _add_cap_flags(p)
    p.set_defaults(func=cmd_solve_slh)

    p = sub.add_parser("build-game", help="wrap an instance as a playable game")
    p.add_argument("instance")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_game)

    p = sub.add_parser("play", help="evaluate a strategy on a game")
    p.add_argument("game")
    p.add_argument("strategy")
    p.add_argument("--mode", choices=["exact", "sample"], default="exact")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("value", help="brute-force the game value")
    p.add_argument("game")
    p.add_argument("--out", default=None, help="write the best strategy here")
    _add_cap_flags(p)
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("pointer-value", help="brute-force a pointer verifier's value")
    p.add_argument("verifier")
    p.add_argument("--out", default=None, help="write the best proof here")
    _add_cap_flags(p)
    p.set_defaults(func=cmd_pointer_value)

    p = sub.add_parser("reduce", help="translate between the three formulations")
    p.add_argument("direction", choices=["pqpcp-to-slh", "slh-to-game", "game-to-pqpcp"])
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--alpha", type=float, default=None,
                   help="acceptance threshold (pqpcp-to-slh only)")
    p.add_argument("--beta", type=float, default=None,
                   help="rejection threshold (pqpcp-to-slh only)")
    _add_cap_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("layout", help="dump the qubit -> prover-subset layout as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("check", help="run the full reduction chain and assert identities")
    p.add_argument("instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the value-identity tolerance (default 1e-9)")
    p.add_argument("--out", default=None)
    _add_cap_flags(p)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reduce" and args.direction == "pqpcp-to-slh":
        if args.alpha is None or args.beta is None:
            parser.error("reduce pqpcp-to-slh requires --alpha and --beta")
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (DimensionCapError, EnumerationCapError) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except PointergamesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
