"""JSON interchange for instances, games, strategies, verifiers and proofs.

Conventions (documented in the README): UTF-8 JSON, 0-based indices, complex
numbers as ``[re, im]`` pairs, matrices as flat row-major lists of pairs.
Loaders validate every invariant and report failures with the JSON path of
the offending element.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .encoding import layout
from .errors import ValidationError
from .game import Game, Strategy, validate_strategy
from .hamiltonian import LHInstance, LocalTerm
from .pointer import PointerCheck, PointerProof, PointerVerifier, validate_proof
from .qla import QOperator, QState, qubits
from .slh import SLHInstance, as_lh

# ---------------------------------------------------------------------------
# primitives


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ValidationError(f"{path}: {message}")


def _get(data: Any, key: str, path: str) -> Any:
    _require(isinstance(data, dict), path, f"expected an object with key {key!r}")
    _require(key in data, path, f"missing key {key!r}")
    return data[key]


def _int(value: Any, path: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
    return value


def _float(value: Any, path: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             path, "expected a number")
    return float(value)


def _int_list(value: Any, path: str) -> list[int]:
    _require(isinstance(value, list), path, "expected a list of integers")
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def pairs_to_vector(value: Any, dim: int, path: str) -> np.ndarray:
    _require(isinstance(value, list), path, "expected a list of [re, im] pairs")
    _require(len(value) == dim, path, f"expected {dim} entries, got {len(value)}")
    out = np.empty(dim, dtype=np.complex128)
    for i, pair in enumerate(value):
        _require(isinstance(pair, list) and len(pair) == 2, f"{path}[{i}]",
                 "expected a [re, im] pair")
        out[i] = complex(_float(pair[0], f"{path}[{i}][0]"), _float(pair[1], f"{path}[{i}][1]"))
    return out


def pairs_to_matrix(value: Any, dim: int, path: str) -> np.ndarray:
    flat = pairs_to_vector(value, dim * dim, path)
    return flat.reshape(dim, dim)


def vector_to_pairs(vec: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec).reshape(-1)]


def matrix_to_pairs(mat: np.ndarray) -> list[list[float]]:
    return vector_to_pairs(np.asarray(mat).reshape(-1))


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def digest(obj: Any) -> str:
    compact = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(compact.encode("utf-8")).hexdigest()


def load_json_file(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"{p}: cannot read file ({exc})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{p}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def dump_json_file(obj: Any, path: str | Path) -> None:
    Path(path).write_text(canonical_dumps(obj), encoding="utf-8")


# ---------------------------------------------------------------------------
# terms and instances


def term_to_json(term: LocalTerm) -> dict:
    return {"support": list(term.support), "matrix": matrix_to_pairs(term.op.entries)}


def term_from_json(data: Any, n: int, path: str) -> LocalTerm:
    support = _int_list(_get(data, "support", path), f"{path}.support")
    dim = 2 ** len(support)
    mat = pairs_to_matrix(_get(data, "matrix", path), dim, f"{path}.matrix")
    try:
        return LocalTerm(n, tuple(support), QOperator(qubits(len(support)), mat))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def slh_to_json(instance: SLHInstance) -> dict:
    return {
        "n": instance.n,
        "k": instance.k,
        "m": instance.m,
        "l": instance.l,
        "a": instance.a,
        "b": instance.b,
        "sets": [[term_to_json(t) for t in group] for group in instance.sets],
    }


def slh_from_json(data: Any, path: str = "instance") -> SLHInstance:
    n = _int(_get(data, "n", path), f"{path}.n")
    k = _int(_get(data, "k", path), f"{path}.k")
    m = _int(_get(data, "m", path), f"{path}.m")
    l = _int(_get(data, "l", path), f"{path}.l")
    a = _float(_get(data, "a", path), f"{path}.a")
    b = _float(_get(data, "b", path), f"{path}.b")
    sets_data = _get(data, "sets", path)
    _require(isinstance(sets_data, list), f"{path}.sets", "expected a list of sets")
    _require(len(sets_data) == m, f"{path}.sets", f"declared m={m} but found {len(sets_data)} sets")
    sets = []
    for i, group in enumerate(sets_data):
        gpath = f"{path}.sets[{i}]"
        _require(isinstance(group, list) and group, gpath, "expected a non-empty list of terms")
        _require(len(group) <= l, gpath, f"declared l={l} but found {len(group)} terms")
        terms = tuple(term_from_json(t, n, f"{gpath}[{j}]") for j, t in enumerate(group))
        if len(terms) < l:  # ragged input: pad by cycling the set's own terms
            terms = terms + tuple(terms[j % len(terms)] for j in range(l - len(terms)))
        sets.append(terms)
    try:
        return SLHInstance(n, k, tuple(sets), a, b)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def lh_to_json(instance: LHInstance) -> dict:
    return {
        "n": instance.n,
        "k": instance.k,
        "a": instance.a,
        "b": instance.b,
        "terms": [term_to_json(t) for t in instance.terms],
    }


def lh_from_json(data: Any, path: str = "instance") -> LHInstance:
    """Load a plain instance; an l=1 set instance is accepted as degenerate input."""
    if isinstance(data, dict) and "sets" in data:
        slh = slh_from_json(data, path)
        _require(slh.l == 1, f"{path}.l", "only l=1 set instances degenerate to plain instances")
        return as_lh(slh)
    n = _int(_get(data, "n", path), f"{path}.n")
    k = _int(_get(data, "k", path), f"{path}.k")
    a = _float(_get(data, "a", path), f"{path}.a")
    b = _float(_get(data, "b", path), f"{path}.b")
    terms_data = _get(data, "terms", path)
    _require(isinstance(terms_data, list), f"{path}.terms", "expected a list of terms")
    terms = tuple(term_from_json(t, n, f"{path}.terms[{i}]") for i, t in enumerate(terms_data))
    try:
        return LHInstance(n, k, terms, a, b)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# games and strategies


def game_to_json(game: Game) -> dict:
    return {
        "layout": {
            "n": game.layout.n,
            "provers": game.layout.provers,
            "subsets": [list(s) for s in game.layout.subsets],
        },
        "slh": slh_to_json(game.slh),
    }


def game_from_json(data: Any, path: str = "game") -> Game:
    slh = slh_from_json(_get(data, "slh", path), f"{path}.slh")
    game = Game.from_slh(slh)
    head = _get(data, "layout", path)
    declared = (
        _int(_get(head, "n", f"{path}.layout"), f"{path}.layout.n"),
        _int(_get(head, "provers", f"{path}.layout"), f"{path}.layout.provers"),
        tuple(tuple(_int_list(s, f"{path}.layout.subsets[{i}]"))
              for i, s in enumerate(_get(head, "subsets", f"{path}.layout"))),
    )
    actual = (game.layout.n, game.layout.provers, game.layout.subsets)
    _require(declared == actual, f"{path}.layout",
             f"header {declared} does not match the derived layout {actual}")
    return game


def strategy_to_json(strategy: Strategy) -> dict:
    return {
        "f": list(strategy.assignment),
        "answers": [list(a) for a in strategy.answers],
        "phi": vector_to_pairs(strategy.state.amplitudes),
    }


def strategy_from_json(data: Any, game: Game, path: str = "strategy") -> Strategy:
    f = _int_list(_get(data, "f", path), f"{path}.f")
    answers_data = _get(data, "answers", path)
    _require(isinstance(answers_data, list), f"{path}.answers", "expected a list of answer tuples")
    answers = tuple(tuple(_int_list(a, f"{path}.answers[{i}]"))
                    for i, a in enumerate(answers_data))
    phi = pairs_to_vector(_get(data, "phi", path), 2 ** game.n, f"{path}.phi")
    try:
        strategy = Strategy(tuple(f), answers, QState(qubits(game.n), phi))
        validate_strategy(game, strategy)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return strategy


# ---------------------------------------------------------------------------
# pointer verifiers and proofs


def verifier_to_json(verifier: PointerVerifier) -> dict:
    checks = []
    for i, row in enumerate(verifier.checks):
        for j, check in enumerate(row):
            checks.append({
                "i": i,
                "j": j,
                "support": list(check.support),
                "matrix": matrix_to_pairs(check.reject),
            })
    return {"m": verifier.m, "l": verifier.l, "p": verifier.p, "q": verifier.q,
            "checks": checks}


def verifier_from_json(data: Any, path: str = "verifier") -> PointerVerifier:
    m = _int(_get(data, "m", path), f"{path}.m")
    l = _int(_get(data, "l", path), f"{path}.l")
    p = _int(_get(data, "p", path), f"{path}.p")
    q = _int(_get(data, "q", path), f"{path}.q")
    checks_data = _get(data, "checks", path)
    _require(isinstance(checks_data, list), f"{path}.checks", "expected a list of checks")
    table: dict[tuple[int, int], PointerCheck] = {}
    for idx, entry in enumerate(checks_data):
        epath = f"{path}.checks[{idx}]"
        i = _int(_get(entry, "i", epath), f"{epath}.i")
        j = _int(_get(entry, "j", epath), f"{epath}.j")
        _require(0 <= i < m and 0 <= j < l, epath, f"(i={i}, j={j}) outside ({m}, {l})")
        _require((i, j) not in table, epath, f"duplicate check for (i={i}, j={j})")
        support = _int_list(_get(entry, "support", epath), f"{epath}.support")
        mat = pairs_to_matrix(_get(entry, "matrix", epath), 2 ** len(support), f"{epath}.matrix")
        try:
            table[(i, j)] = PointerCheck(tuple(support), mat)
        except ValidationError as exc:
            raise ValidationError(f"{epath}: {exc}") from exc
    missing = [(i, j) for i in range(m) for j in range(l) if (i, j) not in table]
    _require(not missing, f"{path}.checks", f"missing checks for pairs {missing[:4]}")
    rows = tuple(tuple(table[(i, j)] for j in range(l)) for i in range(m))
    try:
        return PointerVerifier(m, l, p, q, rows)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def proof_to_json(proof: PointerProof) -> dict:
    return {"y": list(proof.y), "psi": vector_to_pairs(proof.psi.amplitudes)}


def proof_from_json(data: Any, verifier: PointerVerifier, path: str = "proof") -> PointerProof:
    y = _int_list(_get(data, "y", path), f"{path}.y")
    psi = pairs_to_vector(_get(data, "psi", path), 2 ** verifier.p, f"{path}.psi")
    try:
        proof = PointerProof(tuple(y), QState(qubits(verifier.p), psi))
        validate_proof(verifier, proof)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return proof


def layout_to_json(n: int) -> dict:
    lay = layout(n)
    return {"n": lay.n, "provers": lay.provers, "subsets": [list(s) for s in lay.subsets]}
