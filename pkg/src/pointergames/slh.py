"""The set variant of the local Hamiltonian problem.

An instance carries ``m`` sets of ``l`` candidate terms each; an assignment
picks one representative per set.  Solving minimizes the groundstate energy
of the selected sum over all assignments, either exactly (full enumeration)
or by seeded single-site local search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import EnumerationCapError, ValidationError
from .hamiltonian import LHInstance, LocalTerm, Verdict, groundstate_energy
from .qla import QOperator, QState, qubits, random_contraction


@dataclass(frozen=True, eq=False)
class SLHInstance:
    """``m`` sets of exactly ``l`` candidate terms on ``n`` qubits.

    Ragged input sets are normalized by cycling their own terms until every
    set has exactly ``l`` entries.
    """

    n: int
    k: int
    sets: tuple[tuple[LocalTerm, ...], ...]
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError(f"SLHInstance: locality must be >= 1, got {self.k}")
        if not self.a < self.b:
            raise ValidationError(
                f"SLHInstance: thresholds must satisfy a < b, got {self.a} >= {self.b}"
            )
        sets = tuple(tuple(s) for s in self.sets)
        if sets:
            if any(not s for s in sets):
                raise ValidationError("SLHInstance: every set must contain at least one term")
            width = max(len(s) for s in sets)
            padded = []
            for s in sets:
                if len(s) < width:
                    cyc = itertools.cycle(s)
                    s = s + tuple(next(cyc) for _ in range(width - len(s)))
                padded.append(s)
            sets = tuple(padded)
        for i, group in enumerate(sets):
            for j, term in enumerate(group):
                if term.n != self.n:
                    raise ValidationError(
                        f"SLHInstance: sets[{i}][{j}] has n={term.n}, instance has n={self.n}"
                    )
                if term.locality > self.k:
                    raise ValidationError(
                        f"SLHInstance: sets[{i}][{j}] acts on {term.locality} qubits, "
                        f"locality is {self.k}"
                    )
        object.__setattr__(self, "sets", sets)

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def l(self) -> int:
        return len(self.sets[0]) if self.sets else 0


def check_assignment(instance: SLHInstance, assignment: Sequence[int]) -> tuple[int, ...]:
    f = tuple(int(x) for x in assignment)
    if len(f) != instance.m:
        raise ValidationError(f"assignment length {len(f)} != m={instance.m}")
    for i, j in enumerate(f):
        if not 0 <= j < instance.l:
            raise ValidationError(f"assignment[{i}]={j} out of range [0, {instance.l})")
    return f


def select(instance: SLHInstance, assignment: Sequence[int]) -> LHInstance:
    """The plain instance obtained by picking one representative per set."""
    f = check_assignment(instance, assignment)
    terms = tuple(instance.sets[i][f[i]] for i in range(instance.m))
    return LHInstance(instance.n, instance.k, terms, instance.a, instance.b)


def as_lh(instance: SLHInstance) -> LHInstance:
    """Degenerate an l=1 instance into a plain local Hamiltonian instance."""
    if instance.l != 1:
        raise ValidationError(f"as_lh: expected singleton sets, got l={instance.l}")
    return select(instance, (0,) * instance.m)


class ExactSolution(NamedTuple):
    energy: float
    assignment: tuple[int, ...]
    state: QState


class HeuristicSolution(NamedTuple):
    energy: float
    assignment: tuple[int, ...]
    state: QState


def solve_exact(instance: SLHInstance, max_enum: int | None = None,
                max_dim: int | None = None) -> ExactSolution:
    """Minimize groundstate energy over all assignments by full enumeration.

    Deterministic: ties are resolved toward the lexicographically smallest
    assignment.
    """
    cap = DEFAULT_CAPS.max_enum if max_enum is None else max_enum
    if instance.m > 0 and instance.l ** instance.m > cap:
        raise EnumerationCapError(
            f"solve_exact: {instance.l}^{instance.m} assignments exceed cap {cap}"
        )
    qubits(instance.n, max_dim)  # fail fast on the ambient dimension
    if instance.m == 0:
        shape = qubits(instance.n, max_dim)
        amp = np.zeros(shape.dim, dtype=np.complex128)
        amp[0] = 1.0
        return ExactSolution(0.0, (), QState(shape, amp))
    best: ExactSolution | None = None
    for f in itertools.product(range(instance.l), repeat=instance.m):
        energy, state = groundstate_energy(select(instance, f), max_dim)
        if best is None or energy < best.energy:
            best = ExactSolution(energy, f, state)
    assert best is not None
    return best


def solve_heuristic(instance: SLHInstance, budget: int, seed: int,
                    max_dim: int | None = None) -> HeuristicSolution:
    """Single-site local search over assignments with random restarts.

    Each step either applies the best improving single-coordinate change
    (ties toward the lowest coordinate/value) or restarts from a fresh seeded
    random assignment.  ``budget`` counts steps; 0 evaluates only the initial
    assignment.  The reported energy always upper-bounds the exact optimum.
    """
    rng = np.random.default_rng(seed)
    if instance.m == 0:
        exact = solve_exact(instance, max_dim=max_dim)
        return HeuristicSolution(exact.energy, exact.assignment, exact.state)

    def energy_of(f: tuple[int, ...]) -> tuple[float, QState]:
        return groundstate_energy(select(instance, f), max_dim)

    def draw() -> tuple[int, ...]:
        return tuple(int(x) for x in rng.integers(0, instance.l, size=instance.m))

    current = draw()
    cur_energy, cur_state = energy_of(current)
    best = HeuristicSolution(cur_energy, current, cur_state)
    for _ in range(budget):
        move: tuple[float, tuple[int, ...], QState] | None = None
        for i in range(instance.m):
            for j in range(instance.l):
                if j == current[i]:
                    continue
                cand = current[:i] + (j,) + current[i + 1:]
                e, st = energy_of(cand)
                if move is None or e < move[0]:
                    move = (e, cand, st)
        if move is not None and move[0] < cur_energy:
            cur_energy, current, cur_state = move[0], move[1], move[2]
        else:
            current = draw()
            cur_energy, cur_state = energy_of(current)
        if cur_energy < best.energy or (cur_energy == best.energy and current < best.assignment):
            best = HeuristicSolution(cur_energy, current, cur_state)
    return best


def decide_slh(instance: SLHInstance, max_enum: int | None = None,
               max_dim: int | None = None) -> Verdict:
    sol = solve_exact(instance, max_enum, max_dim)
    m = instance.m
    if sol.energy <= instance.a * m:
        return Verdict.YES
    if sol.energy >= instance.b * m:
        return Verdict.NO
    return Verdict.PROMISE_VIOLATED


# ---------------------------------------------------------------------------
# seeded instance generators


class GeneratedInstance(NamedTuple):
    instance: SLHInstance
    planted_assignment: tuple[int, ...] | None
    planted_state: QState | None


def _random_support(rng: np.random.Generator, n: int, k: int) -> tuple[int, ...]:
    return tuple(sorted(rng.choice(n, size=min(k, n), replace=False).tolist()))


def _term(n: int, support: Sequence[int], mat: np.ndarray) -> LocalTerm:
    shape = qubits(len(support))
    return LocalTerm(n, tuple(support), QOperator(shape, mat))


def _validate_gen_params(n: int, m: int, l: int, k: int, a: float, b: float) -> None:
    if n < 1 or m < 1 or l < 1 or k < 1:
        raise ValidationError("generator: n, m, l, k must all be >= 1")
    if k > n:
        raise ValidationError(f"generator: locality k={k} exceeds qubit count n={n}")
    if not 0.0 <= a < b <= 1.0:
        raise ValidationError(f"generator: thresholds must satisfy 0 <= a < b <= 1, got a={a}, b={b}")


def gen_yes(n: int, m: int, l: int, k: int, a: float, b: float, seed: int) -> GeneratedInstance:
    """Instance with a planted assignment/state of energy exactly zero.

    For each set, the planted representative is ``identity - projector`` onto
    the planted product state restricted to the term's support, so the
    planted state certifies YES by construction.
    """
    _validate_gen_params(n, m, l, k, a, b)
    rng = np.random.default_rng(seed)
    locals_ = []
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        locals_.append(v / np.linalg.norm(v))
    planted_f = tuple(int(x) for x in rng.integers(0, l, size=m))
    sets = []
    for i in range(m):
        support = _random_support(rng, n, k)
        group: list[LocalTerm] = []
        for j in range(l):
            if j == planted_f[i]:
                xi = locals_[support[0]]
                for q in support[1:]:
                    xi = np.kron(xi, locals_[q])
                mat = np.eye(2 ** len(support), dtype=np.complex128) - np.outer(xi, xi.conj())
            else:
                mat = random_contraction(2 ** len(support), rng)
            group.append(_term(n, support, mat))
        sets.append(tuple(group))
    state_vec = locals_[0]
    for q in range(1, n):
        state_vec = np.kron(state_vec, locals_[q])
    instance = SLHInstance(n, k, tuple(sets), a, b)
    return GeneratedInstance(instance, planted_f, QState(qubits(n), state_vec))


def gen_no(n: int, m: int, l: int, k: int, a: float, b: float, seed: int) -> GeneratedInstance:
    """Instance whose every term is bounded below by (1 - eps) * identity.

    With eps chosen below 1-b, every assignment has energy >= b*m; callers
    certify via :func:`solve_exact`.
    """
    _validate_gen_params(n, m, l, k, a, b)
    rng = np.random.default_rng(seed)
    eps = 0.9 * (1.0 - b)
    sets = []
    for _ in range(m):
        support = _random_support(rng, n, k)
        d = 2 ** len(support)
        group = tuple(
            _term(n, support, (1.0 - eps) * np.eye(d, dtype=np.complex128)
                  + eps * random_contraction(d, rng))
            for _ in range(l)
        )
        sets.append(group)
    return GeneratedInstance(SLHInstance(n, k, tuple(sets), a, b), None, None)


def gen_random(n: int, m: int, l: int, k: int, a: float, b: float, seed: int) -> GeneratedInstance:
    """Uncertified instance with fully random contraction terms."""
    _validate_gen_params(n, m, l, k, a, b)
    rng = np.random.default_rng(seed)
    sets = []
    for _ in range(m):
        support = _random_support(rng, n, k)
        d = 2 ** len(support)
        group = tuple(_term(n, support, random_contraction(d, rng)) for _ in range(l))
        sets.append(group)
    return GeneratedInstance(SLHInstance(n, k, tuple(sets), a, b), None, None)
