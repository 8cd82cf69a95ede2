"""Local Hamiltonian terms, instances, assembly and groundstate energy.

A term is a positive contraction (0 <= H <= 1) acting on at most ``k`` of the
``n`` qubits.  An instance is a list of terms plus promise thresholds
``a < b``; deciding compares the groundstate energy of the term sum against
``a*m`` and ``b*m``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .qla import (
    QOperator,
    QState,
    embed_local,
    hermitian_eig,
    permute_operator_factors,
    qubits,
    reduced_density,
    require_psd_contraction,
)


class Verdict(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    PROMISE_VIOLATED = "PROMISE_VIOLATED"


@dataclass(frozen=True, eq=False)
class LocalTerm:
    """A positive contraction acting on a few qubits of an n-qubit system.

    The support is canonicalized to ascending order at construction (the
    operator's factors are permuted to match), so equal terms have equal
    representations regardless of how the support was listed.
    """

    n: int
    support: tuple[int, ...]
    op: QOperator

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"LocalTerm: qubit count must be >= 1, got {self.n}")
        sup = tuple(int(s) for s in self.support)
        if not sup:
            raise ValidationError("LocalTerm: support must be non-empty")
        if len(set(sup)) != len(sup):
            raise ValidationError(f"LocalTerm: support indices must be distinct, got {sup}")
        for s in sup:
            if not 0 <= s < self.n:
                raise ValidationError(f"LocalTerm: support index {s} out of range [0, {self.n})")
        if self.op.shape.factors != (2,) * len(sup):
            raise ValidationError(
                f"LocalTerm: operator factors {self.op.shape.factors} are not "
                f"{len(sup)} qubits"
            )
        require_psd_contraction(self.op.entries, what="LocalTerm.op")
        order = sorted(range(len(sup)), key=lambda t: sup[t])
        if order != list(range(len(sup))):
            mat = permute_operator_factors(self.op.entries, [2] * len(sup), order)
            object.__setattr__(self, "op", QOperator(self.op.shape, mat))
            sup = tuple(sorted(sup))
        object.__setattr__(self, "support", sup)

    @property
    def locality(self) -> int:
        return len(self.support)


@dataclass(frozen=True, eq=False)
class LHInstance:
    n: int
    k: int
    terms: tuple[LocalTerm, ...]
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError(f"LHInstance: locality must be >= 1, got {self.k}")
        if not self.a < self.b:
            raise ValidationError(f"LHInstance: thresholds must satisfy a < b, got {self.a} >= {self.b}")
        for idx, t in enumerate(self.terms):
            if t.n != self.n:
                raise ValidationError(f"LHInstance: terms[{idx}] has n={t.n}, instance has n={self.n}")
            if t.locality > self.k:
                raise ValidationError(
                    f"LHInstance: terms[{idx}] acts on {t.locality} qubits, locality is {self.k}"
                )
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def m(self) -> int:
        return len(self.terms)


def assemble(instance: LHInstance, max_dim: int | None = None) -> QOperator:
    """Sum of all terms embedded into the full n-qubit space."""
    shape = qubits(instance.n, max_dim)
    total = np.zeros((shape.dim, shape.dim), dtype=np.complex128)
    for term in instance.terms:
        total += embed_local(term.op, term.support, shape).entries
    return QOperator(shape, total)


def groundstate_energy(instance: LHInstance, max_dim: int | None = None) -> tuple[float, QState]:
    """Minimum eigenvalue of the assembled instance and a state achieving it."""
    h = assemble(instance, max_dim)
    evals, evecs = hermitian_eig(h)
    return float(evals[0]), evecs[0]


def state_energy(terms: Sequence[LocalTerm], state: QState) -> float:
    """Expectation of a term sum in a given state, via reduced density matrices."""
    total = 0.0
    for term in terms:
        rho = reduced_density(state, term.support)
        total += float(np.real(np.trace(term.op.entries @ rho)))
    return total


def decide_lh(instance: LHInstance, max_dim: int | None = None) -> Verdict:
    """YES if energy <= a*m, NO if energy >= b*m, else the promise is violated."""
    energy, _ = groundstate_energy(instance, max_dim)
    m = instance.m
    if energy <= instance.a * m:
        return Verdict.YES
    if energy >= instance.b * m:
        return Verdict.NO
    return Verdict.PROMISE_VIOLATED
