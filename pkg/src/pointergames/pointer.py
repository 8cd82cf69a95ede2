"""Pointer proof systems: a classical pointer string plus a quantum proof.

The verifier reads one uniformly random position of the classical string and
then measures a rejection POVM element, chosen by the position and its value,
on a few qubits of the quantum proof.  The model is extensional: one
rejection operator per (position, value) pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import EnumerationCapError, ValidationError
from .hamiltonian import Verdict
from .qla import (
    QOperator,
    QState,
    embed_local,
    qubits,
    reduced_density,
    require_psd_contraction,
)


@dataclass(frozen=True, eq=False)
class PointerCheck:
    """Rejection POVM element on a few proof qubits (support in slot order)."""

    support: tuple[int, ...]
    reject: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", tuple(int(s) for s in self.support))
        mat = np.asarray(self.reject, dtype=np.complex128)
        d = 2 ** len(self.support)
        if mat.shape != (d, d):
            raise ValidationError(
                f"PointerCheck: reject shape {mat.shape} != ({d}, {d}) for support {self.support}"
            )
        require_psd_contraction(mat, what="PointerCheck.reject")
        object.__setattr__(self, "reject", mat)


@dataclass(frozen=True, eq=False)
class PointerVerifier:
    """Alphabet-indexed rejection operators for every pointer position."""

    m: int
    l: int
    p: int
    q: int
    checks: tuple[tuple[PointerCheck, ...], ...]  # checks[i][j]

    def __post_init__(self) -> None:
        if self.m < 1 or self.l < 1 or self.p < 1 or self.q < 1:
            raise ValidationError("PointerVerifier: m, l, p, q must all be >= 1")
        if len(self.checks) != self.m:
            raise ValidationError(
                f"PointerVerifier: {len(self.checks)} positions, declared m={self.m}"
            )
        for i, row in enumerate(self.checks):
            if len(row) != self.l:
                raise ValidationError(
                    f"PointerVerifier: checks[{i}] has {len(row)} values, declared l={self.l}"
                )
            for j, check in enumerate(row):
                if len(check.support) > self.q:
                    raise ValidationError(
                        f"PointerVerifier: checks[{i}][{j}] touches {len(check.support)} "
                        f"qubits, locality is {self.q}"
                    )
                if len(set(check.support)) != len(check.support):
                    raise ValidationError(
                        f"PointerVerifier: checks[{i}][{j}] support not distinct"
                    )
                for s in check.support:
                    if not 0 <= s < self.p:
                        raise ValidationError(
                            f"PointerVerifier: checks[{i}][{j}] support index {s} "
                            f"out of range [0, {self.p})"
                        )
        object.__setattr__(self, "checks", tuple(tuple(row) for row in self.checks))


@dataclass(frozen=True, eq=False)
class PointerProof:
    y: tuple[int, ...]
    psi: QState


def validate_proof(verifier: PointerVerifier, proof: PointerProof) -> None:
    if len(proof.y) != verifier.m:
        raise ValidationError(f"proof.y: length {len(proof.y)} != m={verifier.m}")
    for i, v in enumerate(proof.y):
        if not 0 <= v < verifier.l:
            raise ValidationError(f"proof.y[{i}]={v} out of range [0, {verifier.l})")
    if proof.psi.shape.factors != (2,) * verifier.p:
        raise ValidationError(
            f"proof.psi: factors {proof.psi.shape.factors} are not {verifier.p} qubits"
        )


def accept_probability(verifier: PointerVerifier, proof: PointerProof) -> float:
    """1 minus the mean rejection expectation over pointer positions."""
    validate_proof(verifier, proof)
    total = 0.0
    for i, v in enumerate(proof.y):
        check = verifier.checks[i][v]
        rho = reduced_density(proof.psi, check.support)
        total += float(np.real(np.trace(check.reject @ rho)))
    return 1.0 - total / verifier.m


def rejection_sum(verifier: PointerVerifier, y: Sequence[int],
                  max_dim: int | None = None) -> QOperator:
    """Sum of the selected rejection operators embedded on the full proof space."""
    shape = qubits(verifier.p, max_dim)
    total = np.zeros((shape.dim, shape.dim), dtype=np.complex128)
    for i, v in enumerate(y):
        check = verifier.checks[i][int(v)]
        op = QOperator(qubits(len(check.support)), check.reject)
        total += embed_local(op, check.support, shape).entries
    return QOperator(shape, total)


class PointerValue(NamedTuple):
    value: float
    best: PointerProof


def pointer_value(verifier: PointerVerifier, max_enum: int | None = None,
                  max_dim: int | None = None) -> PointerValue:
    """Brute-force maximum acceptance over all proofs.

    For each classical string the optimum quantum part is the bottom
    eigenvector of the selected rejection sum; the classical strings are
    enumerated exhaustively.
    """
    cap = DEFAULT_CAPS.max_enum if max_enum is None else max_enum
    if verifier.l ** verifier.m > cap:
        raise EnumerationCapError(
            f"pointer_value: {verifier.l}^{verifier.m} pointer strings exceed cap {cap}"
        )
    best_value = -np.inf
    best: PointerProof | None = None
    for y in itertools.product(range(verifier.l), repeat=verifier.m):
        h = rejection_sum(verifier, y, max_dim)
        evals, evecs = np.linalg.eigh(h.entries)
        value = 1.0 - float(evals[0]) / verifier.m
        if value > best_value:
            best_value = value
            best = PointerProof(y, QState(h.shape, evecs[:, 0]))
    assert best is not None
    return PointerValue(best_value, best)


def decide_pointer(verifier: PointerVerifier, alpha: float, beta: float,
                   max_enum: int | None = None, max_dim: int | None = None) -> Verdict:
    if not alpha > beta:
        raise ValidationError(
            f"decide_pointer: thresholds must satisfy alpha > beta, got {alpha} <= {beta}"
        )
    value, _ = pointer_value(verifier, max_enum, max_dim)
    if value >= alpha:
        return Verdict.YES
    if value <= beta:
        return Verdict.NO
    return Verdict.PROMISE_VIOLATED
