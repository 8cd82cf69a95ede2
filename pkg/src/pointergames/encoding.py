"""GHZ-like qudit encoding of logical qubits across provers.

Each of the ``n`` logical qubits is assigned a distinct non-empty subset of
the ``ceil(log2(n+1))`` provers (the subset for qubit ``i`` is the bitmask of
``i+1``).  The qubit is encoded into one four-dimensional qudit per prover:
the provers in the subset jointly hold a GHZ-like state over digits {0,1}
(logical 0) or {2,3} (logical 1), everyone else holds |0>.

Within a row of qudits, prover 0 is the most significant digit, matching the
package-wide big-endian convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import ValidationError
from .qla import DensityMatrix, HilbertShape, QState

QUDIT_DIM = 4
_I2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True)
class EncodingLayout:
    """Prover count and the qubit -> prover-subset map."""

    n: int
    provers: int
    subsets: tuple[tuple[int, ...], ...]

    def block_dim(self, qubit: int) -> int:
        """Dimension of the GHZ-carrying part of the qubit's row."""
        return QUDIT_DIM ** len(self.subsets[qubit])

    @property
    def row_dim(self) -> int:
        return QUDIT_DIM ** self.provers


def layout(n: int) -> EncodingLayout:
    """Canonical layout: qubit ``i`` goes to the bit positions of ``i + 1``."""
    if n < 1:
        raise ValidationError(f"layout: qubit count must be >= 1, got {n}")
    provers = max(1, math.ceil(math.log2(n + 1)))
    subsets = []
    for i in range(n):
        mask = i + 1
        subsets.append(tuple(p for p in range(provers) if mask >> p & 1))
    return EncodingLayout(n, provers, tuple(subsets))


def _check_qubit(lay: EncodingLayout, i: int, what: str) -> int:
    if not 0 <= i < lay.n:
        raise ValidationError(f"{what}: qubit index {i} out of range [0, {lay.n})")
    return i


@dataclass(frozen=True, eq=False)
class BlockIsometry:
    """Isometry from one logical qubit into its row of prover qudits."""

    qubit: int
    matrix: np.ndarray  # (4**provers, 2)


@dataclass(frozen=True, eq=False)
class CodespaceProjector:
    """Rank-2 projector onto the GHZ-like span on a qubit's subset qudits."""

    qubit: int
    matrix: np.ndarray  # (4**|subset|, 4**|subset|)


def _uniform_index(digit: int, length: int) -> int:
    """Index of the basis vector with every qudit equal to ``digit``."""
    idx = 0
    for _ in range(length):
        idx = idx * QUDIT_DIM + digit
    return idx


def isometry(lay: EncodingLayout, i: int) -> BlockIsometry:
    """Columns are the encodings of |0> and |1> over the full qudit row."""
    _check_qubit(lay, i, "isometry")
    p = lay.provers
    subset = lay.subsets[i]
    mat = np.zeros((QUDIT_DIM ** p, 2), dtype=np.complex128)
    for logical, digits in enumerate(((0, 1), (2, 3))):
        for d in digits:
            idx = 0
            for prover in range(p):
                idx = idx * QUDIT_DIM + (d if prover in subset else 0)
            mat[idx, logical] = 1.0 / math.sqrt(2.0)
    return BlockIsometry(i, mat)


def projector(lay: EncodingLayout, i: int) -> CodespaceProjector:
    """Half the sum of |u..u><v..v| over u,v in {0,1} plus the same over {2,3}."""
    _check_qubit(lay, i, "projector")
    q = len(lay.subsets[i])
    dim = QUDIT_DIM ** q
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for block in ((0, 1), (2, 3)):
        for u in block:
            for v in block:
                mat[_uniform_index(u, q), _uniform_index(v, q)] = 0.5
    return CodespaceProjector(i, mat)


def encode_state(lay: EncodingLayout, phi: QState, blocks=None,
                 max_dim: int | None = None) -> QState:
    """Encode the selected qubits of ``phi``; identity on the rest.

    The result's factors follow qubit order, with each selected qubit
    expanded in place into its ``provers`` qudits (prover order).
    """
    if phi.shape.factors != (2,) * lay.n:
        raise ValidationError(
            f"encode_state: state factors {phi.shape.factors} are not {lay.n} qubits"
        )
    if blocks is None:
        chosen = list(range(lay.n))
    else:
        chosen = sorted({_check_qubit(lay, b, "encode_state") for b in blocks})
    factors: list[int] = []
    for i in range(lay.n):
        factors.extend([QUDIT_DIM] * lay.provers if i in chosen else [2])
    shape = HilbertShape(tuple(factors), max_dim)
    t = phi.amplitudes.reshape((2,) * lay.n)
    for i in chosen:
        e = isometry(lay, i).matrix
        t = np.moveaxis(np.tensordot(e, t, axes=([1], [i])), 0, i)
    return QState(shape, t.reshape(-1))


def decode_block(lay: EncodingLayout, i: int, rho: DensityMatrix) -> tuple[DensityMatrix, float]:
    """Invert the encoding on one full qudit row, as a channel.

    Returns the (subnormalized) logical qubit state together with the mass
    outside the isometry's image; that mass is treated as rejection by the
    game verifier.
    """
    _check_qubit(lay, i, "decode_block")
    expected = (QUDIT_DIM,) * lay.provers
    if rho.shape.factors != expected:
        raise ValidationError(
            f"decode_block: density factors {rho.shape.factors} != row factors {expected}"
        )
    e = isometry(lay, i).matrix
    logical = e.conj().T @ rho.entries @ e
    out = DensityMatrix(HilbertShape((2,)), logical, subnormalized=True)
    return out, 1.0 - out.trace


# ---------------------------------------------------------------------------
# closed-form crosstalk algebra for wrong-block answers
#
# When the verifier asks for qubit `requested` and receives the row of qubit
# `answered`, everything it does factors through two 2x2 operators on the
# answered logical qubit: the codespace test and the decode map.


def codespace_pass_operator(lay: EncodingLayout, requested: int, answered: int) -> np.ndarray:
    """2x2 operator C with Tr(C rho) = Pr[codespace test passes].

    ``rho`` is the answered qubit's reduced logical state.  Honest answers
    give the identity; wrong blocks give either half the identity (requested
    subset inside the answered one, or disjoint from it) or diag(1/4, 0).
    """
    _check_qubit(lay, requested, "codespace_pass_operator")
    _check_qubit(lay, answered, "codespace_pass_operator")
    if requested == answered:
        return _I2.copy()
    req = set(lay.subsets[requested])
    ans = set(lay.subsets[answered])
    if req <= ans or not req & ans:
        return 0.5 * _I2
    out = np.zeros((2, 2), dtype=np.complex128)
    out[0, 0] = 0.25
    return out


def decode_cross_operator(lay: EncodingLayout, requested: int, answered: int) -> np.ndarray:
    """2x2 map E_requested† E_answered on the answered logical qubit.

    For any wrong block this is |0><0| / 2 regardless of the subset overlap:
    only the all-zero basis component survives both encodings.
    """
    _check_qubit(lay, requested, "decode_cross_operator")
    _check_qubit(lay, answered, "decode_cross_operator")
    if requested == answered:
        return _I2.copy()
    out = np.zeros((2, 2), dtype=np.complex128)
    out[0, 0] = 0.5
    return out


def sigma_zero_overlap(lay: EncodingLayout, requested: int, answered: int,
                       rho_answered: np.ndarray) -> float:
    """The <0..0| sigma |0..0> scalar on the subset intersection.

    ``sigma`` is the answered row's reduced state on the qudits shared with
    the requested subset; for an empty intersection it is the scalar 1.
    """
    req = set(lay.subsets[requested])
    ans = set(lay.subsets[answered])
    if not req & ans:
        return 1.0
    return 0.5 * float(np.real(rho_answered[0, 0]))


def mixed_answer_pass_probability(lay: EncodingLayout, requested: int, answered: int,
                                  sigma_overlap: float) -> float:
    """Probability that a wrong-block answer passes the codespace test.

    Exactly 1/2 when the requested subset sits inside the answered one;
    otherwise ``sigma_overlap / 2``, which never exceeds 1/2.
    """
    _check_qubit(lay, requested, "mixed_answer_pass_probability")
    _check_qubit(lay, answered, "mixed_answer_pass_probability")
    if requested == answered:
        raise ValidationError("mixed_answer_pass_probability: requested == answered")
    if not 0.0 <= sigma_overlap <= 1.0 + DEFAULT_TOLERANCES.probability:
        raise ValidationError(
            f"mixed_answer_pass_probability: sigma_overlap {sigma_overlap!r} outside [0, 1]"
        )
    req = set(lay.subsets[requested])
    ans = set(lay.subsets[answered])
    if req < ans:
        return 0.5
    return 0.5 * min(sigma_overlap, 1.0)
