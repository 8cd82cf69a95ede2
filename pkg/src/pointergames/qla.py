"""Dense complex linear algebra over small tensor-product Hilbert spaces.

Conventions used everywhere in the package:

* factor 0 is the most significant index digit (big-endian), which matches
  ``numpy.kron`` and C-order reshapes;
* all values are immutable after construction and safe to share across
  threads; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_CAPS, DEFAULT_TOLERANCES
from .errors import DimensionCapError, ValidationError


def as_complex_array(data, *, what: str = "array") -> np.ndarray:
    try:
        return np.asarray(data, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what}: not convertible to a complex array") from exc


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HilbertShape:
    """Tensor-product space described by its local factor dimensions."""

    factors: tuple[int, ...]
    max_dim: InitVar[int | None] = None

    def __post_init__(self, max_dim: int | None) -> None:
        factors = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ValidationError("HilbertShape: at least one factor required")
        if any(f < 2 for f in factors):
            raise ValidationError(f"HilbertShape: factor dimensions must be >= 2, got {factors}")
        cap = DEFAULT_CAPS.max_dim if max_dim is None else max_dim
        dim = 1
        for f in factors:
            dim *= f
        if dim > cap:
            raise DimensionCapError(f"HilbertShape: total dimension {dim} exceeds cap {cap}")
        object.__setattr__(self, "_dim", dim)

    @property
    def dim(self) -> int:
        return self._dim  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.factors)


def qubits(n: int, max_dim: int | None = None) -> HilbertShape:
    """Shape of an ``n``-qubit register."""
    if n < 0:
        raise ValidationError(f"qubit count must be >= 0, got {n}")
    if n == 0:
        raise ValidationError("qubits: zero-qubit shapes are not representable")
    return HilbertShape((2,) * n, max_dim)


@dataclass(frozen=True, eq=False)
class QState:
    """Unit vector over a :class:`HilbertShape`."""

    shape: HilbertShape
    amplitudes: np.ndarray
    atol: InitVar[float | None] = None

    def __post_init__(self, atol: float | None) -> None:
        amp = as_complex_array(self.amplitudes, what="QState.amplitudes").reshape(-1)
        if amp.size != self.shape.dim:
            raise ValidationError(
                f"QState: amplitude length {amp.size} != shape dimension {self.shape.dim}"
            )
        tol = DEFAULT_TOLERANCES.unit_norm if atol is None else atol
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > tol:
            raise ValidationError(f"QState: norm {norm!r} differs from 1 by more than {tol}")
        object.__setattr__(self, "amplitudes", _frozen(amp))


@dataclass(frozen=True, eq=False)
class QOperator:
    """Square complex operator over a :class:`HilbertShape`."""

    shape: HilbertShape
    entries: np.ndarray

    def __post_init__(self) -> None:
        mat = as_complex_array(self.entries, what="QOperator.entries")
        d = self.shape.dim
        if mat.shape != (d, d):
            raise ValidationError(f"QOperator: entries shape {mat.shape} != ({d}, {d})")
        object.__setattr__(self, "entries", _frozen(mat))

    def is_hermitian(self, atol: float | None = None) -> bool:
        tol = DEFAULT_TOLERANCES.hermitian if atol is None else atol
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)

    def dagger(self) -> "QOperator":
        return QOperator(self.shape, self.entries.conj().T)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian PSD matrix of trace one (or trace in [0,1] if subnormalized)."""

    shape: HilbertShape
    entries: np.ndarray
    subnormalized: bool = False
    atol: InitVar[float | None] = None

    def __post_init__(self, atol: float | None) -> None:
        mat = as_complex_array(self.entries, what="DensityMatrix.entries")
        d = self.shape.dim
        if mat.shape != (d, d):
            raise ValidationError(f"DensityMatrix: entries shape {mat.shape} != ({d}, {d})")
        tol = DEFAULT_TOLERANCES.trace if atol is None else atol
        if np.max(np.abs(mat - mat.conj().T)) > max(tol, DEFAULT_TOLERANCES.hermitian):
            raise ValidationError("DensityMatrix: not Hermitian")
        evals = np.linalg.eigvalsh(mat)
        if evals[0] < -tol:
            raise ValidationError(f"DensityMatrix: not PSD (min eigenvalue {evals[0]:.3e})")
        tr = float(np.real(np.trace(mat)))
        if self.subnormalized:
            if not -tol <= tr <= 1.0 + tol:
                raise ValidationError(f"DensityMatrix: subnormalized trace {tr!r} outside [0, 1]")
        elif abs(tr - 1.0) > tol:
            raise ValidationError(f"DensityMatrix: trace {tr!r} differs from 1 by more than {tol}")
        object.__setattr__(self, "entries", _frozen(mat))

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))


# ---------------------------------------------------------------------------
# validation helpers


def require_hermitian(mat: np.ndarray, *, atol: float | None = None, what: str = "operator") -> None:
    tol = DEFAULT_TOLERANCES.hermitian if atol is None else atol
    dev = float(np.max(np.abs(mat - mat.conj().T)))
    if dev > tol:
        raise ValidationError(f"{what}: not Hermitian (max deviation {dev:.3e} > {tol})")


def require_psd_contraction(mat: np.ndarray, *, atol: float | None = None, what: str = "operator") -> None:
    """Check 0 <= M <= identity within tolerance (Hermiticity included)."""
    tol = DEFAULT_TOLERANCES.psd if atol is None else atol
    require_hermitian(mat, what=what)
    evals = np.linalg.eigvalsh(mat)
    if evals[0] < -tol:
        raise ValidationError(f"{what}: not PSD (min eigenvalue {evals[0]:.3e})")
    if evals[-1] > 1.0 + tol:
        raise ValidationError(f"{what}: exceeds identity (max eigenvalue {evals[-1]:.3e})")


def _check_support(support: Sequence[int], n_factors: int, what: str) -> tuple[int, ...]:
    sup = tuple(int(s) for s in support)
    if len(set(sup)) != len(sup):
        raise ValidationError(f"{what}: support indices must be distinct, got {sup}")
    for s in sup:
        if not 0 <= s < n_factors:
            raise ValidationError(f"{what}: index {s} out of range [0, {n_factors})")
    return sup


# ---------------------------------------------------------------------------
# operations


def identity_operator(shape: HilbertShape) -> QOperator:
    return QOperator(shape, np.eye(shape.dim, dtype=np.complex128))


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def permute_operator_factors(mat: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of ``mat`` so new factor t is old factor perm[t]."""
    dims = list(dims)
    k = len(dims)
    t = mat.reshape(dims + dims)
    order = list(perm) + [k + p for p in perm]
    t = np.transpose(t, order)
    d = int(np.prod(dims))
    return np.ascontiguousarray(t.reshape(d, d))


def embed_local(op: QOperator, support: Sequence[int], shape: HilbertShape) -> QOperator:
    """Embed ``op`` on the listed factors of ``shape``, identity elsewhere.

    ``support`` is an ordered tuple: factor t of ``op`` lands on ambient factor
    ``support[t]``.  The spectrum of the result is that of ``op`` with
    multiplicity.
    """
    sup = _check_support(support, len(shape), "embed_local")
    if len(sup) != len(op.shape):
        raise ValidationError(
            f"embed_local: operator has {len(op.shape)} factors but support lists {len(sup)}"
        )
    for t, s in enumerate(sup):
        if op.shape.factors[t] != shape.factors[s]:
            raise ValidationError(
                f"embed_local: factor {t} of operator has dimension {op.shape.factors[t]} "
                f"but ambient factor {s} has dimension {shape.factors[s]}"
            )
    comp = [a for a in range(len(shape)) if a not in sup]
    comp_dim = int(np.prod([shape.factors[a] for a in comp], dtype=np.int64)) if comp else 1
    big = np.kron(op.entries, np.eye(comp_dim, dtype=np.complex128))
    src_order = list(sup) + comp           # factor sequence of `big`
    perm = [src_order.index(a) for a in range(len(shape))]
    dims = [shape.factors[a] for a in src_order]
    return QOperator(shape, permute_operator_factors(big, dims, perm))


def apply_on_factors(mat: np.ndarray, axes: Sequence[int], amps: np.ndarray,
                     factors: Sequence[int]) -> np.ndarray:
    """Apply a square operator to the listed factor axes of a state vector.

    The operator's factor order follows ``axes`` (which need not be sorted).
    """
    factors = tuple(factors)
    axes = list(axes)
    t = amps.reshape(factors)
    t = np.moveaxis(t, axes, range(len(axes)))
    head = [factors[a] for a in axes]
    rest = t.shape[len(axes):]
    t = mat @ t.reshape(int(np.prod(head, dtype=np.int64)), -1)
    t = t.reshape(head + list(rest))
    t = np.moveaxis(t, range(len(axes)), axes)
    return t.reshape(-1)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out all factors not listed in ``keep``.

    The result's factor order follows ``keep``; trace is preserved.
    """
    n = len(rho.shape)
    kp = list(_check_support(keep, n, "partial_trace"))
    rest = [a for a in range(n) if a not in kp]
    factors = rho.shape.factors
    dk = int(np.prod([factors[a] for a in kp], dtype=np.int64))
    dr = int(np.prod([factors[a] for a in rest], dtype=np.int64)) if rest else 1
    t = rho.entries.reshape(factors + factors)
    perm = kp + rest + [n + a for a in kp] + [n + a for a in rest]
    t = np.transpose(t, perm).reshape(dk, dr, dk, dr)
    out = np.einsum("arbr->ab", t)
    shape = HilbertShape(tuple(factors[a] for a in kp))
    return DensityMatrix(shape, out, subnormalized=rho.subnormalized)


def reduced_density(state: QState, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on the listed factors (raw array).

    Factor order of the result follows ``keep``.
    """
    n = len(state.shape)
    kp = list(_check_support(keep, n, "reduced_density"))
    rest = [a for a in range(n) if a not in kp]
    factors = state.shape.factors
    t = state.amplitudes.reshape(factors)
    t = np.transpose(t, kp + rest)
    dk = int(np.prod([factors[a] for a in kp], dtype=np.int64))
    m = t.reshape(dk, -1)
    return m @ m.conj().T


def hermitian_eig(op: QOperator, atol: float | None = None) -> tuple[np.ndarray, tuple[QState, ...]]:
    """Eigendecomposition of a Hermitian operator.

    Returns eigenvalues ascending and orthonormal eigenvectors as states.
    """
    tol = DEFAULT_TOLERANCES.hermitian if atol is None else atol
    require_hermitian(op.entries, atol=tol, what="hermitian_eig input")
    evals, evecs = np.linalg.eigh(op.entries)
    states = tuple(QState(op.shape, evecs[:, i]) for i in range(evecs.shape[1]))
    return evals, states


# ---------------------------------------------------------------------------
# seeded random constructions (tests, generators)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2.0


def random_contraction(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with spectrum exactly inside [0, 1]."""
    h = random_hermitian(dim, rng)
    evals = np.linalg.eigvalsh(h)
    lo, hi = float(evals[0]), float(evals[-1])
    if hi - lo < 1e-12:
        return np.eye(dim, dtype=np.complex128) / 2.0
    return (h - lo * np.eye(dim)) / (hi - lo)


def random_state(shape: HilbertShape, rng: np.random.Generator) -> QState:
    v = rng.normal(size=shape.dim) + 1j * rng.normal(size=shape.dim)
    return QState(shape, v / np.linalg.norm(v))


def random_projector(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    q, _ = np.linalg.qr(g)
    q = q[:, :rank]
    return q @ q.conj().T
