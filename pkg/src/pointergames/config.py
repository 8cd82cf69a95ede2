"""Central numeric tolerances and resource caps.

Every tolerance used anywhere in the package lives in :class:`Tolerances` so
that reproducibility has a single knob.  Operations accept an optional
``tol``/``caps`` argument and fall back to the module defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances for the numeric invariants of the package."""

    hermitian: float = 1e-12        # M == M† entrywise
    unit_norm: float = 1e-12        # state vectors
    psd: float = 1e-10              # min eigenvalue >= -psd; contraction max <= 1+psd
    trace: float = 1e-10            # density-matrix trace
    isometry: float = 1e-12         # E†E == identity
    projector: float = 1e-12        # P² == P == P†
    eig_residual: float = 1e-9      # eigendecomposition reconstruction (Frobenius)
    orthonormal: float = 1e-10      # eigenvector Gram matrix
    identity_map: float = 1e-12     # exact linear identities (proof/energy bijection)
    probability: float = 1e-10      # probabilities inside [0,1]; closed form vs dense
    value_match: float = 1e-9       # game value / acceptance identities
    monotonic_slack: float = 1e-12  # honest-vs-cheat comparisons


@dataclass(frozen=True)
class Caps:
    """Hard resource limits; exceeding one raises instead of thrashing."""

    max_dim: int = 2**20     # largest ambient Hilbert-space dimension
    max_enum: int = 10**6    # largest assignment/strategy enumeration


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_CAPS = Caps()


def tolerances(**overrides: float) -> Tolerances:
    return replace(DEFAULT_TOLERANCES, **overrides)


def caps(max_dim: int | None = None, max_enum: int | None = None) -> Caps:
    return Caps(
        max_dim=DEFAULT_CAPS.max_dim if max_dim is None else max_dim,
        max_enum=DEFAULT_CAPS.max_enum if max_enum is None else max_enum,
    )
