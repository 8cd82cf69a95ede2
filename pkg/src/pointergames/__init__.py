"""Exact desk-scale solving and cross-checking of three equivalent problems:
set local Hamiltonians, swap-prover games over GHZ-like encodings, and
pointer proof systems."""

__version__ = "0.1.0"

from .config import Caps, DEFAULT_CAPS, DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionCapError,
    EnumerationCapError,
    PointergamesError,
    ValidationError,
)
from .qla import (
    DensityMatrix,
    HilbertShape,
    QOperator,
    QState,
    embed_local,
    hermitian_eig,
    partial_trace,
    qubits,
)
from .hamiltonian import (
    LHInstance,
    LocalTerm,
    Verdict,
    assemble,
    decide_lh,
    groundstate_energy,
    state_energy,
)
from .slh import (
    SLHInstance,
    as_lh,
    decide_slh,
    gen_no,
    gen_random,
    gen_yes,
    select,
    solve_exact,
    solve_heuristic,
)
from .encoding import (
    BlockIsometry,
    CodespaceProjector,
    EncodingLayout,
    decode_block,
    encode_state,
    isometry,
    layout,
    mixed_answer_pass_probability,
    projector,
)
from .game import (
    Game,
    Strategy,
    accept_probability,
    acceptance_operator,
    decide_game,
    game_value,
    honest_strategy,
    per_question_stats,
)
from .pointer import (
    PointerCheck,
    PointerProof,
    PointerVerifier,
    decide_pointer,
    pointer_value,
)
from .reductions import (
    game_to_pointer,
    mapped_game_thresholds,
    pointer_to_slh,
    proof_to_strategy,
    slh_to_game,
    strategy_to_proof,
)
from .checks import RunReport, run_check_chain

__all__ = [
    "__version__",
    "Caps", "DEFAULT_CAPS", "DEFAULT_TOLERANCES", "Tolerances",
    "PointergamesError", "ValidationError", "DimensionCapError", "EnumerationCapError",
    "HilbertShape", "QState", "QOperator", "DensityMatrix",
    "embed_local", "partial_trace", "hermitian_eig", "qubits",
    "LocalTerm", "LHInstance", "Verdict",
    "assemble", "groundstate_energy", "state_energy", "decide_lh",
    "SLHInstance", "select", "solve_exact", "solve_heuristic", "decide_slh",
    "as_lh", "gen_yes", "gen_no", "gen_random",
    "EncodingLayout", "BlockIsometry", "CodespaceProjector",
    "layout", "isometry", "projector", "encode_state", "decode_block",
    "mixed_answer_pass_probability",
    "Game", "Strategy", "honest_strategy", "accept_probability",
    "acceptance_operator", "game_value", "decide_game", "per_question_stats",
    "PointerVerifier", "PointerCheck", "PointerProof",
    "pointer_value", "decide_pointer",
    "pointer_to_slh", "slh_to_game", "game_to_pointer",
    "strategy_to_proof", "proof_to_strategy", "mapped_game_thresholds",
    "RunReport", "run_check_chain",
]
