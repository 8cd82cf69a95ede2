import numpy as np
import pytest

from pointergames.errors import DimensionCapError, ValidationError
from pointergames.qla import (
    DensityMatrix,
    HilbertShape,
    QOperator,
    QState,
    embed_local,
    hermitian_eig,
    identity_operator,
    partial_trace,
    qubits,
    random_contraction,
    random_hermitian,
    random_projector,
    random_state,
    reduced_density,
)

Z = np.diag([1.0, -1.0]).astype(complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
P1 = np.diag([0.0, 1.0]).astype(complex)


def op(mat, n_factors=None, dims=None):
    if dims is None:
        dims = (2,) * (n_factors or int(np.log2(mat.shape[0])))
    return QOperator(HilbertShape(dims), mat)


def test_shape_cap_enforced():
    with pytest.raises(DimensionCapError):
        HilbertShape((2,) * 21)
    HilbertShape((2,) * 21, max_dim=2**21)  # raised cap is honored


def test_shape_rejects_trivial_factors():
    with pytest.raises(ValidationError):
        HilbertShape((2, 1))


def test_state_norm_validated():
    with pytest.raises(ValidationError):
        QState(qubits(1), np.array([1.0, 1.0]))


def test_embed_pauli_z_action():
    # eigenvalue of Z on the first qubit of |10>
    big = embed_local(op(Z), (0,), qubits(2))
    e10 = np.zeros(4, dtype=complex)
    e10[2] = 1.0
    assert np.vdot(e10, big.entries @ e10).real == pytest.approx(-1.0, abs=1e-12)


def test_embed_identity_is_identity():
    shape = qubits(3)
    for support in [(0,), (1,), (2,), (0, 2)]:
        eye = np.eye(2 ** len(support), dtype=complex)
        big = embed_local(op(eye), support, shape)
        assert np.allclose(big.entries, np.eye(8), atol=1e-14)


def test_embed_projector_trace_against_kron_oracle():
    # oracle: explicit Kronecker expansion with the projector in the middle slot
    expected = np.kron(np.kron(np.eye(2), P1), np.eye(2))
    got = embed_local(op(P1), (1,), qubits(3))
    assert np.allclose(got.entries, expected, atol=1e-14)
    assert np.trace(got.entries).real == pytest.approx(4.0)


def test_embed_unsorted_support_matches_permuted_kron():
    rng = np.random.default_rng(5)
    m = random_hermitian(4, rng)
    shape = qubits(3)
    direct = embed_local(op(m, dims=(2, 2)), (2, 0), shape).entries
    # oracle: swap the two factors of m, then embed on (0, 2) in sorted order
    swapped = m.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    expected = embed_local(op(swapped, dims=(2, 2)), (0, 2), shape).entries
    assert np.allclose(direct, expected, atol=1e-14)


def test_embed_errors():
    shape = qubits(2)
    with pytest.raises(ValidationError):
        embed_local(op(Z), (0, 1), shape)         # factor count mismatch
    with pytest.raises(ValidationError):
        embed_local(op(Z), (2,), shape)           # out of range
    with pytest.raises(ValidationError):
        embed_local(op(np.eye(4), dims=(4,)), (0,), shape)  # local dim mismatch


def test_partial_trace_bell_state():
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    rho = DensityMatrix(qubits(2), np.outer(bell, bell.conj()))
    for keep in ([0], [1]):
        out = partial_trace(rho, keep)
        assert np.allclose(out.entries, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_keep_all_is_identity_map():
    rng = np.random.default_rng(1)
    psi = random_state(qubits(2), rng)
    rho = DensityMatrix(qubits(2), np.outer(psi.amplitudes, psi.amplitudes.conj()))
    out = partial_trace(rho, [0, 1])
    assert np.allclose(out.entries, rho.entries, atol=1e-14)


def test_partial_trace_ghz_against_index_summation_oracle():
    ghz = np.zeros(8, dtype=complex)
    ghz[0] = ghz[7] = 1 / np.sqrt(2)
    rho = np.outer(ghz, ghz.conj())
    # oracle: explicit summation over the traced indices
    expected = np.zeros((2, 2), dtype=complex)
    t = rho.reshape(2, 2, 2, 2, 2, 2)
    for b in range(2):
        for c in range(2):
            expected += t[:, b, c, :, b, c]
    got = partial_trace(DensityMatrix(qubits(3), rho), [0])
    assert np.allclose(got.entries, expected, atol=1e-14)
    assert np.allclose(got.entries, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_product_state_recovers_factor():
    rng = np.random.default_rng(2)
    for _ in range(5):
        a = random_state(qubits(1), rng).amplitudes
        b = random_state(qubits(2), rng).amplitudes
        rho_a = np.outer(a, a.conj())
        rho_b = np.outer(b, b.conj())
        joint = DensityMatrix(qubits(3), np.kron(rho_a, rho_b))
        out = partial_trace(joint, [0])
        assert np.max(np.abs(out.entries - rho_a)) < 1e-12


def test_reduced_density_respects_keep_order():
    rng = np.random.default_rng(3)
    psi = random_state(qubits(3), rng)
    r01 = reduced_density(psi, [0, 1])
    r10 = reduced_density(psi, [1, 0])
    swap = r01.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    assert np.allclose(r10, swap, atol=1e-14)


def test_eig_diagonal_input():
    evals, evecs = hermitian_eig(op(np.diag([3.0, 1.0, 2.0]).astype(complex), dims=(3,)))
    assert np.allclose(evals, [1.0, 2.0, 3.0])
    assert len(evecs) == 3


def test_eig_pauli_x():
    evals, evecs = hermitian_eig(op(X))
    assert np.allclose(evals, [-1.0, 1.0])
    minus = np.array([1, -1], dtype=complex) / np.sqrt(2)
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    assert abs(abs(np.vdot(minus, evecs[0].amplitudes)) - 1.0) < 1e-12
    assert abs(abs(np.vdot(plus, evecs[1].amplitudes)) - 1.0) < 1e-12


def test_eig_reconstructs_random_hermitian():
    rng = np.random.default_rng(16)
    h = random_hermitian(16, rng)
    o = op(h, dims=(16,))
    evals, evecs = hermitian_eig(o)
    recon = sum(evals[i] * np.outer(evecs[i].amplitudes, evecs[i].amplitudes.conj())
                for i in range(16))
    assert np.linalg.norm(recon - h) < 1e-9
    gram = np.array([[np.vdot(u.amplitudes, v.amplitudes) for v in evecs] for u in evecs])
    assert np.max(np.abs(gram - np.eye(16))) < 1e-10


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        hermitian_eig(op(np.array([[0, 1], [0, 0]], dtype=complex)))


def test_eig_projector_eigenvalues_are_binary():
    rng = np.random.default_rng(9)
    for _ in range(5):
        p = random_projector(8, rank=3, rng=rng)
        evals, _ = hermitian_eig(op(p, dims=(8,)))
        assert np.all((np.abs(evals) < 1e-9) | (np.abs(evals - 1) < 1e-9))


def test_embed_is_linear():
    rng = np.random.default_rng(4)
    shape = qubits(3)
    for _ in range(5):
        a = random_hermitian(4, rng)
        b = random_hermitian(4, rng)
        summed = embed_local(op(a + b, dims=(2, 2)), (0, 2), shape).entries
        separate = (embed_local(op(a, dims=(2, 2)), (0, 2), shape).entries
                    + embed_local(op(b, dims=(2, 2)), (0, 2), shape).entries)
        assert np.max(np.abs(summed - separate)) < 1e-12


def test_embed_preserves_spectrum():
    rng = np.random.default_rng(6)
    h = random_hermitian(4, rng)
    big = embed_local(op(h, dims=(2, 2)), (1, 0), qubits(3))
    small_evals = np.linalg.eigvalsh(h)
    big_evals = np.linalg.eigvalsh(big.entries)
    assert np.allclose(np.repeat(small_evals, 2), big_evals, atol=1e-10)


def test_density_matrix_validation():
    with pytest.raises(ValidationError):
        DensityMatrix(qubits(1), np.array([[0.5, 0.5], [0.5, 0.6]]))  # trace 1.1
    with pytest.raises(ValidationError):
        DensityMatrix(qubits(1), np.array([[1.5, 0], [0, -0.5]]))     # not PSD
    DensityMatrix(qubits(1), np.diag([0.25, 0.25]), subnormalized=True)
    with pytest.raises(ValidationError):
        DensityMatrix(qubits(1), np.diag([0.25, 0.25]))


def test_random_contraction_is_bounded():
    rng = np.random.default_rng(8)
    for _ in range(5):
        c = random_contraction(8, rng)
        evals = np.linalg.eigvalsh(c)
        assert evals[0] > -1e-12 and evals[-1] < 1 + 1e-12


def test_identity_operator():
    eye = identity_operator(qubits(2))
    assert np.allclose(eye.entries, np.eye(4))
