import numpy as np
import pytest

from pointergames.hamiltonian import LocalTerm
from pointergames.qla import QOperator, qubits
from pointergames.slh import SLHInstance

P0 = np.array([[1, 0], [0, 0]], dtype=complex)   # |0><0|
P1 = np.array([[0, 0], [0, 1]], dtype=complex)   # |1><1|
PHI_PLUS = np.zeros((4, 4), dtype=complex)       # |Phi+><Phi+|
_phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
PHI_PLUS[:] = np.outer(_phi, _phi.conj())
PSI_MINUS = np.zeros((4, 4), dtype=complex)      # |Psi-><Psi-|
_psi = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
PSI_MINUS[:] = np.outer(_psi, _psi.conj())


def term(n, support, mat):
    return LocalTerm(n, tuple(support), QOperator(qubits(len(support)), mat))


def two_set_instance(a=0.1, b=0.9):
    """n=2 instance with sets {{|1><1| on 0, |0><0| on 0}, {Phi+, Psi-}}."""
    sets = (
        (term(2, (0,), P1), term(2, (0,), P0)),
        (term(2, (0, 1), PHI_PLUS), term(2, (0, 1), PSI_MINUS)),
    )
    return SLHInstance(2, 2, sets, a, b)


@pytest.fixture
def rng():
    return np.random.default_rng(20240)
