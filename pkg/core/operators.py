"""
Two-level value types and Pauli algebra (hbar = 1, energies are angular frequencies).

Amplitudes are plain python/numpy complex numbers; StateVector and HermitianOperator2
validate their entries once at construction and keep read-only arrays afterwards.
"""
from dataclasses import dataclass
import numpy as np

from config import opts
from utils.util_class import PreconditionException
import utils.util_funcs as uf

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z], axis=0)


def _read_only(array):
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = uf.check_finite(self.amplitudes, "state amplitudes")
        if amplitudes.shape != (2,):
            raise PreconditionException(f"a two-level state needs 2 amplitudes, got shape {amplitudes.shape}")
        object.__setattr__(self, "amplitudes", _read_only(amplitudes))

    @classmethod
    def normalized(cls, amplitudes, norm_tol=opts.STATE_NORM_TOL):
        state = cls(amplitudes)
        if abs(state.norm() - 1.) > norm_tol:
            raise PreconditionException(f"state norm {state.norm():.17g} differs from 1 by more than {norm_tol}")
        return state

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other):
        """
        :return: <self|other>
        """
        other = other.amplitudes if isinstance(other, StateVector) else np.asarray(other)
        return complex(np.vdot(self.amplitudes, other))

    def as_array(self):
        return np.array(self.amplitudes)


@dataclass(frozen=True)
class HermitianOperator2:
    matrix: np.ndarray

    def __post_init__(self):
        matrix = uf.check_finite(self.matrix, "operator entries")
        if matrix.shape != (2, 2):
            raise PreconditionException(f"a two-level operator must be 2x2, got shape {matrix.shape}")
        if not is_hermitian(matrix):
            raise PreconditionException(f"operator is not Hermitian within {opts.HERMITIAN_RTOL}:\n{matrix}")
        object.__setattr__(self, "matrix", _read_only(matrix))

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)

    def apply(self, state):
        amplitudes = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
        return self.matrix @ amplitudes

    def bloch_vector(self):
        """
        :return: (h_x, h_y, h_z) with matrix = h_0 * 1 + h . sigma
        """
        return np.real(np.einsum("kij,ji->k", PAULIS, self.matrix)) / 2.

    def as_array(self):
        return np.array(self.matrix)

    def __neg__(self):
        return HermitianOperator2(-self.matrix)


def is_hermitian(matrix, rtol=opts.HERMITIAN_RTOL):
    matrix = np.asarray(matrix)
    scale = max(np.abs(matrix).max(), 1e-300)
    return np.abs(matrix - matrix.conj().T).max() <= rtol * scale


def pauli_dot(n, unit_tol=opts.UNIT_VECTOR_TOL):
    """
    :param n: unit 3-vector
    :return: n_x sigma_x + n_y sigma_y + n_z sigma_z
    """
    n = uf.check_finite(n, "direction").astype(float)
    if n.shape != (3,):
        raise PreconditionException(f"pauli_dot needs a 3-vector, got shape {n.shape}")
    length = np.linalg.norm(n)
    if abs(length - 1.) > unit_tol:
        raise PreconditionException(f"pauli_dot needs a unit vector, |n| = {length:.17g}")
    return HermitianOperator2(np.einsum("k,kij->ij", n, PAULIS))


def pauli_dot_matrix(n):
    """
    unchecked variant for integrator right-hand sides
    :param n: 3-vector
    :return: 2x2 complex array
    """
    nx, ny, nz = n
    return np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]], dtype=complex)


def operator_norm(matrix):
    return float(np.linalg.norm(matrix, ord=2))


def unitarity_defect(unitary):
    unitary = np.asarray(unitary)
    return operator_norm(unitary.conj().T @ unitary - IDENTITY)


def check_unitary(unitary, tol=opts.UNITARY_TOL):
    defect = unitarity_defect(unitary)
    if defect > tol:
        raise PreconditionException(f"operator is not unitary: |U^dag U - 1| = {defect:.3e} > {tol}")
    return np.asarray(unitary, dtype=complex)
