"""
Spin 1/2 in a uniformly rotating field

    H(t) = -(omega0 / 2) sigma . n(t),   n(t) = (sin(theta) cos(omega t), sin(theta) sin(omega t), cos(theta))

In the frame rotating with the field the Hamiltonian is static,
H_eff = -(omega_bar / 2) sigma . b with b = (sin(beta), 0, cos(beta)); the triangle
    omega_bar sin(beta) = omega0 sin(theta)
    omega_bar cos(beta) = omega0 cos(theta) + omega
defines the effective field magnitude omega_bar and its tilt beta from the rotation axis.
"""
from dataclasses import dataclass
from typing import Optional
import numpy as np
from scipy.spatial.transform import Rotation

from config import opts
from core.operators import HermitianOperator2, IDENTITY, pauli_dot, pauli_dot_matrix, check_unitary, operator_norm
from utils.util_class import WrongInputException, DegenerateGeometryException
from utils.decorators import shape_check

# tolerance for theta slightly outside [0, pi/2] from float arithmetic
THETA_SLACK = 1e-12


@dataclass(frozen=True)
class RotatingFieldParams:
    omega0: float
    omega: float
    theta: float

    def __post_init__(self):
        for name in ("omega0", "omega", "theta"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise WrongInputException(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if not self.omega0 > 0:
            raise WrongInputException(f"omega0 must be positive, got {self.omega0}")
        if self.theta < -THETA_SLACK or self.theta > np.pi / 2 + THETA_SLACK:
            raise WrongInputException(f"theta must be in [0, pi/2], got {self.theta}")
        object.__setattr__(self, "theta", float(np.clip(self.theta, 0., np.pi / 2)))

    def period(self):
        """
        :return: rotation period 2 pi / |omega|, inf for a static field
        """
        return 2 * np.pi / abs(self.omega) if self.omega != 0 else np.inf

    def as_dict(self):
        return {"omega0": self.omega0, "omega": self.omega, "theta": self.theta}


@dataclass(frozen=True)
class RotatingFrameGeometry:
    omega_bar: float
    beta: Optional[float]
    degenerate: bool = False

    def require_beta(self):
        if self.degenerate or self.beta is None:
            raise DegenerateGeometryException("effective field vanishes (omega_bar = 0, theta = 0, omega = -omega0); "
                                              "beta is undefined")
        return self.beta


@dataclass(frozen=True)
class PrimedParams:
    """
    params: primed parameters folded into theta' in [0, pi/2]
    raw_theta, raw_omega: theta - beta and -omega_bar before folding
    folding: rotations applied by the fold, both map the field cone onto itself up to a global rotation
        "none", "mirror_z" (theta' -> -theta', pi about z),
        "flip_x" (theta' -> pi - theta', omega' -> -omega', pi about x), "mirror_z+flip_x"
    """
    params: RotatingFieldParams
    raw_theta: float
    raw_omega: float
    folding: str


def field_direction(p, t):
    """
    :param p: RotatingFieldParams
    :param t: time, scalar or [N]
    :return: unit field direction n(t), [3] or [N, 3]
    """
    t = np.asarray(t, dtype=float)
    sin_th, cos_th = np.sin(p.theta), np.cos(p.theta)
    phase = p.omega * t
    direction = np.stack([sin_th * np.cos(phase), sin_th * np.sin(phase), np.broadcast_to(cos_th, phase.shape)],
                         axis=-1)
    return direction


def rotating_field_hamiltonian(p, t):
    return HermitianOperator2(-0.5 * p.omega0 * pauli_dot(field_direction(p, float(t))).matrix)


def rotating_field_matrix(p, t):
    """
    unchecked H(t) for integrator right-hand sides
    """
    return -0.5 * p.omega0 * pauli_dot_matrix(field_direction(p, t))


def instantaneous_states(p, t):
    """
    ground (field-aligned) and excited eigenstates of H(t) in the single-valued gauge
        |0(t)> = (cos(theta/2), e^{i omega t} sin(theta/2)),  |1(t)> = (-sin(theta/2), e^{i omega t} cos(theta/2))
    :return: ground [..., 2], excited [..., 2]
    """
    t = np.asarray(t, dtype=float)
    cos_half, sin_half = np.cos(p.theta / 2), np.sin(p.theta / 2)
    rotor = np.exp(1j * p.omega * t)
    ground = np.stack([np.broadcast_to(cos_half + 0j, t.shape), rotor * sin_half], axis=-1)
    excited = np.stack([np.broadcast_to(-sin_half + 0j, t.shape), rotor * cos_half], axis=-1)
    return ground, excited


def effective_field_vector(p):
    """
    :return: omega_bar * b = (omega0 sin(theta), 0, omega0 cos(theta) + omega), defined also when omega_bar = 0
    """
    return np.array([p.omega0 * np.sin(p.theta), 0., p.omega0 * np.cos(p.theta) + p.omega])


def rotating_frame_geometry(p):
    transverse = p.omega0 * np.sin(p.theta)
    axial = p.omega0 * np.cos(p.theta) + p.omega
    omega_bar = float(np.hypot(transverse, axial))
    if omega_bar <= opts.DEGENERATE_OMEGA_BAR * p.omega0:
        return RotatingFrameGeometry(omega_bar=0., beta=None, degenerate=True)
    # two-argument arctangent keeps beta > pi/2 when omega < -omega0 cos(theta)
    beta = float(np.arctan2(transverse, axial))
    return RotatingFrameGeometry(omega_bar=omega_bar, beta=beta)


def sin_theta_minus_beta(p):
    """
    :return: sin(theta - beta) = omega sin(theta) / omega_bar
    """
    geometry = rotating_frame_geometry(p)
    geometry.require_beta()
    return p.omega * np.sin(p.theta) / geometry.omega_bar


def primed_params(p):
    geometry = rotating_frame_geometry(p)
    beta = geometry.require_beta()
    raw_theta = p.theta - beta
    raw_omega = -geometry.omega_bar
    theta, omega = raw_theta, raw_omega
    folds = []
    if theta < 0:
        theta = -theta
        folds.append("mirror_z")
    if theta > np.pi / 2:
        theta = np.pi - theta
        omega = -omega
        folds.append("flip_x")
    folding = "+".join(folds) if folds else "none"
    return PrimedParams(params=RotatingFieldParams(p.omega0, omega, theta),
                        raw_theta=float(raw_theta), raw_omega=float(raw_omega), folding=folding)


def primed_hamiltonian_numeric(p, t, unitary, unitary_tol=opts.UNITARY_TOL):
    """
    :param unitary: evolution operator U(t) of H
    :return: H'(t) = -U^dag(t) H(t) U(t)
    """
    unitary = check_unitary(unitary, unitary_tol)
    hamiltonian = rotating_field_matrix(p, t)
    return HermitianOperator2(-unitary.conj().T @ hamiltonian @ unitary)


def analytic_coupling(p):
    """
    :return: exact |<m_dot|0>| = |omega| sin(theta) / 2 of the rotating field
    """
    return abs(p.omega) * np.sin(p.theta) / 2.


def analytic_drift(p):
    """
    :return: max over a full rotation of 1 - |<0(t1)|0(t2)>| = 1 - cos(theta)
    """
    if p.omega == 0:
        return 0.
    return 1. - np.cos(p.theta)


def bloch_vectors(matrices):
    """
    :param matrices: [N, 2, 2] Hermitian
    :return: h in H = h0 + h . sigma, [N, 3]
    """
    matrices = np.asarray(matrices)
    hx = np.real(matrices[:, 0, 1] + matrices[:, 1, 0]) / 2.
    hy = np.real(1j * (matrices[:, 0, 1] - matrices[:, 1, 0])) / 2.
    hz = np.real(matrices[:, 0, 0] - matrices[:, 1, 1]) / 2.
    return np.stack([hx, hy, hz], axis=1)


def rotate_hermitian(rotation, matrix):
    """
    :param rotation: scipy Rotation acting on Bloch vectors
    :param matrix: 2x2 Hermitian
    :return: h0 + (R h) . sigma
    """
    h0 = np.real(np.trace(matrix)) / 2.
    h = bloch_vectors(np.asarray(matrix)[np.newaxis])[0]
    return h0 * IDENTITY + pauli_dot_matrix(rotation.apply(h))


def fit_global_rotation(analytic_ops, numeric_ops):
    """
    the t=0 field directions are aligned exactly, the remaining samples fix the angle about that axis
    :param analytic_ops: [N>=2, 2, 2], first sample at t=0
    :param numeric_ops: [N>=2, 2, 2]
    :return: Rotation R with R h_numeric = h_analytic
    """
    target = bloch_vectors(analytic_ops)
    source = bloch_vectors(numeric_ops)
    weights = np.ones(target.shape[0])
    weights[0] = np.inf
    rotation, _ = Rotation.align_vectors(target, source, weights=weights)
    return rotation


@shape_check
def primed_reduction(p, times, unitaries):
    """
    compares the numerically constructed H'(t) with the analytic rotating field of primed_params
    :param times: sample times [N], times[0] = 0
    :param unitaries: U(t) on the samples [N, 2, 2]
    :return: dict with primed params, fitted rotation vector and max operator-norm residual
    """
    primed = primed_params(p)
    numeric = np.stack([primed_hamiltonian_numeric(p, t, u).matrix for t, u in zip(times, unitaries)], axis=0)
    analytic = np.stack([rotating_field_matrix(primed.params, t) for t in times], axis=0)
    rotation = fit_global_rotation(analytic, numeric)
    residuals = [operator_norm(rotate_hermitian(rotation, num) - ana) for num, ana in zip(numeric, analytic)]
    spectrum = np.stack([np.linalg.eigvalsh(num) for num in numeric], axis=0)
    return {"primed": primed,
            "rotation_vector": rotation.as_rotvec(),
            "residual": float(np.max(residuals)),
            "spectrum_error": float(np.abs(spectrum - np.array([-0.5, 0.5]) * p.omega0).max()),
            }
