"""
Closed-form evolution of the rotating-field model by the change to the co-rotating frame

    U(t) = R_z(omega t) exp(+i (t/2) omega_bar sigma . b),   R_z(phi) = exp(-i phi sigma_z / 2)

U(0) = 1 and dU/dt(0) = -i H(0), so no extra phase is attached.
"""
import numpy as np

from core.operators import StateVector, IDENTITY, PAULIS
from models.rotating_field import effective_field_vector, instantaneous_states
from utils.decorators import shape_check


def _half_angle_sinc(p, t):
    """
    :return: omega_bar t / 2 and sin(omega_bar t / 2) / omega_bar, finite at omega_bar = 0
    """
    omega_bar = np.linalg.norm(effective_field_vector(p))
    half_angle = omega_bar * t / 2.
    # np.sinc(x) = sin(pi x) / (pi x)
    return half_angle, (t / 2.) * np.sinc(half_angle / np.pi)


@shape_check
def rabi_propagator(p, t):
    """
    :param p: RotatingFieldParams
    :param t: time, scalar or [N]
    :return: U(t), [2, 2] or [N, 2, 2]
    """
    t = np.asarray(t, dtype=float)
    half_angle, sin_over = _half_angle_sinc(p, t)
    sigma_w = np.einsum("k,kij->ij", effective_field_vector(p), PAULIS)
    frame = np.cos(half_angle)[..., None, None] * IDENTITY + 1j * sin_over[..., None, None] * sigma_w
    half_phase = np.exp(-0.5j * p.omega * t)
    rotation = np.zeros(t.shape + (2, 2), dtype=complex)
    rotation[..., 0, 0] = half_phase
    rotation[..., 1, 1] = half_phase.conj()
    return rotation @ frame


def rabi_fidelity(p, t):
    """
    :return: |<0(t)|psi(t)>| = sqrt(1 - sin^2(theta - beta) sin^2(omega_bar t / 2)) for psi(0) = |0(0)>
    """
    transition = rabi_transition_probability(p, t)
    return np.sqrt(np.maximum(1. - transition, 0.))


def rabi_transition_probability(p, t):
    """
    :return: sin^2(theta - beta) sin^2(omega_bar t / 2) = (omega sin(theta))^2 (sin(omega_bar t / 2) / omega_bar)^2
    """
    t = np.asarray(t, dtype=float)
    _, sin_over = _half_angle_sinc(p, t)
    return (p.omega * np.sin(p.theta) * sin_over) ** 2


def rabi_deviation(p, t):
    """
    :return: 1 - |<0(t)|psi(t)>|, computed without cancellation for small transition probabilities
    """
    transition = rabi_transition_probability(p, t)
    return transition / (1. + np.sqrt(np.maximum(1. - transition, 0.)))


def rabi_states(p, t):
    """
    :param t: [N]
    :return: psi(t) [N, 2] from the instantaneous ground state at t = 0
    """
    ground0, _ = instantaneous_states(p, 0.)
    return rabi_propagator(p, t) @ ground0


def rabi_exact(p, t):
    """
    :return: (StateVector psi(t), ground fidelity |<0(t)|psi(t)>|)
    """
    psi = rabi_states(p, float(t))
    return StateVector(psi), float(rabi_fidelity(p, float(t)))
