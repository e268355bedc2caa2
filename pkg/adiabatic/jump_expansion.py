"""
Adiabatic state and the first two orders of the expansion in the number of jumps between
instantaneous eigenstates, evaluated on the grid of an EigenFrame.

    psi_ad(t) = exp(-i int_0^t E_0) |0(t)>
    psi_1(t)  = sum_m exp(-i int_0^t E_m) |m(t)> int_0^t dt1 <m_dot(t1)|0(t1)> exp(i int_0^t1 (E_m - E_0))

Phases are integrated with cumulative Simpson weights on the frame grid, plus a trapezoid over the
partial cell for times between samples.
"""
from dataclasses import dataclass
import numpy as np
from scipy.integrate import cumulative_simpson

from config import opts
from core.operators import StateVector
from spectral.eigenframe import coupling_series
from utils.util_class import GridTooCoarseException, PreconditionException


@dataclass(frozen=True)
class JumpExpansionState:
    order0: StateVector
    order1: np.ndarray
    residual_norm: float
    zeroth_residual_norm: float
    residual_aligned: float
    zeroth_residual_aligned: float


def _cumulative(values, times):
    if times.size < 3:
        return np.concatenate([[0.], np.cumsum(np.diff(times) * (values[1:] + values[:-1]) / 2.)])
    if np.iscomplexobj(values):
        return _cumulative(values.real, times) + 1j * _cumulative(values.imag, times)
    return cumulative_simpson(values, x=times, initial=0.)


def _blend(values, k, weight):
    if weight == 0.:
        return values[k]
    return (1. - weight) * values[k] + weight * values[k + 1]


def _advance(cumulative, values, value_at, frame, k, weight):
    """
    :return: running integral at a time inside cell k, trapezoid over the partial cell
    """
    if weight == 0.:
        return cumulative[k]
    step = weight * (frame.times[k + 1] - frame.times[k])
    return cumulative[k] + step * (values[k] + value_at) / 2.


def _phases_at(frame, phases, k, weight):
    return np.array([_advance(phases[:, n], frame.energies[:, n], _blend(frame.energies[:, n], k, weight),
                              frame, k, weight) for n in range(2)])


def dynamical_phases(frame):
    """
    :return: int_0^t E_n(t') dt' on the frame grid, [N, 2]
    """
    return np.stack([_cumulative(frame.energies[:, n], frame.times) for n in range(2)], axis=1)


def adiabatic_states(frame):
    """
    :return: psi_ad on the frame grid [N, 2]
    """
    phases = dynamical_phases(frame)
    return np.exp(-1j * phases[:, 0])[:, np.newaxis] * frame.band(0)


def adiabatic_state(frame, t):
    """
    :param t: any time in the frame span, between grid samples the eigenvector and phase are interpolated
    """
    k, weight = frame.bracket(t)
    phases = _phases_at(frame, dynamical_phases(frame), k, weight)
    return StateVector(np.exp(-1j * phases[0]) * frame.band_state(0, k, weight))


def check_phase_resolution(frame, couplings, max_phase=opts.MAX_PHASE_PER_CELL):
    steps = np.diff(frame.times)
    gaps = np.abs(frame.energies[:, 1] - frame.energies[:, 0])
    advance = np.maximum(gaps[1:], gaps[:-1]) * steps
    magnitude = np.abs(couplings)
    # couplings at round-off level carry no phase
    floor = opts.COUPLING_NOISE_FLOOR * float(np.max(gaps))
    resolved = (magnitude[1:] > floor) & (magnitude[:-1] > floor)
    if np.any(resolved):
        coupling_turn = np.abs(np.angle(couplings[1:][resolved] * couplings[:-1][resolved].conj()))
        advance[resolved] += coupling_turn
    worst = float(np.max(advance)) if advance.size else 0.
    if worst >= max_phase:
        raise GridTooCoarseException(f"[first_order_term] phase advance {worst:.4f} per grid cell "
                                     f"is not below {max_phase:.4f}")
    return worst


def _first_order_parts(frame, max_phase=opts.MAX_PHASE_PER_CELL):
    couplings = coupling_series(frame, band=1, ground=0)
    check_phase_resolution(frame, couplings, max_phase)
    phases = dynamical_phases(frame)
    integrand = couplings * np.exp(1j * (phases[:, 1] - phases[:, 0]))
    return couplings, phases, integrand, _cumulative(integrand, frame.times)


def first_order_terms(frame, max_phase=opts.MAX_PHASE_PER_CELL):
    """
    :return: psi_1 on the frame grid [N, 2], built from the excited band only
    """
    _, phases, _, amplitude = _first_order_parts(frame, max_phase)
    return (amplitude * np.exp(-1j * phases[:, 1]))[:, np.newaxis] * frame.band(1)


def first_order_term(frame, t):
    k, weight = frame.bracket(t)
    couplings, phases, integrand, amplitude = _first_order_parts(frame)
    phases_at = _phases_at(frame, phases, k, weight)
    integrand_at = _blend(couplings, k, weight) * np.exp(1j * (phases_at[1] - phases_at[0]))
    amplitude_at = _advance(amplitude, integrand, integrand_at, frame, k, weight)
    return amplitude_at * np.exp(-1j * phases_at[1]) * frame.band_state(1, k, weight)


def first_order_estimate(frame, t):
    """
    :return: |<m_dot(t)|0(t)>| / (E_m(t) - E_0(t)) for the excited band
    """
    k, weight = frame.bracket(t)
    couplings = coupling_series(frame, band=1, ground=0)
    gap = abs(_blend(frame.energies[:, 1] - frame.energies[:, 0], k, weight))
    return float(np.abs(_blend(couplings, k, weight)) / gap)


def aligned_distance(exact, approximation):
    """
    :return: min over a global phase phi of |exp(i phi) exact - approximation|, along the last axis
    """
    exact, approximation = np.asarray(exact), np.asarray(approximation)
    overlap = np.abs(np.sum(approximation.conj() * exact, axis=-1))
    squared = np.sum(np.abs(exact) ** 2, axis=-1) + np.sum(np.abs(approximation) ** 2, axis=-1) - 2. * overlap
    return np.sqrt(np.maximum(squared, 0.))


def jump_expansion_series(frame, exact_states):
    """
    :param exact_states: exact state on the frame grid [N, 2], started from the frame ground state at t_0
    :return: dict of [N] residual norms, raw and with the optimal global phase removed
    """
    exact_states = np.asarray(exact_states)
    if exact_states.shape != (frame.times.size, 2):
        raise PreconditionException(f"exact states must have shape {(frame.times.size, 2)}, got {exact_states.shape}")
    order0 = adiabatic_states(frame)
    order1 = first_order_terms(frame)
    return {"order0": order0,
            "order1": order1,
            "zeroth": np.linalg.norm(exact_states - order0, axis=1),
            "first": np.linalg.norm(exact_states - order0 - order1, axis=1),
            "zeroth_aligned": aligned_distance(exact_states, order0),
            "first_aligned": aligned_distance(exact_states, order0 + order1),
            }


def jump_expansion(frame, t, psi_exact):
    """
    :param psi_exact: exact state at t
    :return: JumpExpansionState at t, interpolated between grid samples
    """
    exact = psi_exact.as_array() if isinstance(psi_exact, StateVector) else np.asarray(psi_exact)
    order0 = adiabatic_state(frame, t).as_array()
    order1 = first_order_term(frame, t)
    return JumpExpansionState(order0=StateVector(order0),
                              order1=order1,
                              residual_norm=float(np.linalg.norm(exact - order0 - order1)),
                              zeroth_residual_norm=float(np.linalg.norm(exact - order0)),
                              residual_aligned=float(aligned_distance(exact, order0 + order1)),
                              zeroth_residual_aligned=float(aligned_distance(exact, order0)))
