"""
Error of the adiabatic approximation against epsilon = 1 / (E tau) on a rotating-field path
    H_hat(s) = -(1/2) sigma . n(s),   n(s) turning by `turns` revolutions about z on a cone of angle theta
which has unit gap for all s. The error at s = 1 is an envelope: the maximum of |psi - psi_ad| over
endpoint times within one effective-field period before s = 1, since the pointwise error has near-zeros.
"""
from dataclasses import dataclass
from typing import Optional, Tuple
import numpy as np

from config import opts
from core.scaled_problem import problem_from_epsilon
from models.rotating_field import rotating_frame_geometry
from models.hamiltonian_models import RotatingFieldModel, scaled_rotating_params
from spectral.eigenframe import build_eigenframe
from propagator.rabi import rabi_propagator
from adiabatic.jump_expansion import jump_expansion_series
from utils.util_class import WrongInputException, PreconditionException
import utils.util_funcs as uf

# errors below this are exact adiabatic following up to rounding
NULL_ERROR = 1e-10
MAX_EPSILON = 0.2


@dataclass(frozen=True)
class ScalingPoint:
    epsilon: float
    time_scale: float
    error: float
    zeroth_aligned: float
    first_aligned: float
    grid_points: int

    @property
    def order1_ratio(self):
        return self.first_aligned / self.zeroth_aligned if self.zeroth_aligned > 0 else 0.


@dataclass(frozen=True)
class ScalingResult:
    theta: float
    turns: float
    points: Tuple[ScalingPoint, ...]
    slope: Optional[float]

    @property
    def epsilons(self):
        return np.array([point.epsilon for point in self.points])

    @property
    def errors(self):
        return np.array([point.error for point in self.points])


def check_epsilons(epsilons):
    epsilons = np.array(sorted(set(float(eps) for eps in epsilons), reverse=True))
    if epsilons.size < 3:
        raise WrongInputException(f"epsilon scaling needs at least 3 distinct values, got {epsilons.size}")
    if np.any(epsilons <= 0) or np.any(epsilons > MAX_EPSILON):
        raise WrongInputException(f"epsilon values must be in (0, {MAX_EPSILON}], got {epsilons.tolist()}")
    if np.log10(epsilons[0] / epsilons[-1]) < 1.:
        raise WrongInputException(f"epsilon values must span at least one decade, got {epsilons.tolist()}")
    return epsilons


def fit_slope(epsilons, errors):
    """
    :return: slope of log(error) against log(epsilon), None when every error is a null
    """
    errors = np.asarray(errors)
    if np.all(errors < NULL_ERROR):
        return None
    slope, _ = np.polyfit(np.log(epsilons), np.log(np.maximum(errors, NULL_ERROR)), 1)
    return float(slope)


def scaling_point(epsilon, theta, turns=opts.SCALING_TURNS, cell=opts.SCALING_CELL,
                  jitter_points=opts.SCALING_JITTER_POINTS, energy_scale=1.):
    problem = problem_from_epsilon(epsilon, energy_scale)
    p = scaled_rotating_params(theta, problem, turns)
    tau = problem.time_scale
    cells = int(np.ceil(tau * energy_scale / cell))
    grid = uf.uniform_grid(tau, cells + 1)
    frame = build_eigenframe(RotatingFieldModel(p), grid)
    # gap of H_hat = gap of H / E
    if frame.gap_min / energy_scale < 1. - 1e-9:
        raise PreconditionException(f"[epsilon_scaling] scaled gap {frame.gap_min / energy_scale} is below 1")

    exact = rabi_propagator(p, grid) @ frame.states[0, 0]
    window_length = 2 * np.pi / rotating_frame_geometry(p).omega_bar
    window = np.flatnonzero(grid >= tau - window_length)
    picks = np.unique(np.round(np.linspace(window[0], window[-1], jitter_points)).astype(int))
    series = jump_expansion_series(frame, exact)
    return ScalingPoint(epsilon=float(epsilon),
                        time_scale=float(tau),
                        error=float(np.max(series["zeroth"][picks])),
                        zeroth_aligned=float(np.max(series["zeroth_aligned"][picks])),
                        first_aligned=float(np.max(series["first_aligned"][picks])),
                        grid_points=int(grid.size))


def epsilon_scaling(theta=opts.SCALING_THETA, epsilons=opts.SCALING_EPSILONS, turns=opts.SCALING_TURNS,
                    cell=opts.SCALING_CELL, jitter_points=opts.SCALING_JITTER_POINTS, verbose=False):
    """
    :return: ScalingResult with the error envelope per epsilon and its fitted log-log slope
    """
    epsilons = check_epsilons(epsilons)
    points = []
    for count, epsilon in enumerate(epsilons):
        points.append(scaling_point(epsilon, theta, turns, cell, jitter_points))
        if verbose:
            uf.print_numeric_progress(count + 1, epsilons.size)
    slope = fit_slope(epsilons, [point.error for point in points])
    if verbose:
        uf.print_log("epsilon_scaling", f"theta={theta}, slope={slope}")
    return ScalingResult(theta=float(theta), turns=float(turns), points=tuple(points), slope=slope)
