"""
Adaptive integration of i d/dt psi = H(t) psi for two-level models.

The complex amplitudes are split into y = (Re psi, Im psi) and advanced by a scipy
embedded Runge-Kutta OdeSolver that is stepped manually, so that accepted and rejected
steps can be counted and output samples are taken from the dense output of each step.
The norm is monitored and never renormalized.
"""
from dataclasses import dataclass
import numpy as np
from scipy.integrate import DOP853, RK45

from config import opts
from core.operators import StateVector, IDENTITY, unitarity_defect
from utils.util_class import WrongInputException, PreconditionException, StiffnessException, IntegrationException
import utils.util_funcs as uf

INTEGRATORS = {"DOP853": DOP853, "RK45": RK45}


@dataclass(frozen=True)
class StepStats:
    accepted: int
    rejected: int
    nfev: int


@dataclass(frozen=True)
class EvolutionResult:
    times: np.ndarray
    states: np.ndarray      # [N, 2] complex
    norm_drift: float
    step_stats: StepStats
    method: str
    tol: float

    def state(self, index):
        return StateVector(self.states[index])

    def final_state(self):
        return self.state(-1)


def integrator_factory(method=opts.INTEGRATOR):
    """
    :param method: "DOP853" (8th order with 7th order dense output) or "RK45" (Dormand-Prince 5(4))
    :return: scipy OdeSolver class
    """
    if method not in INTEGRATORS:
        raise WrongInputException(f"[integrator_factory] wrong integrator name: {method}, "
                                  f"expected one of {list(INTEGRATORS.keys())}")
    return INTEGRATORS[method]


def check_tolerance(tol):
    low, high = opts.TOL_RANGE
    if not (low <= tol <= high):
        raise WrongInputException(f"tol must be in [{low}, {high}], got {tol}")
    return float(tol)


def check_initial_state(psi0):
    amplitudes = psi0.amplitudes if isinstance(psi0, StateVector) else psi0
    try:
        return StateVector.normalized(amplitudes)
    except PreconditionException as pe:
        raise PreconditionException(f"[integrate] initial state: {pe}")


def check_output_grid(output_grid, t_final):
    grid = uf.check_finite(output_grid, "output grid").astype(float)
    if grid.ndim != 1 or grid.size == 0:
        raise WrongInputException(f"output grid must be a non-empty 1-D array, got shape {grid.shape}")
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise WrongInputException("output grid must be strictly increasing")
    slack = 1e-12 * max(1., abs(t_final))
    if grid[0] < -slack or grid[-1] > t_final + slack:
        raise WrongInputException(f"output grid [{grid[0]}, {grid[-1]}] leaves the interval [0, {t_final}]")
    return np.clip(grid, 0., t_final)


def schroedinger_rhs(model):
    def rhs(t, y):
        hamiltonian = model.matrix(t)
        h_re, h_im = hamiltonian.real, hamiltonian.imag
        x, p = y[:2], y[2:]
        # -i (H_re + i H_im)(x + i p)
        return np.concatenate([h_re @ p + h_im @ x, h_im @ p - h_re @ x])
    return rhs


def to_real(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.concatenate([psi.real, psi.imag])


def to_complex(y):
    y = np.asarray(y)
    return y[..., :2] + 1j * y[..., 2:]


def integrate(model, psi0, t_final, tol=opts.TOLERANCE, output_grid=None, method=opts.INTEGRATOR):
    """
    :param model: HamiltonianModel
    :param psi0: StateVector or amplitudes, normalized within opts.STATE_NORM_TOL
    :param t_final: end time >= 0
    :param output_grid: sample times in [0, t_final], default opts.OUTPUT_SAMPLES uniform samples
    :return: EvolutionResult sampled on the output grid
    """
    psi0 = check_initial_state(psi0)
    tol = check_tolerance(tol)
    if not np.isfinite(t_final) or t_final < 0:
        raise WrongInputException(f"t_final must be finite and nonnegative, got {t_final}")
    t_final = float(t_final)
    grid = uf.uniform_grid(t_final, opts.OUTPUT_SAMPLES) if output_grid is None \
        else check_output_grid(output_grid, t_final)
    drift_bound = opts.NORM_DRIFT_FACTOR * tol
    # per-step error target, a fraction of the requested global tol
    step_tol = max(tol * opts.STEP_TOL_FACTOR, opts.MIN_STEP_TOL)

    states = np.zeros((grid.size, 2), dtype=complex)
    if t_final == 0:
        states[:] = psi0.amplitudes
        return EvolutionResult(grid, states, 0., StepStats(0, 0, 0), method, tol)

    solver_class = integrator_factory(method)
    solver = solver_class(schroedinger_rhs(model), 0., to_real(psi0.amplitudes), t_final,
                          rtol=step_tol, atol=step_tol)
    accepted, rejected = 0, 0
    norm_drift = 0.
    cursor = 0
    while cursor < grid.size and grid[cursor] <= 0.:
        states[cursor] = psi0.amplitudes
        cursor += 1

    while solver.status == "running":
        nfev_before = solver.nfev
        message = solver.step()
        if solver.status == "failed":
            raise StiffnessException(f"[integrate] step failed at t={solver.t:.6g}: {message}")
        attempts = max((solver.nfev - nfev_before) // solver.n_stages, 1)
        accepted += 1
        rejected += attempts - 1

        drift = abs(1. - np.linalg.norm(solver.y))
        norm_drift = max(norm_drift, drift)
        if norm_drift > drift_bound:
            raise IntegrationException(f"[integrate] norm drift {norm_drift:.3e} exceeds {drift_bound:.1e} "
                                       f"at t={solver.t:.6g}")

        end = cursor
        while end < grid.size and grid[end] <= solver.t:
            end += 1
        if end > cursor:
            targets = grid[cursor:end]
            if solver.status == "finished":
                targets = np.minimum(targets, solver.t)
            interpolant = solver.dense_output()
            sampled = to_complex(interpolant(targets).T)
            states[cursor:end] = sampled
            norm_drift = max(norm_drift, float(np.abs(1. - np.linalg.norm(sampled, axis=1)).max()))
            cursor = end

    if cursor < grid.size:
        states[cursor:] = to_complex(solver.y)
    if norm_drift > drift_bound:
        raise IntegrationException(f"[integrate] norm drift {norm_drift:.3e} exceeds {drift_bound:.1e}")
    stats = StepStats(accepted=accepted, rejected=rejected, nfev=int(solver.nfev))
    return EvolutionResult(grid, states, float(norm_drift), stats, method, tol)


def evolution_operator_series(model, output_grid, tol=opts.TOLERANCE, method=opts.INTEGRATOR):
    """
    :param output_grid: sample times starting at or after 0
    :return: U(t) on the grid [N, 2, 2], columns evolved from the basis states
    """
    grid = np.asarray(output_grid, dtype=float)
    t_final = float(grid[-1])
    columns = [integrate(model, basis, t_final, tol, grid, method).states for basis in IDENTITY]
    unitaries = np.stack(columns, axis=2)
    bound = opts.NORM_DRIFT_FACTOR * tol
    defect = max(unitarity_defect(unitary) for unitary in unitaries)
    if defect > bound:
        raise IntegrationException(f"[evolution_operator] unitarity defect {defect:.3e} exceeds {bound:.1e}")
    return unitaries


def evolution_operator(model, t_final, tol=opts.TOLERANCE, method=opts.INTEGRATOR):
    """
    :return: U(t_final) with columns integrated from the two basis states
    """
    if t_final == 0:
        return IDENTITY.copy()
    return evolution_operator_series(model, np.array([0., float(t_final)]), tol, method)[-1]
