"""
Validity map over a grid of rotation rates and cone angles.
Every grid point is independent; points are evaluated by a process pool and
rows are assembled in grid order, so closed-form output does not depend on scheduling.
"""
import time
from dataclasses import dataclass, field
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Tuple
import numpy as np
import pandas as pd

from config import opts
from models.rotating_field import RotatingFieldParams, rotating_frame_geometry, instantaneous_states
from models.hamiltonian_models import RotatingFieldModel
from propagator.rabi import rabi_fidelity, rabi_states
from propagator.integrator import integrate, check_tolerance
from adiabatic.criteria import a_priori_value, a_priori_generic, intuitive_value, escape_time
from utils.util_class import WrongInputException
import utils.util_funcs as uf

SWEEP_MODES = ("closed-form", "numeric", "both")

SWEEP_UNITS = {"omega0": "rad/time", "omega": "rad/time", "theta": "rad", "omegaBar": "rad/time",
               "beta": "rad", "escapeTime": "time", "horizonTime": "time"}
SWEEP_UNITS.update({column: "dimensionless" for column in (
    "aPrioriValue", "aPrioriGeneric", "intuitiveValue", "envelope", "verdictAPriori", "verdictAPosteriori",
    "verdictIntuitive", "minFidelity", "numericMinFidelity", "maxAmplitudeError", "normDrift")})


@dataclass(frozen=True)
class SweepSpec:
    omega0: float
    omega_range: Tuple[float, float, int]
    theta_range: Tuple[float, float, int]
    horizon: int = opts.SWEEP_HORIZON
    mode: str = "closed-form"
    tol: float = opts.TOLERANCE

    def __post_init__(self):
        if not (np.isfinite(self.omega0) and self.omega0 > 0):
            raise WrongInputException(f"[SweepSpec] omega0 must be positive, got {self.omega0}")
        object.__setattr__(self, "omega_range", check_range("omega", self.omega_range))
        object.__setattr__(self, "theta_range", check_range("theta", self.theta_range))
        low, high, _ = self.theta_range
        if low < 0 or high > np.pi / 2:
            raise WrongInputException(f"[SweepSpec] theta range must lie in [0, pi/2], got {self.theta_range}")
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise WrongInputException(f"[SweepSpec] horizon must be an integer >= 1, got {self.horizon}")
        object.__setattr__(self, "horizon", int(self.horizon))
        if self.mode not in SWEEP_MODES:
            raise WrongInputException(f"[SweepSpec] wrong mode: {self.mode}, expected one of {SWEEP_MODES}")
        object.__setattr__(self, "tol", check_tolerance(self.tol))

    def omegas(self):
        low, high, count = self.omega_range
        return np.linspace(low, high, count)

    def thetas(self):
        low, high, count = self.theta_range
        return np.linspace(low, high, count)

    def grid_points(self):
        return [(float(omega), float(theta)) for omega in self.omegas() for theta in self.thetas()]

    def as_dict(self):
        return {"omega0": self.omega0, "omegaRange": list(self.omega_range), "thetaRange": list(self.theta_range),
                "horizon": self.horizon, "mode": self.mode, "tol": self.tol}


def check_range(name, values):
    if len(values) != 3:
        raise WrongInputException(f"[SweepSpec] {name} range needs (min, max, count), got {values}")
    low, high, count = float(values[0]), float(values[1]), values[2]
    if not (np.isfinite(low) and np.isfinite(high)):
        raise WrongInputException(f"[SweepSpec] {name} range must be finite, got {values}")
    if int(count) != count or count < 2:
        raise WrongInputException(f"[SweepSpec] {name} count must be an integer >= 2, got {count}")
    if not low < high:
        raise WrongInputException(f"[SweepSpec] {name} range must be ordered, got min={low}, max={high}")
    return low, high, int(count)


@dataclass(frozen=True)
class RunRecord:
    params: dict
    criteria: dict
    min_fidelity: float
    horizon_time: float
    numeric: Optional[dict] = None
    timing: Optional[float] = None
    tool_version: str = field(default=opts.TOOL_VERSION)

    def as_row(self):
        row = dict(self.params)
        row.update(self.criteria)
        row["horizonTime"] = self.horizon_time
        row["minFidelity"] = self.min_fidelity
        if self.numeric is not None:
            row.update(self.numeric)
        return row


def horizon_time(p, horizon):
    """
    :return: `horizon` rotation periods, or Larmor periods 2 pi / omega0 for a static field
    """
    period = p.period() if p.omega != 0 else 2 * np.pi / p.omega0
    return horizon * period


def envelope_or_limit(p):
    """
    :return: (omega_bar, beta, envelope), the envelope of a degenerate geometry (theta = 0) is 0
    """
    geometry = rotating_frame_geometry(p)
    if geometry.degenerate:
        return 0., np.nan, 0.
    return geometry.omega_bar, geometry.beta, abs(p.omega * np.sin(p.theta)) / geometry.omega_bar


def closed_form_min_fidelity(p, t_final, samples):
    """
    :return: min over [0, t_final] of |<0(t)|psi(t)>| on a uniform grid, including the analytic
        minimum at omega_bar t = pi when it falls inside the interval
    """
    times = uf.uniform_grid(t_final, samples)
    fidelity = float(np.min(rabi_fidelity(p, times)))
    omega_bar, _, _ = envelope_or_limit(p)
    if omega_bar > 0 and np.pi / omega_bar <= t_final:
        fidelity = min(fidelity, float(rabi_fidelity(p, np.pi / omega_bar)))
    return fidelity


def numeric_cross_check(p, t_final, tol, samples):
    """
    :return: dict of numeric min fidelity, max |psi_numeric - psi_closed| and norm drift on the sample grid
    """
    times = uf.uniform_grid(t_final, samples)
    ground0, _ = instantaneous_states(p, 0.)
    result = integrate(RotatingFieldModel(p), ground0, t_final, tol, times)
    ground, _ = instantaneous_states(p, times)
    fidelity = np.abs(np.sum(ground.conj() * result.states, axis=1))
    error = np.abs(result.states - rabi_states(p, times)).max()
    return {"numericMinFidelity": float(fidelity.min()),
            "maxAmplitudeError": float(error),
            "normDrift": result.norm_drift}


def evaluate_point(task):
    """
    :param task: (omega0, omega, theta, horizon, mode, tol), plain values for the process pool
    :return: RunRecord of one grid point
    """
    omega0, omega, theta, horizon, mode, tol = task
    p = RotatingFieldParams(omega0, omega, theta)
    omega_bar, beta, envelope = envelope_or_limit(p)
    t_final = horizon_time(p, horizon)
    criteria = {"omegaBar": omega_bar,
                "beta": beta,
                "aPrioriValue": a_priori_value(p),
                "aPrioriGeneric": a_priori_generic(p),
                "intuitiveValue": intuitive_value(p),
                "envelope": envelope,
                "escapeTime": escape_time(p),
                }
    threshold = opts.CRITERION_THRESHOLD
    criteria["verdictAPriori"] = int(criteria["aPrioriValue"] < threshold)
    criteria["verdictAPosteriori"] = int(envelope < threshold)
    criteria["verdictIntuitive"] = int(criteria["intuitiveValue"] < threshold)

    samples = horizon * opts.SWEEP_SAMPLES_PER_PERIOD + 1
    min_fidelity = np.nan
    if mode in ("closed-form", "both"):
        min_fidelity = closed_form_min_fidelity(p, t_final, samples)
    numeric, timing = None, None
    if mode in ("numeric", "both"):
        start = time.perf_counter()
        numeric = numeric_cross_check(p, t_final, tol, samples)
        timing = time.perf_counter() - start
        if mode == "numeric":
            min_fidelity = numeric["numericMinFidelity"]
    return RunRecord(params=p.as_dict(), criteria=criteria, min_fidelity=float(min_fidelity),
                     horizon_time=float(t_final), numeric=numeric, timing=timing)


def run_sweep(spec, workers=opts.SWEEP_WORKERS, verbose=False):
    """
    :return: list of RunRecord in grid order (omega major, theta minor)
    """
    tasks = [(spec.omega0, omega, theta, spec.horizon, spec.mode, spec.tol) for omega, theta in spec.grid_points()]
    if verbose:
        uf.print_log("sweep", f"{len(tasks)} grid points, mode={spec.mode}, workers={workers}")
    if workers <= 1 or len(tasks) == 1:
        records = []
        for count, task in enumerate(tasks):
            records.append(evaluate_point(task))
            if verbose:
                uf.print_numeric_progress(count + 1, len(tasks))
        return records
    # executor.map yields results in task order
    with ProcessPoolExecutor(max_workers=workers) as executor:
        records = list(executor.map(evaluate_point, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    if verbose:
        uf.print_numeric_progress(len(tasks), len(tasks))
    return records


def sweep_table(records):
    return pd.DataFrame([record.as_row() for record in records])


def sweep_sidecar(spec, records):
    """
    run metadata, timing appears only for numerically integrated points
    """
    content = {"toolVersion": opts.TOOL_VERSION,
               "toolName": opts.TOOL_NAME,
               "sweep": spec.as_dict(),
               "gridPoints": len(records)}
    if spec.mode != "closed-form":
        content["timing"] = [{"omega": record.params["omega"], "theta": record.params["theta"],
                              "seconds": record.timing} for record in records]
        content["totalSeconds"] = float(sum(record.timing for record in records))
    return content
