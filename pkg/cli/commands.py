import numpy as np
import pandas as pd

from config import opts
from models.rotating_field import RotatingFieldParams, instantaneous_states, primed_reduction, analytic_coupling, \
    analytic_drift
from models.hamiltonian_models import RotatingFieldModel
from propagator.integrator import integrate, evolution_operator_series
from adiabatic.criteria import criteria_report, escape_time, max_deviation, primed_envelope, a_priori_value
from adiabatic.scaling import epsilon_scaling
from cli.sweep import SweepSpec, run_sweep, sweep_table, sweep_sidecar, horizon_time, envelope_or_limit, SWEEP_UNITS
from cli.writers import save_csv, save_json, dump_json
from utils.util_class import VerificationException
import utils.util_funcs as uf

EVOLVE_UNITS = {"t": "time", "fidelity": "|<0(t)|psi(t)>|"}
EVOLVE_UNITS.update({column: "dimensionless"
                     for column in ("re0", "im0", "re1", "im1", "deviation", "deviationEnvelope")})
SCALING_UNITS = {"epsilon": "1/(E tau)", "error": "|psi - psi_ad|", "zerothAligned": "dimensionless",
                 "firstAligned": "dimensionless", "order1Ratio": "dimensionless", "gridPoints": "count"}


def params_from_args(args):
    return RotatingFieldParams(args.omega0, args.omega, args.theta)


def sidecar_path(filepath):
    stem = filepath[:-4] if filepath.lower().endswith(".csv") else filepath
    return stem + ".json"


def print_report(content, as_json):
    if as_json:
        print(dump_json(content))
        return
    for key, value in sorted(content.items()):
        if isinstance(value, dict):
            print(f"{key}:")
            for subkey, subvalue in sorted(value.items()):
                print(f"    {subkey}: {subvalue}")
        else:
            print(f"{key}: {value}")


def cmd_evolve(args):
    """
    integrates the rotating-field model from the instantaneous ground state and writes
    the amplitudes with the ground-state fidelity against time
    """
    p = params_from_args(args)
    t_final = args.t_final if args.t_final is not None else horizon_time(p, opts.SWEEP_HORIZON)
    times = uf.uniform_grid(t_final, args.samples)
    ground0, _ = instantaneous_states(p, 0.)
    result = integrate(RotatingFieldModel(p), ground0, t_final, args.tol, times, args.method)
    ground, _ = instantaneous_states(p, result.times)
    fidelity = np.abs(np.sum(ground.conj() * result.states, axis=1))
    _, _, envelope = envelope_or_limit(p)
    table = pd.DataFrame({"t": result.times,
                          "re0": result.states[:, 0].real, "im0": result.states[:, 0].imag,
                          "re1": result.states[:, 1].real, "im1": result.states[:, 1].imag,
                          "fidelity": fidelity,
                          "deviation": 1. - fidelity,
                          "deviationEnvelope": np.full(result.times.size, envelope)})
    echo = dict(p.as_dict(), tFinal=t_final, samples=int(times.size), tol=result.tol, method=result.method)
    save_csv(args.out, "evolve", table, echo, EVOLVE_UNITS)
    uf.print_log("evolve", f"norm drift={result.norm_drift:.3e}, accepted={result.step_stats.accepted}, "
                           f"rejected={result.step_stats.rejected}")
    return table


def cmd_criteria(args):
    p = params_from_args(args)
    report = criteria_report(p, args.threshold)
    content = report.as_dict()
    content["params"] = p.as_dict()
    content["analyticCoupling"] = analytic_coupling(p)
    content["analyticDrift"] = analytic_drift(p)
    content["maxDeviation"] = max_deviation(p)
    content["escapeTime"] = escape_time(p, args.threshold)
    if args.out is not None:
        save_json(args.out, content)
    else:
        print_report(content, args.json)
    return content


def cmd_sweep(args):
    spec = SweepSpec(omega0=args.omega0, omega_range=tuple(args.omega_range), theta_range=tuple(args.theta_range),
                     horizon=args.horizon, mode=args.mode, tol=args.tol)
    records = run_sweep(spec, workers=args.workers, verbose=args.verbose)
    table = sweep_table(records)
    save_csv(args.out, "sweep", table, spec.as_dict(), SWEEP_UNITS)
    if args.out is not None:
        save_json(sidecar_path(args.out), sweep_sidecar(spec, records))
    return table


def cmd_primed(args):
    """
    builds H'(t) = -U^dag H U from integrated evolution operators and checks it against
    the analytic rotating field with (theta', omega')
    """
    p = params_from_args(args)
    t_final = args.t_final if args.t_final is not None else horizon_time(p, 2)
    times = uf.uniform_grid(t_final, args.samples)
    unitaries = evolution_operator_series(RotatingFieldModel(p), times, args.tol, args.method)
    reduction = primed_reduction(p, times, unitaries)
    envelope, from_limit = primed_envelope(p)
    primed = reduction["primed"]
    content = {"params": p.as_dict(),
               "thetaPrimed": primed.params.theta,
               "omegaPrimed": primed.params.omega,
               "rawThetaPrimed": primed.raw_theta,
               "rawOmegaPrimed": primed.raw_omega,
               "folding": primed.folding,
               "rotationVector": reduction["rotation_vector"],
               "residual": reduction["residual"],
               "spectrumError": reduction["spectrum_error"],
               "primedEnvelope": envelope,
               "primedEnvelopeFromLimit": from_limit,
               "sinTheta": float(np.sin(p.theta)),
               "aPrioriValue": a_priori_value(p),
               "tFinal": float(t_final),
               "samples": int(times.size),
               }
    if reduction["residual"] > args.max_residual:
        raise VerificationException(f"[primed] residual {reduction['residual']:.3e} exceeds {args.max_residual:.1e}")
    if args.out is not None:
        save_json(args.out, content)
    else:
        print_report(content, args.json)
    return content


def cmd_scaling(args):
    result = epsilon_scaling(theta=args.theta, epsilons=args.epsilons, turns=args.turns, verbose=args.verbose)
    table = pd.DataFrame({"epsilon": result.epsilons,
                          "error": result.errors,
                          "zerothAligned": [point.zeroth_aligned for point in result.points],
                          "firstAligned": [point.first_aligned for point in result.points],
                          "order1Ratio": [point.order1_ratio for point in result.points],
                          "gridPoints": [point.grid_points for point in result.points]})
    echo = {"theta": result.theta, "turns": result.turns, "epsilons": result.epsilons,
            "cell": opts.SCALING_CELL, "jitterPoints": opts.SCALING_JITTER_POINTS}
    if args.out is not None:
        save_csv(args.out, "scaling", table, echo, SCALING_UNITS)
    slope = "not-applicable" if result.slope is None else uf.format_number(result.slope)
    print(f"slope={slope}")
    return result
