"""
Command line front end

    python -m cli.cli_main evolve --omega0 1 --omega -1 --theta 0.1 --t-final 125.66 --out evolve.csv
    python -m cli.cli_main criteria --omega -1 --theta 0.1 --json
    python -m cli.cli_main sweep --omega-range -2 2 9 --theta-range 0 1.5 16 --out sweep.csv
    python -m cli.cli_main primed --omega 0.05 --theta 0.5 --json
    python -m cli.cli_main scaling --theta 0.5 --epsilons 0.1 0.05 0.02 0.01 0.005 --out scaling.csv

angles are in radians
"""
import sys
import argparse

import settings
from config import opts
from cli.commands import cmd_evolve, cmd_criteria, cmd_sweep, cmd_primed, cmd_scaling
from cli.writers import dump_json
from propagator.integrator import INTEGRATORS
from utils.util_class import WrongInputException, PreconditionException, GridTooCoarseException, \
    DegenerateGeometryException, VerificationException, OutOfRangeException, StiffnessException, \
    IntegrationException
import utils.util_funcs as uf

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4
EXIT_VERIFICATION = 5

EXIT_CODES = [(WrongInputException, EXIT_USAGE),
              (PreconditionException, EXIT_USAGE),
              (GridTooCoarseException, EXIT_USAGE),
              (OutOfRangeException, EXIT_USAGE),
              (DegenerateGeometryException, EXIT_DEGENERATE),
              (VerificationException, EXIT_VERIFICATION),
              (StiffnessException, EXIT_VERIFICATION),
              (IntegrationException, EXIT_VERIFICATION),
              (OSError, EXIT_IO),
              ]

COMMANDS = {"evolve": cmd_evolve, "criteria": cmd_criteria, "sweep": cmd_sweep,
            "primed": cmd_primed, "scaling": cmd_scaling}


def field_flags():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--omega0", type=float, default=1., help="field magnitude omega0 > 0")
    parser.add_argument("--omega", type=float, default=1., help="signed rotation rate of the field")
    parser.add_argument("--theta", type=float, default=0.1, help="cone angle in [0, pi/2], radians")
    return parser


def output_flags():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--out", type=str, default=None, help="output file, stdout when omitted")
    parser.add_argument("--json", action="store_true", help="machine-readable report and errors on stdout")
    return parser


def integrator_flags():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--tol", type=float, default=opts.TOLERANCE, help="relative and absolute tolerance")
    parser.add_argument("--method", type=str, default=opts.INTEGRATOR, choices=list(INTEGRATORS.keys()))
    return parser


def build_parser():
    parser = argparse.ArgumentParser(prog=opts.TOOL_NAME,
                                     description="adiabatic approximation lab for a spin 1/2 in a rotating field")
    parser.add_argument("--version", action="version", version=f"{opts.TOOL_NAME} {opts.TOOL_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)
    field, output, integrator = field_flags(), output_flags(), integrator_flags()

    evolve = commands.add_parser("evolve", parents=[field, output, integrator],
                                 help="integrate from the ground state, CSV of amplitudes and fidelity")
    evolve.add_argument("--t-final", type=float, default=None,
                        help=f"end time, default {opts.SWEEP_HORIZON} rotation periods")
    evolve.add_argument("--samples", type=int, default=opts.OUTPUT_SAMPLES)

    criteria = commands.add_parser("criteria", parents=[field, output],
                                   help="a priori, a posteriori and intuitive adiabaticity values")
    criteria.add_argument("--threshold", type=float, default=opts.CRITERION_THRESHOLD)

    sweep = commands.add_parser("sweep", parents=[output],
                                help="validity map over a grid of (omega, theta)")
    sweep.add_argument("--omega0", type=float, default=1.)
    sweep.add_argument("--omega-range", type=float, nargs=3, default=[-2., 2., 9], metavar=("MIN", "MAX", "COUNT"))
    sweep.add_argument("--theta-range", type=float, nargs=3, default=[0., 1.5, 16], metavar=("MIN", "MAX", "COUNT"))
    sweep.add_argument("--horizon", type=int, default=opts.SWEEP_HORIZON, help="rotation periods scanned")
    sweep.add_argument("--mode", type=str, default="closed-form", choices=["closed-form", "numeric", "both"])
    sweep.add_argument("--tol", type=float, default=opts.TOLERANCE)
    sweep.add_argument("--workers", type=int, default=opts.SWEEP_WORKERS)
    sweep.add_argument("--verbose", action="store_true")

    primed = commands.add_parser("primed", parents=[field, output, integrator],
                                 help="verify that -U^dag H U is again a rotating field")
    primed.add_argument("--t-final", type=float, default=None, help="end time, default two rotation periods")
    primed.add_argument("--samples", type=int, default=opts.PRIMED_GRID_POINTS)
    primed.add_argument("--max-residual", type=float, default=opts.PRIMED_RESIDUAL_MAX)

    scaling = commands.add_parser("scaling", parents=[output],
                                  help="error of the adiabatic approximation against epsilon")
    scaling.add_argument("--theta", type=float, default=opts.SCALING_THETA)
    scaling.add_argument("--epsilons", type=float, nargs="+", default=list(opts.SCALING_EPSILONS))
    scaling.add_argument("--turns", type=float, default=opts.SCALING_TURNS)
    scaling.add_argument("--verbose", action="store_true")
    return parser


def exit_code_of(error):
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return None


def report_error(args, code, error):
    uf.print_log(args.command, f"{type(error).__name__}: {error}")
    if getattr(args, "json", False):
        print(dump_json({"error": {"code": code, "message": str(error)}}))


def run(argv=None):
    """
    :param argv: arguments without the program name, sys.argv[1:] when None
    :return: exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code not in (0, None) else EXIT_OK

    try:
        COMMANDS[args.command](args)
    except Exception as error:
        code = exit_code_of(error)
        if code is None:
            raise
        report_error(args, code, error)
        return code
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
