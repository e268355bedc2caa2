import sys
import numpy as np

import settings
from cli.cli_main import run, COMMANDS
from utils.util_funcs import input_integer, input_float


def main():
    message = "\nPlease type a number according to the task you like to run \n" \
              "1) evolve a spin in a rotating field and save the ground-state fidelity \n" \
              "\t-> see cli/commands.py cmd_evolve \n" \
              "2) report adiabaticity criteria of one field \n" \
              "\t-> see adiabatic/criteria.py \n" \
              "3) sweep (omega, theta) into a validity map \n" \
              "\t-> see cli/sweep.py \n" \
              "4) verify the primed rotating field \n" \
              "\t-> see models/rotating_field.py primed_reduction \n" \
              "5) epsilon scaling of the adiabatic error \n" \
              "\t-> see adiabatic/scaling.py \n"

    task_id = input_integer(message, 1, 5)
    print(f"You selected task #{task_id}")
    command = list(COMMANDS.keys())[task_id - 1]
    argv = [command]
    if command in ("evolve", "criteria", "primed"):
        omega0 = input_float("omega0", 1.)
        omega = input_float("omega", 1.)
        theta = input_float("theta [rad]", 0.1)
        argv += ["--omega0", str(omega0), "--omega", str(omega), "--theta", str(theta)]
    if command in ("evolve", "sweep", "scaling"):
        argv += ["--out", f"{command}.csv"]
    if command in ("sweep", "scaling"):
        argv += ["--verbose"]
    return run(argv)


if __name__ == "__main__":
    np.set_printoptions(precision=3, suppress=True, linewidth=100)
    if len(sys.argv) > 1:
        sys.exit(run(sys.argv[1:]))
    sys.exit(main())
