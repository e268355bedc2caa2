from dataclasses import dataclass

from utils.util_class import WrongInputException


@dataclass(frozen=True)
class ScaledProblem:
    """
    H(t) = E * H_hat(t / tau); in scaled time s = t / tau the Schroedinger equation reads
    i * epsilon * d/ds psi = H_hat(s) psi with epsilon = 1 / (E * tau)
    """
    energy_scale: float
    time_scale: float
    epsilon: float

    def scaled_time(self, t):
        return t / self.time_scale

    def physical_time(self, s):
        return s * self.time_scale


def make_scaled_problem(energy_scale, time_scale):
    if not energy_scale > 0 or not time_scale > 0:
        raise WrongInputException(f"energy and time scales must be positive, got E={energy_scale}, tau={time_scale}")
    return ScaledProblem(float(energy_scale), float(time_scale), 1. / (energy_scale * time_scale))


def problem_from_epsilon(epsilon, energy_scale=1.):
    """
    :return: the problem with the given epsilon at fixed energy scale
    """
    if not epsilon > 0:
        raise WrongInputException(f"epsilon must be positive, got {epsilon}")
    return make_scaled_problem(energy_scale, 1. / (energy_scale * epsilon))
