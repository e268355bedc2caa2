import numpy as np

from core.operators import HermitianOperator2
from models.rotating_field import RotatingFieldParams, rotating_field_matrix
from utils.util_class import WrongInputException


class HamiltonianModel:
    """
    time-dependent 2x2 Hamiltonian H(t)
    matrix(t) is the fast unchecked path used by integrators, hamiltonian(t) validates Hermiticity
    """
    def matrix(self, t):
        raise NotImplementedError()

    def hamiltonian(self, t):
        return HermitianOperator2(self.matrix(t))

    def describe(self):
        return {"model": self.__class__.__name__}


class RotatingFieldModel(HamiltonianModel):
    def __init__(self, params):
        if not isinstance(params, RotatingFieldParams):
            raise WrongInputException(f"[RotatingFieldModel] expects RotatingFieldParams, got {type(params)}")
        self.params = params

    def matrix(self, t):
        return rotating_field_matrix(self.params, t)

    def describe(self):
        return {"model": "rotating_field", **self.params.as_dict()}


class StaticModel(HamiltonianModel):
    def __init__(self, matrix):
        self.operator = HermitianOperator2(matrix)

    def matrix(self, t):
        return self.operator.as_array()

    def describe(self):
        return {"model": "static", "eigenvalues": self.operator.eigenvalues().tolist()}


class MirroredModel(HamiltonianModel):
    """
    H~(t) = -H(T - t): evolving with H up to T and then with H~ up to T returns the initial state
    """
    def __init__(self, model, t_final):
        self.model = model
        self.t_final = float(t_final)

    def matrix(self, t):
        return -self.model.matrix(self.t_final - t)

    def describe(self):
        return {"model": "mirrored", "t_final": self.t_final, "source": self.model.describe()}


def scaled_rotating_params(theta, problem, turns, energy_scale=None):
    """
    H(t) = E H_hat(t / tau) for a rotating field path H_hat(s) of unit gap
    that turns by `turns` revolutions while s runs over [0, 1]
    :param problem: ScaledProblem
    :return: RotatingFieldParams of the physical-time Hamiltonian
    """
    energy = problem.energy_scale if energy_scale is None else energy_scale
    omega = 2. * np.pi * turns / problem.time_scale
    return RotatingFieldParams(omega0=energy, omega=omega, theta=theta)
