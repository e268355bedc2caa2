import numpy as np
import pytest

import settings
from core.operators import IDENTITY, PAULI_Z
from models.rotating_field import RotatingFieldParams, field_direction, rotating_field_hamiltonian, \
    rotating_frame_geometry, sin_theta_minus_beta, primed_params, primed_hamiltonian_numeric, primed_reduction, \
    analytic_coupling, analytic_drift, instantaneous_states
from models.hamiltonian_models import RotatingFieldModel, StaticModel, MirroredModel, scaled_rotating_params
from models.model_factory import model_factory
from core.scaled_problem import problem_from_epsilon
from propagator.rabi import rabi_propagator
from propagator.integrator import evolution_operator_series
from utils.util_class import WrongInputException, DegenerateGeometryException, PreconditionException


def random_params(count, seed=7):
    rng = np.random.default_rng(seed)
    omega0 = rng.uniform(0.2, 3., count)
    omega = rng.uniform(-2., 2., count) * omega0
    theta = rng.uniform(0., np.pi / 2, count)
    return [RotatingFieldParams(*values) for values in zip(omega0, omega, theta)]


def test_params_validation():
    for values in [(0., 1., 0.1), (-1., 1., 0.1), (1., 1., -0.2), (1., 1., 2.), (1., np.nan, 0.1)]:
        with pytest.raises(WrongInputException):
            RotatingFieldParams(*values)
    p = RotatingFieldParams(1, -2, np.pi / 2)
    assert isinstance(p.omega0, float)
    assert np.isclose(p.period(), np.pi)
    assert RotatingFieldParams(1., 0., 0.3).period() == np.inf
    print("!!! test_params_validation passed")


def test_field_direction():
    assert np.allclose(field_direction(RotatingFieldParams(1., 0.4, 0.), 3.3), [0, 0, 1])
    assert np.allclose(field_direction(RotatingFieldParams(1., 1., np.pi / 2), 0.), [1, 0, 0])
    direction = field_direction(RotatingFieldParams(1., -1., 0.1), np.pi)
    assert np.allclose(direction, [-0.0998334, 0., 0.9950042], atol=1e-7)
    series = field_direction(RotatingFieldParams(1., 0.3, 0.8), np.linspace(0., 10., 7))
    assert series.shape == (7, 3)
    assert np.allclose(np.linalg.norm(series, axis=1), 1.)
    print("!!! test_field_direction passed")


def test_rotating_field_hamiltonian():
    assert np.allclose(rotating_field_hamiltonian(RotatingFieldParams(2., 0.7, 0.), 1.2).matrix, -PAULI_Z)
    p = RotatingFieldParams(1., -1., 0.1)
    hamiltonian = rotating_field_hamiltonian(p, np.pi)
    expected = -0.5 * np.array([[0.9950042, -0.0998334], [-0.0998334, -0.9950042]])
    assert np.allclose(hamiltonian.matrix, expected, atol=1e-7)
    for q in random_params(20):
        for t in [0., 0.37, 5.]:
            assert np.allclose(rotating_field_hamiltonian(q, t).eigenvalues(), [-q.omega0 / 2, q.omega0 / 2])
            ground, excited = instantaneous_states(q, t)
            matrix = rotating_field_hamiltonian(q, t).matrix
            assert np.allclose(matrix @ ground, -q.omega0 / 2 * ground)
            assert np.allclose(matrix @ excited, q.omega0 / 2 * excited)
    print("!!! test_rotating_field_hamiltonian passed")


def test_rotating_frame_geometry_examples():
    geometry = rotating_frame_geometry(RotatingFieldParams(1.5, 0., 0.4))
    assert np.isclose(geometry.omega_bar, 1.5) and np.isclose(geometry.beta, 0.4)
    assert abs(rotating_frame_geometry(RotatingFieldParams(1., 1., 0.1)).beta - 0.05) < 1e-12
    assert abs(rotating_frame_geometry(RotatingFieldParams(1., -1., 0.1)).omega_bar - 2 * np.sin(0.05)) < 1e-12
    assert np.isclose(rotating_frame_geometry(RotatingFieldParams(1., -1., 0.1)).omega_bar, 0.0999583)
    # beta passes pi/2 when the rotation overcompensates the axial field
    assert rotating_frame_geometry(RotatingFieldParams(1., -1.5, 0.3)).beta > np.pi / 2
    print("!!! test_rotating_frame_geometry_examples passed")


def test_rotating_frame_geometry_identities():
    for p in random_params(100):
        geometry = rotating_frame_geometry(p)
        omega_bar, beta = geometry.omega_bar, geometry.beta
        assert abs(omega_bar * np.sin(beta) - p.omega0 * np.sin(p.theta)) < 1e-10
        assert abs(omega_bar * np.cos(beta) - p.omega0 * np.cos(p.theta) - p.omega) < 1e-10
        law_of_cosines = omega_bar ** 2 - p.omega0 ** 2 - p.omega ** 2 - 2 * p.omega0 * p.omega * np.cos(p.theta)
        assert abs(law_of_cosines) < 1e-10 * p.omega0 ** 2
        assert abs(np.sin(p.theta - beta) - sin_theta_minus_beta(p)) < 1e-10
        if p.omega > 0:
            assert omega_bar >= p.omega0
    assert rotating_frame_geometry(RotatingFieldParams(1., -1., 0.1)).omega_bar < 1.
    print("!!! test_rotating_frame_geometry_identities passed")


def test_degenerate_geometry():
    p = RotatingFieldParams(1., -1., 0.)
    geometry = rotating_frame_geometry(p)
    assert geometry.degenerate and geometry.omega_bar == 0.
    with pytest.raises(DegenerateGeometryException):
        geometry.require_beta()
    with pytest.raises(DegenerateGeometryException):
        primed_params(p)
    print("!!! test_degenerate_geometry passed")


def test_primed_params():
    primed = primed_params(RotatingFieldParams(1., 0., 0.6))
    assert abs(primed.params.theta) < 1e-15 and np.isclose(primed.params.omega, -1.)
    primed = primed_params(RotatingFieldParams(1., 1., 0.1))
    assert primed.folding == "none"
    assert abs(primed.params.theta - 0.05) < 1e-12
    assert abs(primed.params.omega + 1.9975005) < 1e-7
    assert np.isclose(rotating_frame_geometry(primed_params(RotatingFieldParams(1., 0.3, 0.7)).params).omega_bar,
                      0.3, atol=1e-10)
    assert primed_params(RotatingFieldParams(1., -0.5, 1.)).folding == "mirror_z"
    folded = primed_params(RotatingFieldParams(1., -1.5, 0.3))
    assert folded.folding == "mirror_z+flip_x"
    assert 0. <= folded.params.theta <= np.pi / 2
    assert folded.raw_theta < 0 and folded.raw_omega < 0
    print("!!! test_primed_params passed")


def test_primed_identities():
    for p in random_params(100, seed=11):
        primed = primed_params(p).params
        geometry = rotating_frame_geometry(primed)
        assert abs(geometry.omega_bar - abs(p.omega)) < 1e-10
        envelope = abs(primed.omega * np.sin(primed.theta)) / geometry.omega_bar
        assert abs(envelope - np.sin(p.theta)) < 1e-10
    print("!!! test_primed_identities passed")


def test_primed_hamiltonian_numeric():
    p = RotatingFieldParams(1., 1., 0.1)
    primed = primed_hamiltonian_numeric(p, 0., IDENTITY)
    assert np.allclose(primed.matrix, -rotating_field_hamiltonian(p, 0.).matrix)
    for t in [0.5, 3., 11.]:
        spectrum = primed_hamiltonian_numeric(p, t, rabi_propagator(p, t)).eigenvalues()
        assert np.allclose(spectrum, [-0.5, 0.5], atol=1e-12)
    with pytest.raises(PreconditionException):
        primed_hamiltonian_numeric(p, 1., 1.1 * IDENTITY)
    print("!!! test_primed_hamiltonian_numeric passed")


def test_primed_reduction_closed_form():
    for values in [(1., 1., 0.1), (1., 0.05, 0.5), (1., -0.5, 1.), (1., -1.5, 0.3), (2., 0.7, 1.3), (1., 0., 0.4)]:
        p = RotatingFieldParams(*values)
        times = np.linspace(0., 20., 200)
        report = primed_reduction(p, times, rabi_propagator(p, times))
        assert report["residual"] < 1e-8, f"{values}: residual {report['residual']:.3e}"
        assert report["spectrum_error"] < 1e-12
    print("!!! test_primed_reduction_closed_form passed")


def test_primed_reduction_integrated():
    p = RotatingFieldParams(1., 1., 0.1)
    times = np.linspace(0., 4 * np.pi, 200)
    unitaries = evolution_operator_series(RotatingFieldModel(p), times)
    report = primed_reduction(p, times, unitaries)
    assert report["residual"] < 1e-6
    print("!!! test_primed_reduction_integrated passed")


def test_analytic_coupling_and_drift():
    p = RotatingFieldParams(1., 1., 0.1)
    assert np.isclose(analytic_coupling(p), 0.0499167, atol=1e-7)
    assert analytic_coupling(RotatingFieldParams(1., 2., 0.)) == 0.
    assert np.isclose(analytic_drift(p), 1 - np.cos(0.1))
    assert analytic_drift(RotatingFieldParams(1., 0., 0.5)) == 0.
    print("!!! test_analytic_coupling_and_drift passed")


def test_models_and_factory():
    p = RotatingFieldParams(1., 0.2, 0.3)
    model = model_factory("rotating_field", params=p)
    assert np.allclose(model.matrix(1.5), rotating_field_hamiltonian(p, 1.5).matrix)
    same = model_factory("rotating_field", omega0=1., omega=0.2, theta=0.3)
    assert same.params == p
    static = model_factory("static", matrix=-0.5 * PAULI_Z)
    assert isinstance(static, StaticModel)
    mirrored = model_factory("mirrored", model=model, t_final=4.)
    assert isinstance(mirrored, MirroredModel)
    assert np.allclose(mirrored.matrix(1.), -model.matrix(3.))
    assert mirrored.describe()["source"]["model"] == "rotating_field"
    with pytest.raises(WrongInputException):
        model_factory("linear_sweep")
    with pytest.raises(WrongInputException):
        model_factory("rotating_field", omega0=1.)
    with pytest.raises(WrongInputException):
        RotatingFieldModel((1., 0.2, 0.3))
    print("!!! test_models_and_factory passed")


def test_scaled_rotating_params():
    problem = problem_from_epsilon(0.01)
    p = scaled_rotating_params(0.5, problem, turns=0.5)
    assert np.isclose(p.omega0, 1.)
    # half a turn over tau = 1 / epsilon
    assert np.isclose(p.omega * problem.time_scale, np.pi)
    assert np.isclose(p.omega, np.pi * 0.01)
    print("!!! test_scaled_rotating_params passed")


if __name__ == "__main__":
    test_params_validation()
    test_field_direction()
    test_rotating_field_hamiltonian()
    test_rotating_frame_geometry_examples()
    test_rotating_frame_geometry_identities()
    test_degenerate_geometry()
    test_primed_params()
    test_primed_identities()
    test_primed_hamiltonian_numeric()
    test_primed_reduction_closed_form()
    test_primed_reduction_integrated()
    test_analytic_coupling_and_drift()
    test_models_and_factory()
    test_scaled_rotating_params()
