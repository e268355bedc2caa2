from dataclasses import dataclass
import numpy as np

from config import opts
from models.rotating_field import RotatingFrameGeometry, rotating_frame_geometry, primed_params
from propagator.rabi import rabi_deviation


@dataclass(frozen=True)
class CriteriaReport:
    a_priori_value: float
    a_priori_generic: float
    a_posteriori_amplitude: float
    intuitive_value: float
    geometry: RotatingFrameGeometry
    threshold: float

    @property
    def verdict_a_priori(self):
        return bool(self.a_priori_value < self.threshold)

    @property
    def verdict_a_posteriori(self):
        return bool(self.a_posteriori_amplitude < self.threshold)

    @property
    def verdict_intuitive(self):
        return bool(self.intuitive_value < self.threshold)

    def as_dict(self):
        return {"omegaBar": self.geometry.omega_bar,
                "beta": self.geometry.beta,
                "aPrioriValue": self.a_priori_value,
                "aPrioriGeneric": self.a_priori_generic,
                "aPosterioriEnvelope": self.a_posteriori_amplitude,
                "intuitiveValue": self.intuitive_value,
                "threshold": self.threshold,
                "verdicts": {"aPriori": self.verdict_a_priori,
                             "aPosteriori": self.verdict_a_posteriori,
                             "intuitive": self.verdict_intuitive},
                }


def a_priori_value(p):
    """
    :return: |omega sin(theta) / omega0|
    """
    return abs(p.omega * np.sin(p.theta) / p.omega0)


def a_priori_generic(p):
    """
    :return: |<m_dot|0>| / (E_1 - E_0) = |omega| sin(theta) / (2 omega0)
    """
    return abs(p.omega) * np.sin(p.theta) / (2. * p.omega0)


def intuitive_value(p):
    """
    :return: |omega / omega0|, the naive "slow rotation" number
    """
    return abs(p.omega / p.omega0)


def a_posteriori_deviation(p, t):
    """
    :return: 1 - |<0(t)|psi(t)>| of the exact solution started in the ground state
    """
    return rabi_deviation(p, t)


def a_posteriori_envelope(p):
    """
    :return: |omega sin(theta) / omega_bar| = |sin(theta - beta)|
    """
    geometry = rotating_frame_geometry(p)
    geometry.require_beta()
    return abs(p.omega * np.sin(p.theta)) / geometry.omega_bar


def max_deviation(p):
    """
    :return: max over t of 1 - |<0(t)|psi(t)>|, reached at omega_bar t = pi
    """
    envelope = a_posteriori_envelope(p)
    return envelope ** 2 / (1. + np.sqrt(1. - envelope ** 2))


def escape_time(p, threshold=opts.CRITERION_THRESHOLD):
    """
    :return: first t at which 1 - |<0(t)|psi(t)>| reaches threshold, inf if it never does
    """
    geometry = rotating_frame_geometry(p)
    if geometry.degenerate or p.omega == 0 or p.theta == 0:
        return np.inf
    envelope = a_posteriori_envelope(p)
    if max_deviation(p) < threshold:
        return np.inf
    # 1 - sqrt(1 - envelope^2 sin^2(x)) = threshold
    sin_squared = (1. - (1. - threshold) ** 2) / envelope ** 2
    half_angle = np.arcsin(np.sqrt(min(sin_squared, 1.)))
    return float(2. * half_angle / geometry.omega_bar)


def primed_envelope(p):
    """
    a posteriori envelope of the primed system |omega' sin(theta')| / omega_bar'
    :return: (envelope, from_limit), from_limit=True when omega = 0 and omega_bar' vanishes,
        the envelope then takes its limit sin(theta)
    """
    primed = primed_params(p).params
    geometry = rotating_frame_geometry(primed)
    if geometry.degenerate:
        return float(np.sin(p.theta)), True
    return float(abs(primed.omega * np.sin(primed.theta)) / geometry.omega_bar), False


def criteria_report(p, threshold=opts.CRITERION_THRESHOLD):
    geometry = rotating_frame_geometry(p)
    return CriteriaReport(a_priori_value=float(a_priori_value(p)),
                          a_priori_generic=float(a_priori_generic(p)),
                          a_posteriori_amplitude=float(a_posteriori_envelope(p)),
                          intuitive_value=float(intuitive_value(p)),
                          geometry=geometry,
                          threshold=float(threshold))
