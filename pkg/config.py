import os
import numpy as np


class AdiabaticOptions:
    """
    numerical options
    """
    TOLERANCE = 1e-10
    TOL_RANGE = (1e-13, 1e-6)
    NORM_DRIFT_FACTOR = 100.
    STEP_TOL_FACTOR = 1e-2
    MIN_STEP_TOL = 2.5e-14
    INTEGRATOR = "DOP853"
    OUTPUT_SAMPLES = 1000
    HERMITIAN_RTOL = 1e-12
    UNIT_VECTOR_TOL = 1e-9
    UNITARY_TOL = 1e-8
    STATE_NORM_TOL = 1e-10

    """
    spectral options
    """
    MIN_BAND_OVERLAP = 0.9
    MAX_PHASE_PER_CELL = np.pi / 4
    COUPLING_NOISE_FLOOR = 1e-12
    DRIFT_CHUNK = 256

    """
    criteria options: "<< 1" is read as "below CRITERION_THRESHOLD"
    """
    CRITERION_THRESHOLD = 0.1
    DEGENERATE_OMEGA_BAR = 1e-14

    """
    primed system options
    """
    PRIMED_RESIDUAL_MAX = 1e-4
    PRIMED_GRID_POINTS = 200

    """
    epsilon scaling options: half-turn rotating-field path in scaled time
    """
    SCALING_EPSILONS = (0.1, 0.05, 0.02, 0.01, 0.005)
    SCALING_THETA = 0.5
    SCALING_TURNS = 0.5
    SCALING_CELL = 0.05
    SCALING_JITTER_POINTS = 64

    """
    cli and output options
    """
    TOOL_NAME = "adiabatic-lab"
    TOOL_VERSION = "0.3.0"
    CSV_DIGITS = 17
    SWEEP_WORKERS = max(1, min(8, os.cpu_count() or 1))
    SWEEP_HORIZON = 10
    SWEEP_SAMPLES_PER_PERIOD = 400
    ENABLE_SHAPE_DECOR = False
    PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))


opts = AdiabaticOptions()
