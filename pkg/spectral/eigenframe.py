"""
Instantaneous eigensystems on a time grid.

Phases follow the discrete parallel transport: every same-band overlap <n(t_k)|n(t_k+1)>
is made real and positive, the grid version of <n|n_dot> = 0. Bands are continued by overlap,
not by energy ordering.
"""
from dataclasses import dataclass
import numpy as np

from config import opts
from core.operators import HermitianOperator2
from utils.util_class import WrongInputException, PreconditionException, GridTooCoarseException, \
    OutOfRangeException
import utils.util_funcs as uf
from utils.decorators import shape_check


@dataclass(frozen=True)
class EigenFrame:
    times: np.ndarray       # [N]
    energies: np.ndarray    # [N, 2], per band
    states: np.ndarray      # [N, 2, 2], states[k, n] is the eigenvector of band n at times[k]
    gap_min: float
    band_swaps: int = 0

    def __post_init__(self):
        for name in ("times", "energies", "states"):
            array = np.array(getattr(self, name))
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def check_time(self, t):
        slack = 1e-12 * max(1., abs(self.times[-1]))
        if t < self.times[0] - slack or t > self.times[-1] + slack:
            raise OutOfRangeException(f"t={t} is outside the frame grid [{self.times[0]}, {self.times[-1]}]")
        return float(np.clip(t, self.times[0], self.times[-1]))

    def bracket(self, t):
        """
        :return: (k, weight) with t = (1 - weight) times[k] + weight times[k + 1], weight = 0 on grid times
        """
        t = self.check_time(t)
        index = int(np.argmin(np.abs(self.times - t)))
        spacing = np.min(np.diff(self.times))
        if abs(self.times[index] - t) <= 1e-9 * spacing:
            return index, 0.
        k = int(np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, self.times.size - 2))
        return k, float((t - self.times[k]) / (self.times[k + 1] - self.times[k]))

    def band_state(self, n, k, weight):
        """
        :return: eigenvector of band n between times[k] and times[k + 1], in the gauge of sample k
        """
        if weight == 0.:
            return self.states[k, n].copy()
        start, end = self.states[k, n], self.states[k + 1, n]
        overlap = np.vdot(start, end)
        end = end * (abs(overlap) / overlap)
        blend = (1. - weight) * start + weight * end
        return blend / np.linalg.norm(blend)

    def band(self, n):
        return self.states[:, n, :]


def _fix_phase(vector):
    # largest component real and positive
    pivot = vector[np.argmax(np.abs(vector))]
    return vector * (abs(pivot) / pivot)


def instantaneous_eigensystem(hamiltonian):
    """
    :param hamiltonian: HermitianOperator2 or 2x2 Hermitian array
    :return: energies [2] ascending, states [2, 2] with states[n] the eigenvector of energies[n]
    """
    if not isinstance(hamiltonian, HermitianOperator2):
        hamiltonian = HermitianOperator2(hamiltonian)
    energies, vectors = np.linalg.eigh(hamiltonian.matrix)
    states = np.stack([_fix_phase(vectors[:, n]) for n in range(2)], axis=0)
    return energies, states


def check_grid(grid):
    grid = uf.check_finite(grid, "time grid").astype(float)
    if grid.ndim != 1 or grid.size < 2:
        raise WrongInputException(f"time grid needs at least 2 samples, got shape {grid.shape}")
    if np.any(np.diff(grid) <= 0):
        raise WrongInputException("time grid must be strictly increasing")
    return grid


@shape_check
def build_eigenframe(model, grid, min_overlap=opts.MIN_BAND_OVERLAP):
    """
    :param model: HamiltonianModel
    :param grid: strictly increasing sample times
    :return: EigenFrame in the discrete parallel-transport gauge
    """
    grid = check_grid(grid)
    matrices = np.stack([model.hamiltonian(t).matrix for t in grid], axis=0)
    energies, vectors = np.linalg.eigh(matrices)
    # [N, band, component]
    states = np.transpose(vectors, (0, 2, 1)).copy()
    states[0] = np.stack([_fix_phase(states[0, n]) for n in range(2)], axis=0)
    energies = energies.copy()

    swaps = 0
    for k in range(1, grid.size):
        overlaps = states[k - 1].conj() @ states[k].T
        if abs(overlaps[0, 1]) + abs(overlaps[1, 0]) > abs(overlaps[0, 0]) + abs(overlaps[1, 1]):
            states[k] = states[k, ::-1].copy()
            energies[k] = energies[k, ::-1].copy()
            overlaps = overlaps[:, ::-1]
            swaps += 1
        diagonal = np.diag(overlaps)
        if np.min(np.abs(diagonal)) < min_overlap:
            raise GridTooCoarseException(f"[build_eigenframe] same-band overlap {np.min(np.abs(diagonal)):.4f} "
                                         f"< {min_overlap} between t={grid[k - 1]:.6g} and t={grid[k]:.6g}")
        # <n(t_k-1)|n(t_k)> becomes real positive
        states[k] = states[k] * (diagonal.conj() / np.abs(diagonal))[:, np.newaxis]

    gap_min = float(np.min(np.abs(energies[:, 1] - energies[:, 0])))
    return EigenFrame(times=grid, energies=energies, states=states, gap_min=gap_min, band_swaps=swaps)


def _derivative(frame, indices, n):
    window = frame.states[indices, n, :]
    return np.gradient(window, frame.times[indices], axis=0, edge_order=2)


def coupling(frame, k, band=1, ground=0):
    """
    :param k: grid index
    :return: (<m_dot(t_k)|0(t_k)>, degraded) with degraded=True where only a one-sided difference exists
    """
    size = frame.times.size
    if k < 0 or k >= size:
        raise OutOfRangeException(f"grid index {k} is outside [0, {size - 1}]")
    if size < 3:
        raise GridTooCoarseException("coupling needs at least 3 grid samples")
    if 0 < k < size - 1:
        indices, position, degraded = np.arange(k - 1, k + 2), 1, False
    elif k == 0:
        indices, position, degraded = np.arange(0, 3), 0, True
    else:
        indices, position, degraded = np.arange(size - 3, size), 2, True
    derivative = _derivative(frame, indices, band)[position]
    return complex(np.vdot(derivative, frame.states[k, ground])), degraded


def coupling_series(frame, band=1, ground=0):
    """
    :return: <m_dot(t)|0(t)> on the whole grid [N], one-sided second order at both ends
    """
    if frame.times.size < 3:
        raise GridTooCoarseException("coupling needs at least 3 grid samples")
    derivative = np.gradient(frame.band(band), frame.times, axis=0, edge_order=2)
    return np.sum(derivative.conj() * frame.band(ground), axis=1)


def eigenstate_drift(frame, chunk=opts.DRIFT_CHUNK):
    """
    :return: max over bands and grid pairs of 1 - |<m(t1)|m(t2)>|
    """
    drift = 0.
    for n in range(2):
        band = frame.band(n)
        for start in range(0, band.shape[0], chunk):
            overlaps = np.abs(band[start:start + chunk].conj() @ band.T)
            drift = max(drift, float(np.max(1. - overlaps)))
    return max(drift, 0.)


def berry_phase(frame, band=0, closure_tol=1e-6):
    """
    geometric phase accumulated by parallel transport around a closed loop of the frame
    :return: arg <n(t_0)|n(t_N)> in (-pi, pi]
    """
    closing = np.vdot(frame.states[0, band], frame.states[-1, band])
    if abs(abs(closing) - 1.) > closure_tol:
        raise PreconditionException(f"[berry_phase] frame is not a closed loop, |<n(0)|n(T)>| = {abs(closing):.8f}")
    return float(np.angle(closing))
