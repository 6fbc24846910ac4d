"""
Gibbs-ensemble quantities at temperature T (k_B = 1).

Boltzmann weights are always shifted by the ground energy,
``w_i = exp(-(E_i - E_0)/T)``, which keeps every weight in (0, 1] and
avoids overflow for small T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InstanceTooLarge, MissingVectors
from .spectra import SpectralData

DEFAULT_STATE_BUDGET = 4096
WEIGHT_CUTOFF = 1e-16


@dataclass(frozen=True)
class ThermalObservables:
    T: float
    E_mean: float
    E2_mean: float
    variance: float
    logZ_shifted: float


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix on a product of subsystems."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        n = int(np.prod(self.dims))
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def check(self, trace_tol=1e-10, herm_tol=1e-12, psd_tol=1e-9):
        """Raise ``ValueError`` if a density-matrix invariant is violated."""
        m = self.matrix
        if abs(self.trace - 1) > trace_tol:
            raise ValueError(f"trace {self.trace} != 1")
        herm = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if herm > herm_tol:
            raise ValueError(f"Hermiticity residual {herm:g}")
        lo = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if lo < -psd_tol:
            raise ValueError(f"negative eigenvalue {lo:g}")
        return self


def _check_temperature(T):
    T = float(T)
    if not np.isfinite(T) or T <= 0:
        raise ValueError(f"temperature must be positive and finite, got {T}")
    return T


def boltzmann_weights(energies, T, E0=None):
    """Shifted weights exp(-(E - E0)/T); E0 defaults to min(energies)."""
    T = _check_temperature(T)
    energies = np.asarray(energies, dtype=float)
    E0 = energies.min() if E0 is None else E0
    return np.exp(-(energies - E0) / T)


def observables(sd: SpectralData, T: float) -> ThermalObservables:
    """<H>, <H^2>, V(H) and shifted log Z from the spectrum alone."""
    E = sd.eigenvalues
    w = boltzmann_weights(E, T, E[0])
    Z = w.sum()
    p = w / Z
    E_mean = float(p @ E)
    E2_mean = float(p @ (E * E))
    var = float(p @ (E - E_mean) ** 2)
    return ThermalObservables(float(T), E_mean, E2_mean, max(var, 0.0), float(np.log(Z)))


def mean_energy(eigenvalues, T) -> float:
    """<H> at temperature T from a bare eigenvalue array."""
    E = np.asarray(eigenvalues, dtype=float)
    w = boltzmann_weights(E, T)
    return float(w @ E / w.sum())


def _sector_weights(sd: SpectralData, T):
    E0 = sd.eigenvalues[0]
    Z = boltzmann_weights(sd.eigenvalues, T, E0).sum()
    for sec in sd.sectors:
        yield sec, boltzmann_weights(sec.values, T, E0) / Z


def _require_vectors(sd):
    if not sd.has_vectors:
        raise MissingVectors(f"{sd.spec.describe()}: spectrum was computed without eigenvectors")


def thermal_state(sd: SpectralData, T: float, budget: int = DEFAULT_STATE_BUDGET) -> DensityMatrix:
    """Full-chain Gibbs state exp(-H/T)/Z as a dense matrix."""
    _require_vectors(sd)
    if sd.dim > budget:
        raise InstanceTooLarge(f"dense thermal state of dimension {sd.dim} exceeds budget {budget}")
    rho = np.zeros((sd.dim, sd.dim))
    for sec, p in _sector_weights(sd, T):
        rho[np.ix_(sec.indices, sec.indices)] = (sec.vectors * p) @ sec.vectors.T
    return DensityMatrix(rho, (sd.spec.d,) * sd.spec.L)


def nn_reduced_density(sd: SpectralData, T: float, site: int = 0) -> DensityMatrix:
    """Two-site reduced Gibbs state of sites ``site`` and ``site+1`` (mod L).

    Sites are 0-based. Accumulates weighted eigenvector outer products in
    the pair space; the full density matrix is never formed.
    """
    _require_vectors(sd)
    spec = sd.spec
    L, d = spec.L, spec.d
    a, b = site % L, (site + 1) % L
    if not spec.periodic and b == 0:
        raise ValueError(f"open chain has no bond ({a}, {b})")
    pmax = max(p.max() for _, p in _sector_weights(sd, T))
    rho = np.zeros((d * d, d * d))
    for sec, p in _sector_weights(sd, T):
        keep = p > WEIGHT_CUTOFF * pmax
        if not keep.any():
            continue
        amps = np.zeros((sd.dim, int(keep.sum())))
        amps[sec.indices] = sec.vectors[:, keep] * np.sqrt(p[keep])
        amps = amps.reshape((d,) * L + (-1,))
        amps = np.moveaxis(amps, (a, b), (0, 1)).reshape(d * d, -1)
        rho += amps @ amps.T
    return DensityMatrix(rho, (d, d))
