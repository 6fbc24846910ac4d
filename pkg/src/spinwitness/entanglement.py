"""
Energy witness, partial transpose and negativity, and the two-site
SU(2)-invariant entanglement criteria.

The negativity from a direct partial transpose is the authoritative value;
``negativity_from_witness_spin1`` only evaluates the closed-form relation
for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spinalg import heisenberg_bond
from .thermal import DensityMatrix

NEGATIVITY_TOL = 1e-10


@dataclass(frozen=True)
class WitnessReport:
    T: float | None
    E_mean: float
    E_min: float
    W: float
    entangled_by_witness: bool


@dataclass(frozen=True)
class NegativityReport:
    N: float
    negative_eigenvalues: tuple[float, ...]
    tolerance_used: float


def witness(E_mean: float, E_min: float, T: float | None = None) -> WitnessReport:
    """W = <H> - E_min; W < 0 certifies entanglement."""
    W = float(E_mean) - float(E_min)
    return WitnessReport(T, float(E_mean), float(E_min), W, W < 0)


def _split(rho, dims):
    if isinstance(rho, DensityMatrix):
        dims = rho.dims if dims is None else dims
        rho = rho.matrix
    if dims is None or len(dims) != 2:
        raise ValueError(f"partial transpose needs exactly two subsystem dimensions, got {dims}")
    dA, dB = (int(d) for d in dims)
    rho = np.asarray(rho)
    if rho.shape != (dA * dB, dA * dB):
        raise ValueError(f"matrix shape {rho.shape} does not match dims {dims}")
    return rho, dA, dB


def partial_transpose(rho, dims=None, subsystem: str = "B") -> np.ndarray:
    """Transpose the indices of one subsystem of a bipartite operator.

    ``rho`` may be a :class:`DensityMatrix` (dims taken from it) or an
    array together with ``dims=(dA, dB)``.
    """
    rho, dA, dB = _split(rho, dims)
    t = rho.reshape(dA, dB, dA, dB)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(dA * dB, dA * dB)


def negativity(rho, dims=None, tol: float = NEGATIVITY_TOL, subsystem: str = "B") -> NegativityReport:
    """|sum of eigenvalues of the partial transpose below -tol|."""
    pt = partial_transpose(rho, dims, subsystem)
    pt = (pt + pt.conj().T) / 2
    ev = np.linalg.eigvalsh(pt)
    neg = ev[ev < -tol]
    return NegativityReport(float(abs(neg.sum())), tuple(float(x) for x in neg), tol)


def bond_correlation(rho2, spin) -> float:
    """<S_1 . S_2> in a two-site state."""
    m = rho2.matrix if isinstance(rho2, DensityMatrix) else np.asarray(rho2)
    return float(np.real(np.trace(m @ heisenberg_bond(spin))))


def squared_bond_correlation(rho2, spin) -> float:
    """<(S_1 . S_2)^2> in a two-site state."""
    m = rho2.matrix if isinstance(rho2, DensityMatrix) else np.asarray(rho2)
    b = heisenberg_bond(spin)
    return float(np.real(np.trace(m @ b @ b)))


def su2_criterion_spin_half(correlation: float) -> bool:
    """Two spin-1/2 SU(2)-invariant state is entangled iff <S1.S2> < -1/4."""
    return correlation < -0.25


def su2_criterion_spin_one(squared_correlation: float) -> bool:
    """Two spin-1 SU(2)-invariant state has a negative partial transpose iff <(S1.S2)^2> > 2."""
    return squared_correlation > 2


def negativity_from_witness_spin1(W: float, variance: float, J: float) -> float:
    """[(W - 2J)^2 + V(H)] / (8 J^2) - 1 for the two-site spin-1 ring.

    Matches the direct negativity only where the state is entangled; above
    that temperature the expression goes negative while N = 0.
    """
    if J <= 0:
        raise ValueError("J must be positive")
    return ((W - 2 * J) ** 2 + variance) / (8 * J * J) - 1
