"""
Independent closed-form routes used to cross-check the numerical pipeline.

None of these touch the sparse Hamiltonian or the eigensolver. The
two-site ring H = 2J S_1.S_2 = J[S_tot(S_tot+1) - 2s(s+1)] has levels
labelled by total spin S = 0..2s with degeneracy 2S+1, so every thermal
quantity at L = 2 is a short sum over S.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq


def pair_levels(s: float, J: float = 1.0):
    """(energies, degeneracies) of the L = 2 periodic ring."""
    S = np.arange(int(round(2 * s)) + 1, dtype=float)
    return J * (S * (S + 1) - 2 * s * (s + 1)), 2 * S + 1


def pair_moments(s: float, J: float, T: float):
    """(<H>, <H^2>) for the L = 2 ring at temperature T."""
    E, g = pair_levels(s, J)
    w = g * np.exp(-(E - E.min()) / T)
    w /= w.sum()
    return float(w @ E), float(w @ E**2)


def pair_tc(s: float, J: float = 1.0) -> float:
    """T where <H> = -2 J s^2 on the L = 2 ring, by Brent's method."""
    target = -2 * J * s * s

    def f(T):
        return pair_moments(s, J, T)[0] - target

    hi = J
    while f(hi) < 0:
        hi *= 2
    return brentq(f, 1e-3 * J, hi, xtol=1e-14, rtol=1e-15)


def spin1_negativity_threshold(J: float = 1.0) -> float:
    """Temperature where the two-site spin-1 negativity vanishes.

    <H^2> = 8J^2 with u = exp(2J/T) reduces to 2u^3 - 3u^2 - 5 = 0.
    """
    u = brentq(lambda u: 2 * u**3 - 3 * u**2 - 5, 1.5, 3.0, xtol=1e-15)
    return 2 * J / np.log(u)


def spin_half_pair_negativity(J: float, T: float) -> float:
    """Negativity of the two-qubit Gibbs state from the singlet weight.

    The state is p_singlet |singlet><singlet| + (1 - p_singlet) P_triplet/3,
    whose partial transpose has lowest eigenvalue (1 - 2 p_singlet)/2.
    """
    E, g = pair_levels(0.5, J)
    w = g * np.exp(-(E - E.min()) / T)
    p_singlet = w[0] / w.sum()
    return max(0.0, (2 * p_singlet - 1) / 2)


def classical_ring_minimum(L: int, s: float, J: float = 1.0, grid: int = 720) -> float:
    """Lowest energy of classical spins of length s on a periodic ring.

    Compares the closing uniform twists theta = 2 pi n / L; for L <= 3
    also brute-forces a fine grid of free relative angles.
    """
    best = np.inf
    for n in range(L):
        theta = 2 * np.pi * n / L
        best = min(best, J * L * s * s * np.cos(theta))
    # free-angle brute force for tiny rings as a second check
    if L <= 3:
        angles = np.linspace(0, 2 * np.pi, grid, endpoint=False)
        if L == 2:
            e = 2 * J * s * s * np.cos(angles)
            best = min(best, e.min())
        else:
            a, b = np.meshgrid(angles, angles, indexing="ij")
            e = J * s * s * (np.cos(a) + np.cos(b - a) + np.cos(b))
            best = min(best, e.min())
    return float(best)
