"""
Single-site spin-s operators and their tensor products.

The local basis is ordered by descending magnetic quantum number,
``|s>, |s-1>, ..., |-s>``, everywhere in the package. A spin value is
carried as the integer ``twice_s = 2s`` so that half-integers never pass
through float comparisons.

Everything that enters the Hamiltonian is real: S^z and the ladder
operators have real matrix elements, and S.S is written as
``Sz Sz + (S+ S- + S- S+)/2``. Only S^y needs complex storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sps

#: Largest 2s accepted unless a caller raises it explicitly.
DEFAULT_MAX_TWICE_S = 5


@dataclass(frozen=True, order=True)
class SpinValue:
    """A spin quantum number s stored exactly as ``twice_s = 2s``."""

    twice_s: int

    def __post_init__(self):
        if isinstance(self.twice_s, bool) or not isinstance(self.twice_s, (int, np.integer)):
            raise TypeError(f"twice_s must be an integer, got {self.twice_s!r}")
        if self.twice_s < 1:
            raise ValueError(f"twice_s must be >= 1, got {self.twice_s}")
        object.__setattr__(self, "twice_s", int(self.twice_s))

    @property
    def s(self) -> float:
        return self.twice_s / 2

    @property
    def dim(self) -> int:
        """Local Hilbert-space dimension 2s+1."""
        return self.twice_s + 1

    @property
    def casimir(self) -> float:
        return self.s * (self.s + 1)

    @property
    def is_integer(self) -> bool:
        return self.twice_s % 2 == 0

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers in basis order (descending)."""
        return self.s - np.arange(self.dim)

    def __str__(self):
        return str(self.twice_s // 2) if self.is_integer else f"{self.twice_s}/2"

    @classmethod
    def parse(cls, text, max_twice_s: int | None = DEFAULT_MAX_TWICE_S) -> "SpinValue":
        """Parse ``"1/2"``, ``"0.5"``, ``"1"``, ``1.5`` and the like.

        Anything that is not a positive multiple of 1/2 is rejected.
        """
        if isinstance(text, SpinValue):
            value = text
        else:
            try:
                frac = Fraction(str(text).strip())
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"invalid spin {text!r}: expected e.g. '1/2', '0.5', '1'") from None
            twice = 2 * frac
            if twice.denominator != 1 or twice <= 0:
                raise ValueError(f"invalid spin {text!r}: must be a positive multiple of 1/2")
            value = cls(int(twice))
        if max_twice_s is not None and value.twice_s > max_twice_s:
            raise ValueError(
                f"spin {value} exceeds the supported maximum {Fraction(max_twice_s, 2)}"
            )
        return value


def _as_spin(s) -> SpinValue:
    return s if isinstance(s, SpinValue) else SpinValue.parse(s, max_twice_s=None)


def sz_matrix(s) -> np.ndarray:
    """Diagonal S^z with entries s, s-1, ..., -s."""
    return np.diag(_as_spin(s).m_values())


def ladder_matrices(s) -> tuple[np.ndarray, np.ndarray]:
    """Return (S+, S-) with <m+1|S+|m> = sqrt((s-m)(s+m+1))."""
    spin = _as_spin(s)
    m = spin.m_values()
    splus = np.zeros((spin.dim, spin.dim))
    # column k holds |m_k>, row k-1 holds |m_k + 1>
    for k in range(1, spin.dim):
        splus[k - 1, k] = np.sqrt((spin.s - m[k]) * (spin.s + m[k] + 1))
    return splus, splus.T.copy()


def sx_sy_matrices(s) -> tuple[np.ndarray, np.ndarray]:
    """Return (S^x, S^y); S^x is real, S^y is complex."""
    splus, sminus = ladder_matrices(s)
    sx = 0.5 * (splus + sminus)
    sy = (splus - sminus) / 2j
    return sx, sy


def spin_operators(s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(S^x, S^y, S^z) as dense arrays."""
    sx, sy = sx_sy_matrices(s)
    return sx, sy, sz_matrix(s)


def kron(a, b):
    """Tensor product; sparse if either factor is sparse, dense otherwise."""
    if sps.issparse(a) or sps.issparse(b):
        return sps.kron(a, b, format="csr")
    return np.kron(a, b)


def heisenberg_bond(s) -> np.ndarray:
    """S_1 . S_2 on the (2s+1)^2 pair space, coupling factored out."""
    sz = sz_matrix(s)
    splus, sminus = ladder_matrices(s)
    return np.kron(sz, sz) + 0.5 * (np.kron(splus, sminus) + np.kron(sminus, splus))
