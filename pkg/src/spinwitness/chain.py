"""
Periodic spin-s Heisenberg chain Hamiltonians and their total-Sz sectors.

The Hamiltonian is the literal bond sum ``J * sum_i S_i . S_{i+1}`` with
site L+1 identified with site 1. For L = 2 this counts the single bond
twice, so H = 2J S_1.S_2; the ground energy is then -2J s(s+1).

Sites are numbered 0..L-1 internally and site 0 is the most significant
digit of a product-basis index (the order produced by ``np.kron``).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sps

from .errors import InstanceTooLarge
from .spinalg import SpinValue, ladder_matrices, sz_matrix

log = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 20000
DEFAULT_MAX_VECTOR_DIM = 8192


def max_dim() -> int:
    """Dimension budget for a full spectrum (env ``SPINWITNESS_MAX_DIM``)."""
    return int(os.environ.get("SPINWITNESS_MAX_DIM", DEFAULT_MAX_DIM))


def max_vector_dim() -> int:
    """Dimension budget when eigenvectors are requested (env ``SPINWITNESS_MAX_VECTOR_DIM``)."""
    return int(os.environ.get("SPINWITNESS_MAX_VECTOR_DIM", DEFAULT_MAX_VECTOR_DIM))


@dataclass(frozen=True)
class ChainSpec:
    """One Hamiltonian instance: spin, number of sites, coupling, boundary."""

    spin: SpinValue
    L: int
    J: float = 1.0
    periodic: bool = True

    def __post_init__(self):
        if not isinstance(self.spin, SpinValue):
            object.__setattr__(self, "spin", SpinValue.parse(self.spin, max_twice_s=None))
        if int(self.L) != self.L or self.L < 2:
            raise ValueError(f"L must be an integer >= 2, got {self.L}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "J", float(self.J))
        if not np.isfinite(self.J):
            raise ValueError("J must be finite")
        if self.J <= 0:
            log.warning("J=%g <= 0: not the antiferromagnetic case; witness bounds assume J > 0", self.J)

    @property
    def s(self) -> float:
        return self.spin.s

    @property
    def d(self) -> int:
        return self.spin.dim

    @property
    def antiferromagnetic(self) -> bool:
        return self.J > 0

    def with_coupling(self, J: float) -> "ChainSpec":
        return ChainSpec(self.spin, self.L, J, self.periodic)

    def bonds(self) -> list[tuple[int, int]]:
        """Bond list of the literal sum; for periodic L = 2 the bond (0, 1) appears twice."""
        pairs = [(i, i + 1) for i in range(self.L - 1)]
        if self.periodic:
            pairs.append((self.L - 1, 0))
        return pairs

    def describe(self) -> str:
        bc = "periodic" if self.periodic else "open"
        return f"s={self.spin} L={self.L} J={self.J!r} {bc}"


def dimension(spec: ChainSpec, budget: int | None = None) -> int:
    """Full Hilbert-space dimension (2s+1)^L, checked against the budget."""
    dim = spec.d**spec.L
    budget = max_dim() if budget is None else budget
    if dim > budget:
        raise InstanceTooLarge(
            f"{spec.describe()}: dimension {dim} exceeds budget {budget}"
        )
    return dim


def _embed(factors: dict[int, np.ndarray], L: int, d: int) -> sps.csr_matrix:
    """Place single-site operators on the given sites, identities elsewhere."""
    out = None
    run = 0  # pending identity sites
    for site in range(L):
        if site not in factors:
            run += 1
            continue
        block = sps.csr_matrix(factors[site])
        if run:
            block = sps.kron(sps.identity(d**run, format="csr"), block, format="csr")
            run = 0
        out = block if out is None else sps.kron(out, block, format="csr")
    if run:
        out = sps.kron(out, sps.identity(d**run, format="csr"), format="csr")
    return out


def bond_operator(spec: ChainSpec, i: int, j: int) -> sps.csr_matrix:
    """S_i . S_j embedded in the full chain space (no coupling factor)."""
    sz = sz_matrix(spec.spin)
    splus, sminus = ladder_matrices(spec.spin)
    L, d = spec.L, spec.d
    op = _embed({i: sz, j: sz}, L, d)
    op = op + 0.5 * _embed({i: splus, j: sminus}, L, d)
    op = op + 0.5 * _embed({i: sminus, j: splus}, L, d)
    return op


def build_hamiltonian(spec: ChainSpec, budget: int | None = None) -> sps.csr_matrix:
    """Sparse real symmetric H = J sum_bonds S_i . S_j."""
    dim = dimension(spec, budget)
    H = sps.csr_matrix((dim, dim))
    for i, j in spec.bonds():
        H = H + bond_operator(spec, i, j)
    H = (spec.J * H).tocsr()
    H.sum_duplicates()
    H.eliminate_zeros()
    return H


def basis_twice_sz(spec: ChainSpec) -> np.ndarray:
    """2 * total Sz for every product-basis index."""
    digits = np.indices((spec.d,) * spec.L).reshape(spec.L, -1)
    return spec.L * spec.spin.twice_s - 2 * digits.sum(axis=0)


@dataclass(frozen=True)
class SectorIndex:
    """Basis indices grouped by total Sz (keys are 2*Sz, descending)."""

    sectors: dict[int, np.ndarray] = field(default_factory=dict)

    def sizes(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.sectors.items()}

    def __iter__(self):
        return iter(self.sectors.items())

    def __len__(self):
        return len(self.sectors)


def sector_index(spec: ChainSpec) -> SectorIndex:
    tsz = basis_twice_sz(spec)
    keys = sorted(np.unique(tsz).tolist(), reverse=True)
    return SectorIndex({k: np.flatnonzero(tsz == k) for k in keys})


def sector_split(spec: ChainSpec, H=None, index: SectorIndex | None = None):
    """Dense diagonal blocks of H, one per total-Sz sector.

    Returns a list of ``(twice_sz, block)`` with blocks indexed by
    ``sector_index(spec).sectors[twice_sz]``.
    """
    H = build_hamiltonian(spec) if H is None else sps.csr_matrix(H)
    index = sector_index(spec) if index is None else index
    return [(k, H[idx][:, idx].toarray()) for k, idx in index]


def sector_dimension(spec: ChainSpec, twice_sz: int = None) -> int:
    """Size of one total-Sz sector by polynomial counting, without building the basis.

    Defaults to the smallest |Sz| sector (the largest one).
    """
    d = spec.d
    counts = np.array([1], dtype=object)
    for _ in range(spec.L):
        counts = np.convolve(counts, np.ones(d, dtype=object))
    # counts[k] = number of states with sum of digits k; 2Sz = L*2s - 2k
    if twice_sz is None:
        twice_sz = (spec.L * spec.spin.twice_s) % 2
    k2 = spec.L * spec.spin.twice_s - twice_sz
    if k2 % 2 or not 0 <= k2 // 2 < len(counts):
        return 0
    return int(counts[k2 // 2])
