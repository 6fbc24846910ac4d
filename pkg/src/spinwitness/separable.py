"""
Minimum energy over separable states of the Heisenberg ring.

Three independent routes to the same number:

* the closed form ``-J L s^2`` for even periodic rings,
* explicit pair states (the binomial-coefficient construction and, as a
  cross-check, spin coherent states rotated to +x and -x),
* a mean-field coordinate-descent minimizer over product states, which
  is the only route available for odd (frustrated) rings.

For a product state, <S_i . S_j> = <S_i> . <S_j>, so the energy of any
product state depends only on the single-site spin expectation vectors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np
from scipy.linalg import expm

from .chain import ChainSpec
from .spinalg import SpinValue, sx_sy_matrices, sz_matrix

CORRELATION_TOL = 1e-10


@dataclass(frozen=True)
class ProductState:
    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        facs = tuple(np.asarray(f, dtype=complex) for f in self.factors)
        for f in facs:
            if abs(np.linalg.norm(f) - 1) > 1e-12:
                raise ValueError(f"product-state factor has norm {np.linalg.norm(f)}")
        object.__setattr__(self, "factors", facs)

    def __len__(self):
        return len(self.factors)

    def vector(self) -> np.ndarray:
        """The full state vector (only sensible for small chains)."""
        return reduce(np.kron, self.factors)

    def density_matrix(self) -> np.ndarray:
        v = self.vector()
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class SeparableBound:
    E_min: float
    state: ProductState
    method: str  # "closed-form", "ansatz-construction" or "numeric-minimizer"
    converged: bool = True
    sweeps: int = 0
    history: tuple[float, ...] = field(default=(), repr=False)


def spin_expectation(vec, spin) -> np.ndarray:
    """Real vector (<Sx>, <Sy>, <Sz>) for a normalized single-site state."""
    vec = np.asarray(vec, dtype=complex)
    sx, sy = sx_sy_matrices(spin)
    sz = sz_matrix(spin)
    return np.array([np.real(vec.conj() @ op @ vec) for op in (sx, sy, sz)])


def pair_correlation(a, b, spin) -> float:
    """<a|<b| S_A . S_B |a>|b> for a two-site product state."""
    return float(spin_expectation(a, spin) @ spin_expectation(b, spin))


def product_state_energy(spec: ChainSpec, state: ProductState) -> float:
    """<psi|H|psi> for a product state, from mean spin vectors."""
    if len(state) != spec.L:
        raise ValueError(f"state has {len(state)} sites, chain has {spec.L}")
    mean = [spin_expectation(f, spec.spin) for f in state.factors]
    return float(spec.J * sum(mean[i] @ mean[j] for i, j in spec.bonds()))


def e_min_closed_form(spec: ChainSpec) -> float:
    """-J L s^2, valid for periodic rings with even L and J > 0."""
    if not spec.periodic:
        raise ValueError("closed-form separable minimum is only available for periodic chains")
    if spec.J <= 0:
        raise ValueError("closed-form separable minimum requires J > 0")
    if spec.L % 2:
        raise ValueError(
            f"odd ring L={spec.L} is frustrated; use numeric_min_product_energy instead"
        )
    return -spec.J * spec.L * spec.s**2


# -- pair states -------------------------------------------------------------


def ansatz_coefficients(spin) -> list[Fraction]:
    """Coefficients C_0..C_M of the binomial pair-state construction.

    C_0 = 1 and C_{m+1} = (2s - m)/(m + 1) C_m. For integer s the last
    coefficient instead follows C_s = (s + 1)/(4s) C_{s-1}, which
    accounts for the |0> component being counted twice.
    """
    spin = spin if isinstance(spin, SpinValue) else SpinValue.parse(spin, max_twice_s=None)
    two_s = spin.twice_s
    s = Fraction(two_s, 2)
    C = [Fraction(1)]
    if spin.is_integer:
        top = two_s // 2
        for m in range(top - 1):
            C.append(Fraction(two_s - m, m + 1) * C[m])
        if top >= 1:
            C.append((s + 1) / (4 * s) * C[top - 1])
    else:
        for m in range((two_s - 1) // 2):
            C.append(Fraction(two_s - m, m + 1) * C[m])
    return C


def _literal_ansatz_pair(spin: SpinValue):
    d = spin.dim
    top = spin.twice_s // 2 if spin.is_integer else (spin.twice_s - 1) // 2
    C = ansatz_coefficients(spin)
    a = np.zeros(d)
    b = np.zeros(d)
    # |s - m> sits at basis index m, |m - s> at index 2s - m
    for m in range(top + 1):
        c = np.sqrt(float(C[m]))
        sign = (-1) ** m
        a[m] += c
        a[spin.twice_s - m] += c
        b[m] += sign * c
        b[spin.twice_s - m] += sign * c if spin.is_integer else -sign * c
    norm = 2.0 ** (-spin.twice_s / 2)  # 2^-s per factor, 4^-s for the pair
    return a * norm, b * norm


def coherent_pair_state(spin) -> tuple[np.ndarray, np.ndarray]:
    """Spin coherent states with <S> = +s x and -s x.

    Built by rotating |m=s> by +-pi/2 about the y axis.
    """
    spin = spin if isinstance(spin, SpinValue) else SpinValue.parse(spin, max_twice_s=None)
    _, sy = sx_sy_matrices(spin)
    gen = np.real(-1j * sy)  # -i S^y is real in this basis
    top = np.zeros(spin.dim)
    top[0] = 1.0
    plus_x = expm(np.pi / 2 * gen) @ top
    minus_x = expm(-np.pi / 2 * gen) @ top
    return plus_x, minus_x


def ansatz_pair_state(spin) -> tuple[np.ndarray, np.ndarray]:
    """Minimum-energy pair (A, B) from the binomial-coefficient construction.

    The result is checked against the coherent-state pair; if the
    construction ever fails to reach <S_A.S_B> = -s^2 a warning is issued
    and the coherent pair is returned instead.
    """
    spin = spin if isinstance(spin, SpinValue) else SpinValue.parse(spin, max_twice_s=None)
    a, b = _literal_ansatz_pair(spin)
    target = -spin.s**2
    ok = (
        abs(np.linalg.norm(a) - 1) < 1e-12
        and abs(np.linalg.norm(b) - 1) < 1e-12
        and abs(pair_correlation(a, b, spin) - target) < CORRELATION_TOL
    )
    if ok:
        return a, b
    warnings.warn(f"pair-state construction misses -s^2 for s={spin}; using coherent states")
    return coherent_pair_state(spin)


def neel_product_state(spec: ChainSpec) -> ProductState:
    """Alternating A, B, A, ... product state (±x spin coherent states)."""
    if spec.periodic and spec.L % 2:
        raise ValueError(
            f"alternating pattern does not close on an odd ring (L={spec.L}); "
            "use numeric_min_product_energy"
        )
    a, b = ansatz_pair_state(spec.spin)
    return ProductState(tuple(a if i % 2 == 0 else b for i in range(spec.L)))


# -- numeric minimizer ------------------------------------------------------


def _neighbours(spec):
    nb = [[] for _ in range(spec.L)]
    for i, j in spec.bonds():
        nb[i].append(j)
        nb[j].append(i)
    return nb


def _descend(spec, factors, ops, nb, tol, max_sweeps):
    spin = spec.spin
    mean = [spin_expectation(f, spin) for f in factors]

    def energy():
        return float(spec.J * sum(mean[i] @ mean[j] for i, j in spec.bonds()))

    history = [energy()]
    converged = False
    for _ in range(max_sweeps):
        for i in range(spec.L):
            h = spec.J * sum((mean[j] for j in nb[i]), np.zeros(3))
            if not np.any(h):
                continue
            eff = h[0] * ops[0] + h[1] * ops[1] + h[2] * ops[2]
            _, vecs = np.linalg.eigh(eff)
            factors[i] = vecs[:, 0]
            mean[i] = spin_expectation(factors[i], spin)
        history.append(energy())
        if history[-2] - history[-1] < tol:
            converged = True
            break
    return factors, history, converged


def numeric_min_product_energy(
    spec: ChainSpec,
    restarts: int = 16,
    tol: float = 1e-13,
    seed: int = 0,
    max_sweeps: int = 20000,
) -> SeparableBound:
    """Minimize <psi|H|psi> over product states by mean-field coordinate descent.

    Each site update replaces the site state by the ground state of
    ``h_i . S`` with ``h_i = J * sum_neighbours <S_j>``, which is the exact
    single-site optimum, so the energy never increases between sweeps.
    The best of ``restarts`` random starts is returned.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = np.random.default_rng(seed)
    sx, sy = sx_sy_matrices(spec.spin)
    ops = (sx, sy, sz_matrix(spec.spin))
    nb = _neighbours(spec)
    best = None
    for _ in range(restarts):
        factors = []
        for _ in range(spec.L):
            v = rng.normal(size=spec.d) + 1j * rng.normal(size=spec.d)
            factors.append(v / np.linalg.norm(v))
        factors, history, converged = _descend(spec, factors, ops, nb, tol, max_sweeps)
        if best is None or history[-1] < best[1][-1]:
            best = (factors, history, converged)
    factors, history, converged = best
    return SeparableBound(
        E_min=history[-1],
        state=ProductState(tuple(f / np.linalg.norm(f) for f in factors)),
        method="numeric-minimizer",
        converged=converged,
        sweeps=len(history) - 1,
        history=tuple(history),
    )


def separable_bound(spec: ChainSpec, restarts: int = 16, seed: int = 0) -> SeparableBound:
    """Best available E_min: closed form for even AF rings, numeric otherwise."""
    if spec.periodic and spec.L % 2 == 0 and spec.J > 0:
        state = neel_product_state(spec)
        return SeparableBound(e_min_closed_form(spec), state, "closed-form")
    return numeric_min_product_energy(spec, restarts=restarts, seed=seed)
