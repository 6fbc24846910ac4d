"""Fast built-in oracle checks, run by ``spinwitness verify``."""

from __future__ import annotations

import numpy as np

from . import oracles
from .chain import ChainSpec
from .entanglement import bond_correlation, negativity_from_witness_spin1
from .scans import characteristic_temperature, negativity_vanishing_temperature, pair_negativity
from .separable import coherent_pair_state, ansatz_pair_state, numeric_min_product_energy, pair_correlation
from .spectra import diagonalize, ground_energy
from .spinalg import SpinValue, spin_operators
from .thermal import observables, thermal_state

SPINS = [SpinValue(t) for t in range(1, 6)]


def _su2_algebra():
    worst = 0.0
    for spin in SPINS:
        sx, sy, sz = spin_operators(spin)
        worst = max(
            worst,
            np.abs(sx @ sy - sy @ sx - 1j * sz).max(),
            np.abs(sy @ sz - sz @ sy - 1j * sx).max(),
            np.abs(sz @ sx - sx @ sz - 1j * sy).max(),
            np.abs(sx @ sx + sy @ sy + sz @ sz - spin.casimir * np.eye(spin.dim)).max(),
        )
    return worst < 1e-12, f"max residual {worst:.1e}"


def _tc_anchors():
    a = characteristic_temperature(ChainSpec("1/2", 2, 1.0)).T_c
    b = characteristic_temperature(ChainSpec("1", 2, 1.0)).T_c
    da, db = abs(a - 2 / np.log(3)), abs(b - 6 / np.log(10))
    return max(da, db) < 1e-6, f"T_c(1/2)={a:.7f} T_c(1)={b:.7f}"


def _negativity_threshold():
    tn = negativity_vanishing_temperature(ChainSpec("1", 2, 1.0))
    ref = oracles.spin1_negativity_threshold()
    tc = 6 / np.log(10)
    return abs(tn - ref) < 5e-3 and tn > tc, f"T_N={tn:.5f} oracle={ref:.5f} T_c={tc:.5f}"


def _pair_states():
    worst = 0.0
    for spin in SPINS:
        for a, b in (ansatz_pair_state(spin), coherent_pair_state(spin)):
            worst = max(worst, abs(pair_correlation(a, b, spin) + spin.s**2))
    return worst < 1e-10, f"max |corr + s^2| {worst:.1e}"


def _numeric_emin():
    worst = 0.0
    for L in (2, 4, 6):
        for t in (1, 2, 3):
            spec = ChainSpec(SpinValue(t), L, 1.0)
            e = numeric_min_product_energy(spec, restarts=4).E_min
            worst = max(worst, abs(e + L * spec.s**2))
    return worst < 1e-6, f"max deviation from -JLs^2 {worst:.1e}"


def _gap_law():
    worst = 0.0
    for spin in SPINS:
        e0 = ground_energy(diagonalize(ChainSpec(spin, 2, 1.0)))
        worst = max(worst, abs(abs(e0 + 2 * spin.s**2) - 2 * spin.s))
    return worst < 1e-10, f"max |G - 2Js| {worst:.1e}"


def _negativity_relation():
    sd = diagonalize(ChainSpec("1", 2, 1.0), need_vectors=True)
    tn = oracles.spin1_negativity_threshold()
    worst = 0.0
    for T in np.linspace(0.05, tn * 0.99, 20):
        obs = observables(sd, T)
        rhs = negativity_from_witness_spin1(obs.E_mean + 2.0, obs.variance, 1.0)
        worst = max(worst, abs(rhs - pair_negativity(sd, T)))
    return worst < 1e-8, f"max |rhs - N| {worst:.1e}"


def _spin_half_equivalence():
    sd = diagonalize(ChainSpec("1/2", 2, 1.0), need_vectors=True)
    bad = 0
    for T in np.linspace(0.1, 4.0, 40):
        rho = thermal_state(sd, T)
        N = pair_negativity(sd, T)
        W = observables(sd, T).E_mean + 0.5
        crit = bond_correlation(rho, "1/2") < -0.25
        bad += not ((N > 0) == crit == (W < 0))
    return bad == 0, f"{bad} disagreements on 40 temperatures"


CHECKS = {
    "su2-algebra": _su2_algebra,
    "tc-closed-form-anchors": _tc_anchors,
    "negativity-threshold-spin1": _negativity_threshold,
    "pair-states-reach-minus-s2": _pair_states,
    "numeric-emin-even-rings": _numeric_emin,
    "gap-law": _gap_law,
    "negativity-witness-relation-spin1": _negativity_relation,
    "spin-half-criteria-agree": _spin_half_equivalence,
}


def run_all():
    """Yield ``(name, passed, detail)`` for every check."""
    for name, check in CHECKS.items():
        try:
            ok, detail = check()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield name, bool(ok), detail
