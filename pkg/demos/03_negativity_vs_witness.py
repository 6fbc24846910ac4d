"""
Negativity against the witness on two sites
===========================================

For two spin-1/2 sites the negativity, the bond correlation test and the
witness switch off at the same temperature. For spin 1 the negativity
survives a little longer than the witness.
"""

import numpy as np

from spinwitness.chain import ChainSpec
from spinwitness.entanglement import negativity, negativity_from_witness_spin1
from spinwitness.scans import characteristic_temperature, negativity_vanishing_temperature
from spinwitness.spectra import diagonalize
from spinwitness.thermal import observables, thermal_state

# %%
half = diagonalize(ChainSpec("1/2", 2), need_vectors=True)
for T in (0.5, 1.0, 1.5, 1.8):
    N = negativity(thermal_state(half, T)).N
    W = observables(half, T).E_mean + 0.5
    print(f"T={T}: N={N:.6f}  -W/2={-W / 2:.6f}")

# %%
one = diagonalize(ChainSpec("1", 2), need_vectors=True)
T_c = characteristic_temperature(one.spec).T_c
T_N = negativity_vanishing_temperature(one.spec)
print("witness off at", T_c, "negativity off at", T_N)

# %%
# The spin-1 negativity follows from W and the energy variance alone.
for T in np.linspace(0.2, 2.6, 7):
    o = observables(one, T)
    direct = negativity(thermal_state(one, T)).N
    via_w = negativity_from_witness_spin1(o.E_mean + 2.0, o.variance, 1.0)
    print(f"T={T:.2f}: direct {direct:.8f}  from W {via_w:.8f}")
