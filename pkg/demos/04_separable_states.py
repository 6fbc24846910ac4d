"""
Minimum-energy product states
=============================

Opposite spin-coherent states along +x and -x reach the classical bond
energy -J s^2. On odd rings the Neel pattern cannot close, and a numeric
search over product states is needed.
"""

from spinwitness.chain import ChainSpec
from spinwitness.oracles import classical_ring_minimum
from spinwitness.separable import (
    coherent_pair_state,
    ansatz_coefficients,
    numeric_min_product_energy,
    pair_correlation,
)
from spinwitness.spinalg import SpinValue

# %%
# The expansion coefficients of the +x coherent state are binomials.
for t in (1, 2, 3, 4):
    spin = SpinValue(t)
    a, b = coherent_pair_state(spin)
    print(spin, [str(c) for c in ansatz_coefficients(spin)], pair_correlation(a, b, spin))

# %%
# Even rings: the numeric search lands on -J L s^2.
for L in (2, 4, 6):
    print(L, numeric_min_product_energy(ChainSpec("1", L), restarts=4).E_min, -L)

# %%
# Odd rings are frustrated; product states do as well as classical spins.
for L in (3, 5, 7):
    found = numeric_min_product_energy(ChainSpec("1/2", L), restarts=8).E_min
    print(L, found, classical_ring_minimum(L, 0.5))
