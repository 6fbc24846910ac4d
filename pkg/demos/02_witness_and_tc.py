"""
The energy witness and the characteristic temperature
======================================================

Every product state of an antiferromagnetic even ring has energy at least
E_min = -J L s^2. Thermal states colder than T_c sit below that line and
are therefore entangled.
"""

import numpy as np

from spinwitness.chain import ChainSpec
from spinwitness.entanglement import witness
from spinwitness.scans import characteristic_temperature, tc_vs_spin
from spinwitness.separable import separable_bound
from spinwitness.spectra import diagonalize
from spinwitness.thermal import observables

# %%
spec = ChainSpec("1/2", 2)
sd = diagonalize(spec)
E_min = separable_bound(spec).E_min
for T in (0.5, 1.0, 2 / np.log(3), 3.0):
    print(f"T={T:.4f}", witness(observables(sd, T).E_mean, E_min, T))

# %%
# The crossing found by bisection against the two closed forms.
for s, exact in (("1/2", 2 / np.log(3)), ("1", 6 / np.log(10))):
    res = characteristic_temperature(ChainSpec(s, 2))
    print(s, res.T_c, exact, res.iterations)

# %%
# T_c grows with spin and is close to linear in s.
table = tc_vs_spin(["1/2", "1", "3/2", "2", "5/2"])
for r in table.rows:
    print(f"s={r['s']:.1f}  T_c={r['T_c']:.6f}")
print(table.diagnostics)
