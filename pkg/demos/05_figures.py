"""
Figures: T_c against spin and length, and the Delta map
=======================================================

Writes three SVG files into the working directory.
"""

from spinwitness import plots
from spinwitness.scans import delta_map, tc_vs_length, tc_vs_spin

import numpy as np

# %%
fig1 = tc_vs_spin(["1/2", "1", "3/2", "2", "5/2"])
plots.plot_fig1(fig1, "fig1.svg")

# %%
# Even rings approach a plateau quickly. Odd rings sit higher because
# their separable bound is less negative.
half = tc_vs_length("1/2", range(2, 13))
one = tc_vs_length("1", range(2, 9))
for t in (half, one):
    print([(r["L"], round(r["T_c"], 4)) for r in t.rows])
plots.plot_fig2([half, one], "fig2.svg")

# %%
# Delta = N - |W| for spin 1 on two sites. Above T_c the witness is
# switched off, so Delta equals the negativity until that vanishes too.
fig3 = delta_map(np.linspace(0.1, 4, 64), np.linspace(0.1, 2, 64))
print(fig3.diagnostics)
plots.plot_fig3(fig3, "fig3.svg")
