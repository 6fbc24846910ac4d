"""Static SVG renderings of the three scan tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .scans import ScanTable  # noqa: E402

# fixed ids and no timestamp, so repeated runs write identical files
_RC = {"svg.hashsalt": "spinwitness", "svg.fonttype": "path"}
_META = {"Date": None, "Creator": "spinwitness"}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)


def plot_fig1(table: ScanTable, path):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 4))
        s, tc = table.column("s"), table.column("T_c")
        ax.plot(s, tc, "o-", color="k")
        ax.set_xlabel("spin s")
        ax.set_ylabel(r"$T_c$")
        ax.set_title("characteristic temperature vs spin (L = 2)")
        _save(fig, path)


def plot_fig2(tables: list[ScanTable], path):
    markers = {0.5: ("s", "lower squares: s = 1/2"), 1.0: ("^", "upper triangles: s = 1")}
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 4))
        for table in tables:
            rows = [r for r in table.rows if r["status"] == "ok" and r["L"] % 2 == 0]
            if not rows:
                continue
            s = rows[0]["s"]
            marker, label = markers.get(s, ("o", f"s = {s:g}"))
            ax.plot([r["L"] for r in rows], [r["T_c"] for r in rows], marker=marker,
                    linestyle="none", color="k", label=label)
        ax.set_xlabel("number of sites L")
        ax.set_ylabel(r"$T_c$")
        ax.legend(frameon=False)
        _save(fig, path)


def plot_fig3(table: ScanTable, path):
    J = np.unique(table.column("J"))
    T = np.unique(table.column("T"))
    delta = np.full((len(T), len(J)), np.nan)
    ji = {v: k for k, v in enumerate(J)}
    ti = {v: k for k, v in enumerate(T)}
    tc = {}
    for r in table.rows:
        delta[ti[r["T"]], ji[r["J"]]] = r["Delta"]
        tc[r["J"]] = r["T_c"]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.5, 4))
        mesh = ax.pcolormesh(J, T, delta, shading="nearest", cmap="viridis", rasterized=True)
        fig.colorbar(mesh, ax=ax, label=r"$\Delta = N - |W|$")
        ax.contour(J, T, delta, levels=[0.0], colors="w", linewidths=0.8)
        ax.plot(J, [tc[j] for j in J], linestyle=":", color="r", label="W = 0")
        ax.set_ylim(T.min(), T.max())
        ax.set_xlabel("coupling J")
        ax.set_ylabel("temperature T")
        ax.legend(loc="upper left", frameon=False)
        _save(fig, path)
