"""
Command-line front end.

    spinwitness spectrum --spin 1 --sites 2
    spinwitness witness --spin 1/2 --sites 2 --temperature 0.5,1.8204784532536746,3
    spinwitness tc --spin 1 --sites 2 --coupling 2
    spinwitness scan fig2 --spin 1/2 --sites 2..12 --out fig2.csv
    spinwitness scan fig3 --format svg-plot --out fig3.csv
    spinwitness verify

Exit codes: 0 success, 1 verify found a failing check, 2 invalid
configuration, 3 instance too large, 4 I/O error, 5 numerical failure
(no crossing, eigensolver breakdown).

Option precedence is command-line flag, then ``--config`` file
(``key = value`` lines), then environment (``SPINWITNESS_CACHE_DIR``),
then built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .chain import ChainSpec
from .entanglement import (
    bond_correlation,
    negativity,
    negativity_from_witness_spin1,
    squared_bond_correlation,
    su2_criterion_spin_half,
    su2_criterion_spin_one,
    witness,
)
from .errors import EigensolverError, InstanceTooLarge, NoCrossing
from .scans import (
    ScanTable,
    characteristic_temperature,
    delta_map,
    negativity_vanishing_temperature,
    tc_vs_length,
    tc_vs_spin,
)
from .separable import e_min_closed_form, numeric_min_product_energy, separable_bound
from .spectra import get_spectrum, multiplicities
from .spinalg import SpinValue
from .thermal import nn_reduced_density, observables

log = logging.getLogger("spinwitness")

CONVENTION = "periodic ring; for L=2 the single bond is counted twice (H = 2J S1.S2)"

DEFAULTS = {
    "spin": "1/2",
    "sites": "2",
    "coupling": "1",
    "temperature": None,
    "tol": "1e-8",
    "seed": "0",
    "restarts": "16",
    "cache_dir": None,
    "out": None,
    "format": "csv",
    "open_chain": False,
    "spins": "1/2,1,3/2,2,5/2",
    "coupling_grid": "0.1:2:64",
}
FIG2_DEFAULT_SITES = {1: "2..12", 2: "2..8"}
FIG3_DEFAULT_T = "0.1:4:64"


class ConfigError(ValueError):
    def __init__(self, field, message):
        super().__init__(f"--{field.replace('_', '-')}: {message}")
        self.field = field


# -- parsing helpers ------------------------------------------------------------


def parse_spin(text) -> SpinValue:
    try:
        return SpinValue.parse(text)
    except ValueError as exc:
        raise ConfigError("spin", str(exc)) from None


def parse_sites(text, field="sites") -> list[int]:
    """``"8"`` or an inclusive range ``"2..10"``."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = (int(x) for x in text.split(".."))
            values = list(range(a, b + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise ConfigError(field, f"expected an integer or 'a..b', got {text!r}") from None
    if not values or min(values) < 2:
        raise ConfigError(field, f"chains need at least 2 sites, got {text!r}")
    return values


def parse_float(text, field) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ConfigError(field, f"expected a number, got {text!r}") from None
    if not np.isfinite(value):
        raise ConfigError(field, f"expected a finite number, got {text!r}")
    return value


def parse_grid(text, field) -> list[float]:
    """Single value, comma list, or ``"a:b:n"`` (n evenly spaced points, inclusive)."""
    text = str(text).strip()
    if text.count(":") == 2:
        a, b, n = text.split(":")
        try:
            n = int(n)
        except ValueError:
            raise ConfigError(field, f"grid point count must be an integer, got {n!r}") from None
        if n < 1:
            raise ConfigError(field, "grid needs at least one point")
        return [float(x) for x in np.linspace(parse_float(a, field), parse_float(b, field), n)]
    return [parse_float(x, field) for x in text.split(",") if x.strip()]


def positive(values, field):
    if not values or any(v <= 0 for v in values):
        raise ConfigError(field, "values must be positive")
    return values


def read_config(path) -> dict:
    cfg = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("config", f"{path}:{n}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise ConfigError("config", f"{path}:{n}: unknown key {key!r}")
        if key == "open_chain":
            value = value.lower() in ("1", "true", "yes", "on")
        cfg[key] = value
    return cfg


def resolve(args) -> argparse.Namespace:
    """Merge flags > config file > environment > defaults."""
    cfg = read_config(args.config) if args.config else {}
    env = {}
    if os.environ.get("SPINWITNESS_CACHE_DIR"):
        env["cache_dir"] = os.environ["SPINWITNESS_CACHE_DIR"]
    args.spin_given = args.spin is not None or "spin" in cfg
    args.sites_given = args.sites is not None or "sites" in cfg
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) in (None, False):
            setattr(args, key, cfg.get(key, env.get(key, default)))
    return args


# -- output ----------------------------------------------------------------------


def _plain(value):
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def provenance(args, **extra) -> dict:
    info = {
        "artifact": f"spinwitness {__version__}",
        "command": args.command + (f" {args.figure}" if getattr(args, "figure", None) else ""),
        "convention": CONVENTION,
        "tolerance": float(args.tol),
    }
    info.update(extra)
    return info


def render(table: ScanTable, prov: dict, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {
            "provenance": prov,
            "diagnostics": {k: _plain(v) for k, v in table.diagnostics.items()},
            "rows": [{c: _plain(r[c]) for c in table.columns} for r in table.rows],
        }
        doc.update(extra or {})
        return json.dumps(doc, indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    for key, value in prov.items():
        buf.write(f"# {key}: {value}\n")
    for key, value in table.diagnostics.items():
        buf.write(f"# diagnostic {key}: {_plain(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for r in table.rows:
        writer.writerow([_plain(r[c]) for c in table.columns])
    return buf.getvalue()


def emit(args, table: ScanTable, prov: dict, plot=None, extra=None):
    fmt = args.format
    if fmt not in ("csv", "json", "svg-plot"):
        raise ConfigError("format", f"unknown format {fmt!r}")
    if fmt == "svg-plot" and plot is None:
        raise ConfigError("format", "svg-plot is only available for 'scan' commands")
    if fmt == "svg-plot" and not args.out:
        raise ConfigError("out", "svg-plot needs --out (the SVG is written next to it)")
    text = render(table, prov, "json" if fmt == "json" else "csv", extra)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        if fmt == "svg-plot":
            plot(out.with_suffix(".svg"))
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------------


def _spec(args, L=None) -> ChainSpec:
    spin = parse_spin(args.spin)
    sites = parse_sites(args.sites)
    if L is None:
        if len(sites) != 1:
            raise ConfigError("sites", "this command takes a single chain length")
        L = sites[0]
    return ChainSpec(spin, L, parse_float(args.coupling, "coupling"), periodic=not args.open_chain)


def _temperatures(args) -> list[float]:
    if args.temperature is None:
        raise ConfigError("temperature", "required for this command")
    return positive(parse_grid(args.temperature, "temperature"), "temperature")


def _spectrum(args, spec, need_vectors=False):
    sd, hit = get_spectrum(spec, need_vectors=need_vectors, cache_dir=args.cache_dir)
    if args.cache_dir:
        print(f"spectrum cache {'hit' if hit else 'miss'}: {spec.describe()}", file=sys.stderr)
    return sd


def cmd_spectrum(args):
    spec = _spec(args)
    sd = _spectrum(args, spec)
    table = ScanTable("spectrum", ["E", "degeneracy"], ["E"])
    for E, g in multiplicities(sd.eigenvalues):
        table.add(E=E, degeneracy=g)
    table.finish()
    table.diagnostics["ground_energy"] = float(sd.eigenvalues[0])
    table.diagnostics["dimension"] = sd.dim
    emit(args, table, provenance(args, spec=spec.describe()),
         extra={"eigenvalues": [float(x) for x in sd.eigenvalues]})
    return 0


def cmd_thermal(args):
    spec = _spec(args)
    sd = _spectrum(args, spec)
    table = ScanTable("thermal", ["T", "E_mean", "E2_mean", "variance", "logZ_shifted"], ["T"])
    for T in _temperatures(args):
        o = observables(sd, T)
        table.add(T=T, E_mean=o.E_mean, E2_mean=o.E2_mean, variance=o.variance,
                  logZ_shifted=o.logZ_shifted)
    emit(args, table.finish(), provenance(args, spec=spec.describe()))
    return 0


def _emin(args, spec):
    return separable_bound(spec, restarts=int(args.restarts), seed=int(args.seed))


def cmd_witness(args):
    spec = _spec(args)
    sd = _spectrum(args, spec)
    bound = _emin(args, spec)
    table = ScanTable("witness", ["T", "E_mean", "E_min", "W", "entangled"], ["T"])
    for T in _temperatures(args):
        rep = witness(observables(sd, T).E_mean, bound.E_min, T)
        table.add(T=T, E_mean=rep.E_mean, E_min=rep.E_min, W=rep.W,
                  entangled=rep.entangled_by_witness)
    emit(args, table.finish(), provenance(args, spec=spec.describe(), emin_method=bound.method))
    return 0


def cmd_negativity(args):
    spec = _spec(args)
    sd = _spectrum(args, spec, need_vectors=True)
    spin = spec.spin
    table = ScanTable(
        "negativity",
        ["T", "N", "bond_correlation", "bond_correlation_sq", "su2_criterion", "relation_rhs"],
        ["T"],
    )
    for T in _temperatures(args):
        rho = nn_reduced_density(sd, T, 0)
        N = negativity(rho).N
        c1 = bond_correlation(rho, spin)
        c2 = squared_bond_correlation(rho, spin)
        crit, rhs = "", ""
        if spin.twice_s == 1:
            crit = su2_criterion_spin_half(c1)
        elif spin.twice_s == 2:
            crit = su2_criterion_spin_one(c2)
            if spec.L == 2 and spec.periodic and spec.J > 0:
                o = observables(sd, T)
                rhs = negativity_from_witness_spin1(o.E_mean + 2 * spec.J, o.variance, spec.J)
        table.add(T=T, N=N, bond_correlation=c1, bond_correlation_sq=c2, su2_criterion=crit,
                  relation_rhs=rhs)
    emit(args, table.finish(), provenance(args, spec=spec.describe(), bond="sites 1-2"))
    return 0


def cmd_tc(args):
    tol = parse_float(args.tol, "tol")
    table = ScanTable(
        "tc", ["s", "L", "J", "T_c", "E0", "E_min", "iterations", "residual", "T_N"], ["L"]
    )
    for L in parse_sites(args.sites):
        spec = _spec(args, L)
        sd = _spectrum(args, spec)
        bound = _emin(args, spec)
        res = characteristic_temperature(spec, tol, sd=sd, E_min=bound.E_min)
        tn = negativity_vanishing_temperature(spec) if L == 2 and spec.periodic else ""
        table.add(s=spec.s, L=L, J=spec.J, T_c=res.T_c, E0=res.E0, E_min=res.E_min,
                  iterations=res.iterations, residual=res.residual, T_N=tn)
    emit(args, table.finish(), provenance(args, spin=str(parse_spin(args.spin))))
    return 0


def cmd_emin(args):
    table = ScanTable(
        "emin", ["s", "L", "J", "E_min_closed_form", "E_min_numeric", "sweeps", "converged"], ["L"]
    )
    for L in parse_sites(args.sites):
        spec = _spec(args, L)
        try:
            closed = e_min_closed_form(spec)
        except ValueError:
            closed = ""
        bound = numeric_min_product_energy(spec, restarts=int(args.restarts), seed=int(args.seed))
        table.add(s=spec.s, L=L, J=spec.J, E_min_closed_form=closed, E_min_numeric=bound.E_min,
                  sweeps=bound.sweeps, converged=bound.converged)
    emit(args, table.finish(),
         provenance(args, seed=int(args.seed), restarts=int(args.restarts)))
    return 0


def cmd_scan(args):
    from . import plots

    tol = parse_float(args.tol, "tol")
    J = parse_float(args.coupling, "coupling")
    fig = args.figure
    if fig == "fig1":
        spins = [parse_spin(x) for x in args.spins.split(",")]
        table = tc_vs_spin(spins, 2, J, tol)
        prov = provenance(args)
        emit(args, table, prov, lambda p: plots.plot_fig1(table, p))
        return 0
    if fig == "fig2":
        explicit_spin = args.spin_given
        spins = [parse_spin(args.spin)] if explicit_spin else [SpinValue(1), SpinValue(2)]
        tables = []
        for spin in spins:
            sites = args.sites if args.sites_given else FIG2_DEFAULT_SITES.get(spin.twice_s, "2..6")
            tables.append(tc_vs_length(spin, parse_sites(sites), J, tol, cache_dir=args.cache_dir,
                                       restarts=int(args.restarts), seed=int(args.seed)))
        table = _merge(tables)
        prov = provenance(args, boundary="periodic assumed for every finite-L point",
                          odd_L="frustrated; E_min from numeric product-state minimum")
        emit(args, table, prov, lambda p: plots.plot_fig2(tables, p))
        return 0
    if fig == "fig3":
        T_grid = positive(parse_grid(args.temperature or FIG3_DEFAULT_T, "temperature"), "temperature")
        J_grid = positive(parse_grid(args.coupling_grid, "coupling_grid"), "coupling_grid")
        table = delta_map(T_grid, J_grid, "1", 2)
        prov = provenance(args, spec="s=1 L=2 periodic", clamp="W set to 0 for T >= T_c(J)")
        emit(args, table, prov, lambda p: plots.plot_fig3(table, p))
        return 0
    raise ConfigError("figure", f"unknown figure {fig!r}")


def _merge(tables):
    merged = ScanTable(tables[0].name, tables[0].columns, tables[0].keys)
    for t in tables:
        merged.rows.extend(t.rows)
        for k, v in t.diagnostics.items():
            merged.diagnostics[f"s={t.rows[0]['s']:g} {k}" if t.rows else k] = v
    merged.finish()
    ends = {t.rows[0]["s"]: t.diagnostics.get("T_c_at_largest_even_L") for t in tables if t.rows}
    if ends.get(0.5) is not None and ends.get(1.0) is not None:
        # reported only; the large-L spacing is not reachable at desk scale
        merged.diagnostics["delta_T_cc(1/2->1)"] = ends[1.0] - ends[0.5]
        merged.diagnostics["delta_T_cc_reference_0.4s"] = 0.2
    return merged


def cmd_verify(args):
    from .verify import run_all

    passed = failed = 0
    for name, ok, detail in run_all():
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        passed += ok
        failed += not ok
    print(f"{passed} passed, {failed} failed")
    return 1 if failed else 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "thermal": cmd_thermal,
    "witness": cmd_witness,
    "negativity": cmd_negativity,
    "tc": cmd_tc,
    "emin": cmd_emin,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spin", help="spin s, e.g. 1/2, 0.5, 1 (default 1/2)")
    common.add_argument("--sites", help="chain length L or inclusive range a..b")
    common.add_argument("--coupling", help="exchange J (default 1)")
    common.add_argument("--temperature", help="T, comma list, or a:b:n grid")
    common.add_argument("--tol", help="solver tolerance (default 1e-8)")
    common.add_argument("--seed", help="seed for the product-state minimizer (default 0)")
    common.add_argument("--restarts", help="minimizer restarts (default 16)")
    common.add_argument("--cache-dir", dest="cache_dir", help="spectrum cache directory")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json", "svg-plot"])
    common.add_argument("--open-chain", dest="open_chain", action="store_true",
                        help="open boundary (testing only)")
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="spinwitness",
        description="Thermal entanglement in periodic spin-s Heisenberg chains.",
    )
    parser.add_argument("--version", action="version", version=f"spinwitness {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "thermal", "witness", "negativity", "tc", "emin", "verify"):
        sub.add_parser(name, parents=[common])
    scan = sub.add_parser("scan", parents=[common])
    scan.add_argument("figure", choices=["fig1", "fig2", "fig3"])
    scan.add_argument("--spins", help="fig1 spin list (default 1/2,1,3/2,2,5/2)")
    scan.add_argument("--coupling-grid", dest="coupling_grid", help="fig3 J grid (default 0.1:2:64)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        resolve(args)
        if args.format not in ("csv", "json", "svg-plot"):
            raise ConfigError("format", f"unknown format {args.format!r}")
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstanceTooLarge as exc:
        print(f"error: instance too large: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: I/O: {exc}", file=sys.stderr)
        return 4
    except (NoCrossing, EigensolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
