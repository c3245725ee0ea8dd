"""Command line front end: ``osg <subcommand> --preset fig3 --out data``.

Subcommands and their products (one table per file):

    params       derived constants k, omega_B, upsilon, T, Lambda
    dispersion   dressed branches and bare levels over momentum
    momentum     coherent momentum-space snapshots
    position     position-space snapshots (analytic or numeric)
    deflection   total density rho(x, t) matrix
    decay        momentum-space population snapshots with decay
    populations  momentum-integrated populations and coherence vs time
    steady       stationary solutions over an energy-shift range

Outputs are byte-identical across runs for identical configurations.
``OSG_THREADS`` caps snapshot-level parallelism (0 = one worker per CPU).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .bloch import (
    bloch_field_from_state,
    integrate_bloch,
    integrated_populations,
    momentum_distributions_bloch,
    stationary_solution,
)
from .config import PRESETS, RunConfig, parse_config
from .errors import OsgError
from .model import (
    oscillation_period,
    packet_velocity,
    photon_momentum,
    recoil_shift,
    step_length,
    wavenumber_from_frequency,
)
from .momentum import evolve_state, gaussian_initial, grid_for_packet, momentum_distributions
from .position import deflection_map, position_snapshots
from .spinorbit import dispersion_spectrum
from .tables import SnapshotTable, write_table

SUBCOMMANDS = (
    "params",
    "dispersion",
    "momentum",
    "position",
    "deflection",
    "decay",
    "populations",
    "steady",
)


def _thread_count() -> int:
    raw = os.environ.get("OSG_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise OsgError(f"OSG_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise OsgError(f"OSG_THREADS must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


def _map_snapshots(func, items):
    """Apply func over items, preserving order, with OSG_THREADS workers."""
    workers = min(_thread_count(), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _times(config: RunConfig) -> np.ndarray:
    period = oscillation_period(config.field)
    return np.linspace(0.0, config.t_max_periods * period, config.time_samples)


def _table(config: RunConfig, columns, units, rows, extra_meta=()) -> SnapshotTable:
    return SnapshotTable(
        columns=list(columns),
        units=list(units),
        rows=np.asarray(rows, dtype=float),
        meta=list(config.echo) + list(extra_meta),
    )


def _product_params(config: RunConfig):
    species, field = config.species, config.field
    row = [
        wavenumber_from_frequency(species),
        recoil_shift(species, field),
        packet_velocity(species, field),
        oscillation_period(field),
        step_length(species, field),
    ]
    table = _table(
        config,
        ["wavenumber", "recoil_shift", "packet_velocity", "period", "step_length"],
        ["rad/m", "rad/s", "m/s", "s", "m"],
        [row],
    )
    return [("params", table)]


def _product_dispersion(config: RunConfig):
    species, field = config.species, config.field
    hbar_k = photon_momentum(field)
    omega = field.rabi_frequency
    lo, hi, n = config.dispersion_range
    p = np.linspace(lo * hbar_k, hi * hbar_k, n)
    spec = dispersion_spectrum(p, species, field)
    rows = np.column_stack(
        [
            spec.p,
            spec.p / hbar_k,
            spec.w_g,
            spec.w_e,
            spec.bare_g,
            spec.bare_e,
            spec.w_g / omega,
            spec.w_e / omega,
            spec.bare_g / omega,
            spec.bare_e / omega,
        ]
    )
    table = _table(
        config,
        ["p", "p_hbark", "w_g", "w_e", "bare_g", "bare_e",
         "w_g_omega", "w_e_omega", "bare_g_omega", "bare_e_omega"],
        ["kg*m/s", "hbar*k", "rad/s", "rad/s", "rad/s", "rad/s",
         "Omega", "Omega", "Omega", "Omega"],
        rows,
    )
    return [("dispersion", table)]


def _snapshot_meta(t: float, period: float):
    return [("time_s", repr(float(t))), ("time_periods", repr(float(t / period)))]


def _product_momentum(config: RunConfig):
    species, field = config.species, config.field
    grid = grid_for_packet(
        config.packet, species, field, config.stride, config.width_span, config.recoil_span
    )
    state0 = gaussian_initial(config.packet, grid)
    hbar_k = photon_momentum(field)
    period = oscillation_period(field)
    p = grid.momenta()
    times = _times(config)

    def snapshot(item):
        index, t = item
        dens_g, dens_e = momentum_distributions(evolve_state(state0, t, species, field))
        rows = np.column_stack([p, p / hbar_k, dens_g, dens_e])
        table = _table(
            config,
            ["p", "p_hbark", "density_g", "density_e"],
            ["kg*m/s", "hbar*k", "s/(kg*m)", "s/(kg*m)"],
            rows,
            _snapshot_meta(t, period),
        )
        return (f"momentum_{index:02d}", table)

    return _map_snapshots(snapshot, list(enumerate(times)))


def _product_position(config: RunConfig):
    species, field = config.species, config.field
    period = oscillation_period(field)
    lam = step_length(species, field)
    times = _times(config)
    fields = position_snapshots(
        config.packet,
        species,
        field,
        times,
        config.method,
        config.stride,
        config.width_span,
        config.recoil_span,
    )
    x = fields[0].grid.positions()
    products = []
    for index, fld in enumerate(fields):
        rows = np.column_stack(
            [x, x / lam, np.abs(fld.psi_g) ** 2, np.abs(fld.psi_e) ** 2]
        )
        table = _table(
            config,
            ["x", "x_lambda", "density_g", "density_e"],
            ["m", "Lambda", "1/m", "1/m"],
            rows,
            [("method", config.method)] + _snapshot_meta(fld.time, period),
        )
        products.append((f"position_{index:02d}", table))
    return products


def _product_deflection(config: RunConfig):
    species, field = config.species, config.field
    period = oscillation_period(field)
    lam = step_length(species, field)
    dmap = deflection_map(
        config.packet,
        species,
        field,
        config.t_max_periods * period,
        config.time_samples,
        config.method,
        config.stride,
        config.width_span,
        config.recoil_span,
    )
    n_x = dmap.grid.count
    rows = np.column_stack([dmap.times, dmap.times / period, dmap.density])
    columns = ["t", "t_periods"] + [f"x{i:04d}" for i in range(n_x)]
    units = ["s", "T"] + ["1/m"] * n_x
    meta = [
        ("method", config.method),
        ("x_min_m", repr(dmap.grid.x_min)),
        ("x_spacing_m", repr(dmap.grid.spacing)),
        ("x_count", repr(n_x)),
        ("step_length_m", repr(lam)),
    ]
    return [("deflection", _table(config, columns, units, rows, meta))]


def _decay_setup(config: RunConfig):
    species, field = config.species, config.field
    grid = grid_for_packet(
        config.packet, species, field, config.stride, config.width_span, config.recoil_span
    )
    state0 = gaussian_initial(config.packet, grid)
    return bloch_field_from_state(state0, config.decay_rate)


def _product_decay(config: RunConfig):
    species, field = config.species, config.field
    bloch0 = _decay_setup(config)
    hbar_k = photon_momentum(field)
    period = oscillation_period(field)
    p = bloch0.grid.momenta()
    times = _times(config)

    def snapshot(item):
        index, t = item
        evolved = integrate_bloch(bloch0, t, species, field)
        rho_g, rho_e = momentum_distributions_bloch(evolved)
        rows = np.column_stack([p, p / hbar_k, rho_g, rho_e])
        table = _table(
            config,
            ["p", "p_hbark", "rho_g", "rho_e"],
            ["kg*m/s", "hbar*k", "s/(kg*m)", "s/(kg*m)"],
            rows,
            _snapshot_meta(t, period),
        )
        return (f"decay_{index:02d}", table)

    return _map_snapshots(snapshot, list(enumerate(times)))


def _product_populations(config: RunConfig):
    species, field = config.species, config.field
    bloch = _decay_setup(config)
    period = oscillation_period(field)
    times = _times(config)
    rows = []
    for i, t in enumerate(times):
        # march segment by segment; the per-mode system is autonomous
        dt = t - times[i - 1] if i else t
        bloch = integrate_bloch(bloch, dt, species, field)
        rho_gg, rho_ee, rho_ge = integrated_populations(bloch)
        rows.append([t, t / period, rho_gg, rho_ee, rho_ge.real, rho_ge.imag])
    table = _table(
        config,
        ["t", "t_periods", "rho_gg", "rho_ee", "rho_ge_re", "rho_ge_im"],
        ["s", "T", "1", "1", "1", "1"],
        rows,
    )
    return [("populations", table)]


def _product_steady(config: RunConfig):
    omega = config.field.rabi_frequency
    gamma = config.decay_rate
    lo, hi, n = config.steady_range
    deltas = np.linspace(lo * omega, hi * omega, n)
    rows = []
    for delta in deltas:
        c = stationary_solution(delta, omega, gamma)
        rows.append([delta, delta / omega, c.rho_ee, c.rho_gg, c.rho_ge.real, c.rho_ge.imag])
    table = _table(
        config,
        ["delta", "delta_omega", "rho_ee", "rho_gg", "rho_ge_re", "rho_ge_im"],
        ["rad/s", "Omega", "1", "1", "1", "1"],
        rows,
    )
    return [("steady", table)]


_PRODUCERS = {
    "params": _product_params,
    "dispersion": _product_dispersion,
    "momentum": _product_momentum,
    "position": _product_position,
    "deflection": _product_deflection,
    "decay": _product_decay,
    "populations": _product_populations,
    "steady": _product_steady,
}


def run_subcommand(name: str, config: RunConfig) -> list[Path]:
    """Compute the products of one subcommand and write them atomically.

    All tables are built before anything is written; on any failure every
    file written by this call is removed again.
    """
    if name not in _PRODUCERS:
        raise OsgError(f"unknown subcommand {name!r}; expected one of {SUBCOMMANDS}")
    products = _PRODUCERS[name](config)

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        for stem, table in products:
            path = out_dir / f"{stem}.{config.out_format}"
            tmp = path.with_suffix(path.suffix + ".tmp")
            try:
                tmp.write_bytes(write_table(table, config.out_format))
                os.replace(tmp, path)
            except BaseException:
                tmp.unlink(missing_ok=True)
                raise
            written.append(path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osg",
        description="Traveling-wave optical Stern-Gerlach dynamics of a "
        "two-level clock-transition atom",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="path to a key = value configuration file")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="named parameter preset")
    parser.add_argument("--out", help="output directory (default from config)")
    parser.add_argument("--format", choices=("csv", "json"), help="output table format")
    parser.add_argument(
        "--method", choices=("analytic", "numeric"), help="position-space route"
    )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
        config = parse_config(text, preset=args.preset)
        if args.out:
            config.out_dir = args.out
        if args.format:
            config.out_format = args.format
        if args.method:
            config.method = args.method
        written = run_subcommand(args.subcommand, config)
    except (OsgError, OSError, ValueError) as exc:
        print(f"osg: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
