"""Position-space wave functions by two independent routes.

Analytic route: the strong-coupling closed forms.  With Sigma ~= Omega the
two components are Gaussians riding the state-dependent tracks
x+-(t) = (p_c/M +- upsilon) t,

  psi_g = N [C_g cos(Om t/2) + i C_e sin(Om t/2) e^{-ik(x - x+)}]
            e^{-Pi^2 (x - x+)^2 / (2 hbar^2)} e^{i(p_c x - zeta_g t)/hbar}
  psi_e = N [C_e cos(Om t/2) + i C_g sin(Om t/2) e^{+ik(x - x-)}]
            e^{-Pi^2 (x - x-)^2 / (2 hbar^2)} e^{i(p_c x - zeta_e t)/hbar}

with N = sqrt(Pi) / (pi^(1/4) sqrt(hbar)) and phase rates
zeta_g,e = hbar Delta/2 + p_c^2/(2M) +- p_c upsilon + hbar^2 k^2/(4M).
These forms drop the quadratic kinetic phase exp(-i t (p - p_c)^2 / (2 M hbar)),
so they carry no dispersion.

Numeric route: the exact momentum amplitudes (which contain every kinetic
phase) are Fourier transformed on a conjugate grid, dx * dp * N = 2 pi hbar,
which makes the discrete transform exactly unitary.  The two routes are never
mixed; their overlap quantifies the dropped-phase approximation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .errors import CouplingRegimeWarning, GridError
from .model import (
    AtomSpecies,
    DriveField,
    PacketParams,
    energy_shift_delta,
    packet_velocity,
)
from .momentum import MomentumGrid, MomentumState, evolve_state, gaussian_initial, grid_for_packet


@dataclass
class PositionGrid:
    """Uniform position grid."""

    x_min: float  # m
    spacing: float  # m
    count: int

    def __post_init__(self):
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.count < 2:
            raise ValueError(f"count must be >= 2, got {self.count}")

    def positions(self) -> np.ndarray:
        return self.x_min + self.spacing * np.arange(self.count)

    @property
    def half_span(self) -> float:
        return 0.5 * self.spacing * (self.count - 1)


@dataclass
class PositionField:
    """Two-component position amplitudes on a grid at a given time."""

    grid: PositionGrid
    psi_g: np.ndarray  # complex, len == grid.count
    psi_e: np.ndarray  # complex, len == grid.count
    time: float  # s

    def norm(self) -> float:
        dens = np.abs(self.psi_g) ** 2 + np.abs(self.psi_e) ** 2
        return float(np.sum(dens) * self.grid.spacing)

    def total_density(self) -> np.ndarray:
        return np.abs(self.psi_g) ** 2 + np.abs(self.psi_e) ** 2


def conjugate_grid(grid: MomentumGrid, center: float = 0.0) -> PositionGrid:
    """Position grid conjugate to a momentum grid: dx * dp * N = 2 pi hbar."""
    spacing = 2.0 * np.pi * HBAR / (grid.count * grid.spacing)
    return PositionGrid(
        x_min=center - (grid.count // 2) * spacing,
        spacing=spacing,
        count=grid.count,
    )


def _warn_if_weak_coupling(
    params: PacketParams, species: AtomSpecies, field: DriveField
) -> None:
    # delta(p) is linear in p, so its extrema over the packet sit at the ends
    ends = params.center_momentum + 3.0 * params.momentum_width * np.array([-1.0, 1.0])
    max_delta = float(np.max(np.abs(energy_shift_delta(ends, species, field))))
    if field.rabi_frequency < 50.0 * max_delta:
        warnings.warn(
            "strong-coupling condition Omega >= 50 max|delta| not met over the "
            f"packet (Omega = {field.rabi_frequency:.3e}, max|delta| = {max_delta:.3e}); "
            "the analytic amplitudes are approximate here",
            CouplingRegimeWarning,
            stacklevel=3,
        )


def analytic_amplitudes(
    x, t: float, params: PacketParams, species: AtomSpecies, field: DriveField
):
    """Strong-coupling closed-form amplitudes (psi_g, psi_e) at position(s) x."""
    _warn_if_weak_coupling(params, species, field)
    k = field.wavenumber
    omega = field.rabi_frequency
    pc, width = params.center_momentum, params.momentum_width
    mass = species.mass
    ups = packet_velocity(species, field)

    x = np.asarray(x, dtype=float)
    x_plus = (pc / mass + ups) * t
    x_minus = (pc / mass - ups) * t
    zeta_common = HBAR * field.detuning / 2.0 + pc**2 / (2.0 * mass) + HBAR**2 * k**2 / (4.0 * mass)
    zeta_g = zeta_common + pc * ups
    zeta_e = zeta_common - pc * ups

    pref = np.sqrt(width) / (np.pi**0.25 * np.sqrt(HBAR))
    cos_t = np.cos(0.5 * omega * t)
    sin_t = np.sin(0.5 * omega * t)

    psi_g = (
        pref
        * (params.amp_ground * cos_t
           + 1j * params.amp_excited * sin_t * np.exp(-1j * k * (x - x_plus)))
        * np.exp(-(width**2) * (x - x_plus) ** 2 / (2.0 * HBAR**2))
        * np.exp(1j * (pc * x - zeta_g * t) / HBAR)
    )
    psi_e = (
        pref
        * (params.amp_excited * cos_t
           + 1j * params.amp_ground * sin_t * np.exp(1j * k * (x - x_minus)))
        * np.exp(-(width**2) * (x - x_minus) ** 2 / (2.0 * HBAR**2))
        * np.exp(1j * (pc * x - zeta_e * t) / HBAR)
    )
    return psi_g, psi_e


def analytic_field(
    grid: PositionGrid,
    t: float,
    params: PacketParams,
    species: AtomSpecies,
    field: DriveField,
) -> PositionField:
    """Evaluate the analytic amplitudes on a grid as a PositionField."""
    psi_g, psi_e = analytic_amplitudes(grid.positions(), t, params, species, field)
    return PositionField(grid=grid, psi_g=psi_g, psi_e=psi_e, time=t)


def numeric_position_reconstruct(
    state: MomentumState, grid: PositionGrid | None = None
) -> PositionField:
    """Exact discrete Fourier reconstruction psi_n(x) = sum_p phi_n(p) <x|p> dp.

    The kernel is e^{i p x / hbar} / sqrt(2 pi hbar).  The position grid must
    be conjugate to the momentum grid (dx * dp * N = 2 pi hbar, same count);
    by default it is derived from it, centered at x = 0.  The transform is
    exactly unitary (Parseval), so the momentum norm is preserved.
    """
    mgrid = state.grid
    if grid is None:
        grid = conjugate_grid(mgrid)
    else:
        if grid.count != mgrid.count:
            raise GridError(
                f"position grid count {grid.count} != momentum grid count {mgrid.count}"
            )
        product = grid.spacing * mgrid.spacing * mgrid.count
        target = 2.0 * np.pi * HBAR
        if abs(product - target) > 1e-9 * target:
            raise GridError(
                "position grid is not conjugate to the momentum grid: "
                f"dx*dp*N = {product!r}, 2 pi hbar = {target!r}"
            )

    n = mgrid.count
    x = grid.positions()
    # e^{i p_i x_j / hbar} factors into index-independent carriers and the
    # inverse-DFT kernel e^{2 pi i ij / N}
    inner = np.exp(1j * np.arange(n) * mgrid.spacing * grid.x_min / HBAR)
    carrier = np.exp(1j * mgrid.p_min * x / HBAR)
    scale = mgrid.spacing * n / np.sqrt(2.0 * np.pi * HBAR)

    def transform(phi: np.ndarray) -> np.ndarray:
        return scale * carrier * np.fft.ifft(phi * inner)

    return PositionField(
        grid=grid,
        psi_g=transform(state.phi_g),
        psi_e=transform(state.phi_e),
        time=state.time,
    )


def overlap_fidelity(a: PositionField, b: PositionField) -> float:
    """|<a|b>| of two normalized two-component fields on the same grid."""
    if a.grid.count != b.grid.count or abs(a.grid.spacing - b.grid.spacing) > 0:
        raise GridError("fields live on different grids")
    overlap = np.sum(np.conj(a.psi_g) * b.psi_g + np.conj(a.psi_e) * b.psi_e) * a.grid.spacing
    return float(np.abs(overlap))


def centroid_trajectories(fields) -> tuple[np.ndarray, np.ndarray]:
    """Per-snapshot centroids <x>_g and <x>_e.

    A component holding less than 1e-12 of probability has no meaningful
    centroid and is reported as NaN.
    """
    cg, ce = [], []
    for f in fields:
        x = f.grid.positions()
        for out, psi in ((cg, f.psi_g), (ce, f.psi_e)):
            dens = np.abs(psi) ** 2
            weight = float(np.sum(dens) * f.grid.spacing)
            if weight < 1e-12:
                out.append(np.nan)
            else:
                out.append(float(np.sum(x * dens) * f.grid.spacing / weight))
    return np.asarray(cg), np.asarray(ce)


def gaussian_fit_center(x: np.ndarray, density: np.ndarray) -> float:
    """Center of a Gaussian envelope via least squares on the log density.

    Only points above 1e-6 of the peak enter the fit, which keeps the
    wavevector-k cross-term modulation and far tails out.
    """
    peak = float(np.max(density))
    if peak <= 0:
        raise ValueError("density is identically zero")
    mask = density > 1e-6 * peak
    coeffs = np.polyfit(x[mask], np.log(density[mask]), 2)
    if coeffs[0] >= 0:
        raise ValueError("log-density fit is not concave; no Gaussian envelope")
    return float(-coeffs[1] / (2.0 * coeffs[0]))


@dataclass
class DeflectionMap:
    """Total density rho(x, t) on a space-time grid."""

    times: np.ndarray  # s, shape (nt,)
    grid: PositionGrid
    density: np.ndarray  # 1/m, shape (nt, nx)


def position_snapshots(
    params: PacketParams,
    species: AtomSpecies,
    field: DriveField,
    times,
    method: str = "analytic",
    stride: int = 8,
    width_span: float = 8.0,
    recoil_span: float = 4.0,
) -> list[PositionField]:
    """Position fields at the requested times by either route.

    Both methods share the conjugate position grid so their outputs are
    directly comparable.
    """
    mgrid = grid_for_packet(params, species, field, stride, width_span, recoil_span)
    xgrid = conjugate_grid(mgrid)
    if method == "numeric":
        state0 = gaussian_initial(params, mgrid)
        return [
            numeric_position_reconstruct(evolve_state(state0, t, species, field), xgrid)
            for t in times
        ]
    if method == "analytic":
        return [analytic_field(xgrid, t, params, species, field) for t in times]
    raise ValueError(f"unknown method {method!r}; expected 'analytic' or 'numeric'")


def deflection_map(
    params: PacketParams,
    species: AtomSpecies,
    field: DriveField,
    t_max: float,
    nt: int,
    method: str = "analytic",
    stride: int = 8,
    width_span: float = 8.0,
    recoil_span: float = 4.0,
) -> DeflectionMap:
    """Total density over nt snapshots from t = 0 to t_max."""
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if nt < 2:
        raise ValueError(f"nt must be >= 2, got {nt}")
    times = np.linspace(0.0, t_max, nt)
    fields = position_snapshots(
        params, species, field, times, method, stride, width_span, recoil_span
    )
    extent = (
        abs(params.center_momentum) / species.mass + packet_velocity(species, field)
    ) * t_max + 6.0 * HBAR / params.momentum_width
    grid = fields[0].grid
    if grid.half_span < extent:
        raise GridError(
            f"position grid half-span {grid.half_span:.3e} m does not cover the "
            f"packet excursion {extent:.3e} m"
        )
    density = np.stack([f.total_density() for f in fields])
    return DeflectionMap(times=times, grid=grid, density=density)
