"""Closed-form coherent evolution of the two-component packet in momentum space.

For each base momentum q the pair {|g, q>, |e, q + hbar k>} is closed under
the drive.  With delta = delta(q) and Sigma = Sigma(q) the amplitudes evolve
as a superposition of the two dressed modes,

    phi_g(q, t)          = (A+ e^{+i Sigma t/2} + A- e^{-i Sigma t/2}) e^{-i w t}
    phi_e(q + hbar k, t) = (B+ e^{+i Sigma t/2} + B- e^{-i Sigma t/2}) e^{-i w t}

    w  = (Delta + omega_q + omega_{q + hbar k}) / 2
    A+- = [(Sigma +- delta) phi_g(q,0) +- Omega phi_e(q + hbar k, 0)] / (2 Sigma)
    B+- = [(Sigma -+ delta) phi_e(q + hbar k, 0) +- Omega phi_g(q, 0)] / (2 Sigma)

States are stored in spectrum labeling: ``phi_e[i]`` is the excited amplitude
at grid momentum p_i, i.e. the partner of ``phi_g[i - stride]``.  The grid is
commensurate with the photon momentum (stride * spacing = hbar k) so the pair
shift is an exact index shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .errors import GridError, TruncationError
from .model import (
    AtomSpecies,
    DriveField,
    PacketParams,
    effective_rabi,
    energy_shift_delta,
    kinetic_frequency,
    photon_momentum,
)


@dataclass
class MomentumGrid:
    """Uniform momentum grid commensurate with the photon momentum.

    ``photon_stride`` grid steps equal one photon momentum, so
    ``photon_stride * spacing`` is the grid's own value of hbar*k.
    """

    p_min: float  # kg m/s
    spacing: float  # kg m/s
    count: int
    photon_stride: int

    def __post_init__(self):
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.count < 2:
            raise ValueError(f"count must be >= 2, got {self.count}")
        if self.photon_stride < 1:
            raise ValueError(f"photon_stride must be >= 1, got {self.photon_stride}")

    @property
    def photon_momentum(self) -> float:
        return self.photon_stride * self.spacing

    def momenta(self) -> np.ndarray:
        return self.p_min + self.spacing * np.arange(self.count)


def grid_for_packet(
    params: PacketParams,
    species: AtomSpecies,
    field: DriveField,
    stride: int = 8,
    width_span: float = 8.0,
    recoil_span: float = 4.0,
) -> MomentumGrid:
    """Grid centered on the packet, spanning max(width_span*Pi, recoil_span*hbar k)
    on each side, with spacing hbar k / stride."""
    if stride < 1:
        raise GridError(f"stride must be >= 1, got {stride}")
    hbar_k = photon_momentum(field)
    spacing = hbar_k / stride
    half = max(width_span * params.momentum_width, recoil_span * hbar_k)
    n_half = math.ceil(half / spacing)
    return MomentumGrid(
        p_min=params.center_momentum - n_half * spacing,
        spacing=spacing,
        count=2 * n_half + 1,
        photon_stride=stride,
    )


@dataclass
class MomentumState:
    """Two-component momentum amplitudes on a grid at a given time.

    Both arrays are indexed by grid momentum (spectrum labeling).
    """

    grid: MomentumGrid
    phi_g: np.ndarray  # complex, len == grid.count
    phi_e: np.ndarray  # complex, len == grid.count
    time: float  # s

    def norm(self) -> float:
        """Total probability sum(|phi_g|^2 + |phi_e|^2) * dp."""
        dens = np.abs(self.phi_g) ** 2 + np.abs(self.phi_e) ** 2
        return float(np.sum(dens) * self.grid.spacing)


@dataclass
class PairSolution:
    """Dressed-mode decomposition of one momentum pair (vectorizes over pairs)."""

    a_plus: complex
    a_minus: complex
    b_plus: complex
    b_minus: complex
    sigma: float  # rad/s
    common_phase_rate: float  # rad/s


def gaussian_initial(params: PacketParams, grid: MomentumGrid) -> MomentumState:
    """Initial state C_n * phi(p, 0) on the grid, renormalized discretely.

    Raises TruncationError if the grid edges are closer than 6 Pi to the
    packet center or if the trapezoid norm misses more than 1e-6.
    """
    p = grid.momenta()
    pc, width = params.center_momentum, params.momentum_width
    if pc - p[0] < 6.0 * width or p[-1] - pc < 6.0 * width:
        raise TruncationError(
            "grid too narrow: packet center must sit at least 6 momentum widths "
            "from both grid edges"
        )
    envelope = np.pi ** (-0.25) / np.sqrt(width) * np.exp(-((p - pc) ** 2) / (2.0 * width**2))
    norm = float(np.trapezoid(envelope**2, dx=grid.spacing))
    if abs(norm - 1.0) > 1e-6:
        raise TruncationError(
            f"grid truncates {abs(norm - 1.0):.3e} of the packet norm (limit 1e-6)"
        )
    envelope /= np.sqrt(norm)
    return MomentumState(
        grid=grid,
        phi_g=np.asarray(params.amp_ground * envelope, dtype=complex),
        phi_e=np.asarray(params.amp_excited * envelope, dtype=complex),
        time=0.0,
    )


def solve_pair(phi_g0, phi_e0, p, species: AtomSpecies, field: DriveField) -> PairSolution:
    """Dressed-mode coefficients for the pair based at momentum p.

    ``phi_g0`` is the ground amplitude at p and ``phi_e0`` the excited
    amplitude at p + hbar k, both at the reference time.  Vectorizes when the
    inputs are arrays.
    """
    omega = field.rabi_frequency
    delta = energy_shift_delta(p, species, field)
    sigma = effective_rabi(p, species, field)
    hbar_k = photon_momentum(field)
    w_low = kinetic_frequency(p, species)
    w_high = kinetic_frequency(p + hbar_k, species)
    inv = 1.0 / (2.0 * sigma)
    return PairSolution(
        a_plus=((sigma + delta) * phi_g0 + omega * phi_e0) * inv,
        a_minus=((sigma - delta) * phi_g0 - omega * phi_e0) * inv,
        b_plus=((sigma - delta) * phi_e0 + omega * phi_g0) * inv,
        b_minus=((sigma + delta) * phi_e0 - omega * phi_g0) * inv,
        sigma=sigma,
        common_phase_rate=0.5 * (field.detuning + w_low + w_high),
    )


def evolve_pair(sol: PairSolution, t: float):
    """Amplitudes (phi_g(p, t), phi_e(p + hbar k, t)) of an evolved pair."""
    osc = np.exp(0.5j * sol.sigma * t)
    common = np.exp(-1j * sol.common_phase_rate * t)
    phi_g = (sol.a_plus * osc + sol.a_minus * np.conj(osc)) * common
    phi_e = (sol.b_plus * osc + sol.b_minus * np.conj(osc)) * common
    return phi_g, phi_e


def _check_commensurate(grid: MomentumGrid, field: DriveField) -> None:
    hbar_k = photon_momentum(field)
    if abs(grid.photon_momentum - hbar_k) > 1e-9 * hbar_k:
        raise GridError(
            "grid is not commensurate with the photon momentum: "
            f"stride*spacing = {grid.photon_momentum!r}, hbar*k = {hbar_k!r}"
        )


def evolve_state(
    initial: MomentumState, t: float, species: AtomSpecies, field: DriveField
) -> MomentumState:
    """Evolve every momentum pair of ``initial`` forward by time t.

    Pairs whose partner falls outside the grid are evolved against a zero
    partner and any amplitude mapped off the grid is dropped; if those edge
    modes hold more than 1e-6 of the norm a TruncationError is raised.
    """
    _check_commensurate(initial.grid, field)
    grid = initial.grid
    m, n = grid.photon_stride, grid.count
    if m >= n:
        raise GridError(f"grid count {n} must exceed photon_stride {m}")
    g, e = initial.phi_g, initial.phi_e
    p = grid.momenta()

    edge_norm = (np.sum(np.abs(g[n - m :]) ** 2) + np.sum(np.abs(e[:m]) ** 2)) * grid.spacing
    if edge_norm > 1e-6:
        raise TruncationError(
            f"{edge_norm:.3e} of the norm sits in edge modes whose pair partner "
            "is off the grid (limit 1e-6)"
        )

    new_g = np.empty(n, dtype=complex)
    new_e = np.empty(n, dtype=complex)
    sol = solve_pair(g[: n - m], e[m:], p[: n - m], species, field)
    new_g[: n - m], new_e[m:] = evolve_pair(sol, t)

    # edge modes: partner amplitude off-grid is zero, outgoing partner dropped
    zeros = np.zeros(m, dtype=complex)
    top = solve_pair(g[n - m :], zeros, p[n - m :], species, field)
    new_g[n - m :], _ = evolve_pair(top, t)
    bottom = solve_pair(zeros, e[:m], p[:m] - grid.photon_momentum, species, field)
    _, new_e[:m] = evolve_pair(bottom, t)

    return MomentumState(grid=grid, phi_g=new_g, phi_e=new_e, time=initial.time + t)


def momentum_distributions(state: MomentumState) -> tuple[np.ndarray, np.ndarray]:
    """Probability densities (|phi_g(p)|^2, |phi_e(p)|^2) on the grid."""
    return np.abs(state.phi_g) ** 2, np.abs(state.phi_e) ** 2
