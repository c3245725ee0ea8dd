"""Per-mode density-matrix dynamics with phenomenological decay.

Writing each momentum pair {|g, q>, |e, q + hbar k>} as a 2x2 density matrix
(rho_gg, rho_ee, rho_ge) and coupling the internal states to a zero
temperature reservoir at rate Gamma gives, with J = Omega/2,

    d rho_gg / dt = +Gamma rho_ee - i J (rho_ge - rho_ge*)
    d rho_ee / dt = -Gamma rho_ee + i J (rho_ge - rho_ge*)
    d rho_ge / dt = (i delta - Gamma/2) rho_ge + i J (rho_ee - rho_gg)

Decay moves population e -> g inside the same pair (no momentum diffusion),
so rho_gg + rho_ee is conserved per mode.  At Gamma = 0 these equations are
exactly the coherent pair dynamics.  The t -> infinity fixed point, per unit
trace, is

    rho_ee   = Omega / D,   D = 4 delta^2/Omega + Gamma^2/Omega + 2 Omega
    rho_ge   = (2 delta - i Gamma) / D

Integration is fixed-step classical Runge-Kutta (reproducible for a linear
constant-coefficient system), validated against a halved step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError, ToleranceError
from .model import AtomSpecies, DriveField, energy_shift_delta, oscillation_period
from .momentum import MomentumGrid, MomentumState, photon_momentum


@dataclass
class BlochComponents:
    """Density-matrix entries of one momentum pair (or arrays of pairs)."""

    rho_gg: float
    rho_ee: float
    rho_ge: complex


@dataclass
class BlochField:
    """Per-base-momentum Bloch components on a grid at a given time.

    Arrays are indexed by the base momentum q of each pair; the excited
    population physically sits at q + hbar k.
    """

    grid: MomentumGrid
    rho_gg: np.ndarray  # real, len == grid.count
    rho_ee: np.ndarray  # real, len == grid.count
    rho_ge: np.ndarray  # complex, len == grid.count
    time: float  # s
    decay_rate: float  # rad/s

    def trace(self) -> float:
        return float(np.sum(self.rho_gg + self.rho_ee) * self.grid.spacing)


def bloch_rhs(c: BlochComponents, delta, coupling, gamma) -> BlochComponents:
    """Time derivatives of the damped pair equations.

    ``coupling`` is J = Omega/2.  Works elementwise on array-valued
    components.
    """
    exchange = 1j * coupling * (np.conj(c.rho_ge) - c.rho_ge)  # real-valued
    pump = gamma * c.rho_ee
    return BlochComponents(
        rho_gg=np.real(pump + exchange),
        rho_ee=np.real(-pump - exchange),
        rho_ge=(1j * delta - 0.5 * gamma) * c.rho_ge + 1j * coupling * (c.rho_ee - c.rho_gg),
    )


def bloch_field_from_state(state: MomentumState, decay_rate: float) -> BlochField:
    """Density-matrix field of a pure momentum state.

    Pair partners that fall off the grid top are taken as zero, matching the
    coherent module's edge convention.
    """
    if decay_rate < 0:
        raise ValueError(f"decay_rate must be >= 0, got {decay_rate}")
    grid = state.grid
    m, n = grid.photon_stride, grid.count
    partner = np.zeros(n, dtype=complex)
    partner[: n - m] = state.phi_e[m:]
    return BlochField(
        grid=grid,
        rho_gg=np.abs(state.phi_g) ** 2,
        rho_ee=np.abs(partner) ** 2,
        rho_ge=state.phi_g * np.conj(partner),
        time=state.time,
        decay_rate=decay_rate,
    )


def _rk4(y: np.ndarray, rhs, h: float, steps: int) -> np.ndarray:
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def integrate_bloch(
    initial: BlochField,
    t: float,
    species: AtomSpecies,
    field: DriveField,
    validate: bool = True,
) -> BlochField:
    """Propagate every mode of ``initial`` forward by time t.

    Fixed-step RK4 with h <= min(T, 1/Gamma)/200.  When ``validate`` is set
    the integration is repeated at half the step; a disagreement above 1e-6
    raises ToleranceError.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    hbar_k = photon_momentum(field)
    if abs(initial.grid.photon_momentum - hbar_k) > 1e-9 * hbar_k:
        raise GridError("grid is not commensurate with the photon momentum")

    gamma = initial.decay_rate
    coupling = 0.5 * field.rabi_frequency
    delta = energy_shift_delta(initial.grid.momenta(), species, field)

    def rhs(y: np.ndarray) -> np.ndarray:
        c = bloch_rhs(
            BlochComponents(rho_gg=y[0].real, rho_ee=y[1].real, rho_ge=y[2]),
            delta,
            coupling,
            gamma,
        )
        return np.stack([c.rho_gg.astype(complex), c.rho_ee.astype(complex), c.rho_ge])

    y0 = np.stack(
        [initial.rho_gg.astype(complex), initial.rho_ee.astype(complex), initial.rho_ge]
    )
    if t == 0:
        y = y0
    else:
        h_max = oscillation_period(field)
        if gamma > 0:
            h_max = min(h_max, 1.0 / gamma)
        h_max /= 200.0
        steps = max(1, math.ceil(t / h_max))
        y = _rk4(y0, rhs, t / steps, steps)
        if validate:
            y_fine = _rk4(y0, rhs, t / (2 * steps), 2 * steps)
            # fields hold probability densities; dp converts to per-unit-trace
            err = float(np.max(np.abs(y - y_fine))) * initial.grid.spacing
            if err > 1e-6:
                raise ToleranceError(
                    f"step-halving disagreement {err:.3e} per unit trace exceeds "
                    "1e-6; refine the integration step"
                )

    return BlochField(
        grid=initial.grid,
        rho_gg=y[0].real,
        rho_ee=y[1].real,
        rho_ge=y[2],
        time=initial.time + t,
        decay_rate=gamma,
    )


def stationary_solution(delta: float, omega: float, gamma: float) -> BlochComponents:
    """Fixed point of the damped pair equations at unit trace."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    denom = 4.0 * delta**2 / omega + gamma**2 / omega + 2.0 * omega
    rho_ee = omega / denom
    return BlochComponents(
        rho_gg=1.0 - rho_ee,
        rho_ee=rho_ee,
        rho_ge=(2.0 * delta - 1j * gamma) / denom,
    )


def integrated_populations(field: BlochField) -> tuple[float, float, complex]:
    """Momentum-integrated rho_gg, rho_ee and rho_ge (trapezoid rule)."""
    dp = field.grid.spacing
    return (
        float(np.trapezoid(field.rho_gg, dx=dp)),
        float(np.trapezoid(field.rho_ee, dx=dp)),
        complex(np.trapezoid(field.rho_ge, dx=dp)),
    )


def momentum_distributions_bloch(field: BlochField) -> tuple[np.ndarray, np.ndarray]:
    """Population densities in spectrum labeling.

    The ground density lives at the base momentum itself; the excited density
    of the pair based at q is shown at q + hbar k.  Modes shifted off the grid
    top are dropped from the display (their population is retained in the
    field itself).
    """
    m = field.grid.photon_stride
    rho_e = np.zeros_like(field.rho_ee)
    rho_e[m:] = field.rho_ee[: field.grid.count - m]
    return field.rho_gg.copy(), rho_e
