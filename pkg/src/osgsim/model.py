"""Parameter types and the scalar frequency formulas of the atom-light model.

A two-level atom (clock transition, ground |g> and excited |e>) is driven by
a single traveling wave with Rabi frequency Omega, detuning Delta and
wavenumber k.  Absorbing a photon takes |g, p> to |e, p + hbar*k>, so the
dynamics decomposes into independent momentum pairs.  The quantities that
control each pair are

    omega_p   = p^2 / (2 M hbar)          kinetic frequency
    omega_D   = p k / M                   Doppler shift
    omega_B   = hbar k^2 / (2 M)          photon-recoil (back-action) shift
    delta(p)  = Delta + omega_D + omega_B effective energy shift
    Sigma(p)  = sqrt(delta^2 + Omega^2)   effective Rabi frequency

All quantities are SI and every frequency is angular (rad/s).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import ATOMIC_MASS_UNIT, HBAR, SPEED_OF_LIGHT


@dataclass
class AtomSpecies:
    """An atom, characterised by its mass and clock-transition frequency.

    ``transition_frequency`` is an ordinary frequency in Hz (not angular).
    """

    name: str
    mass: float  # kg
    transition_frequency: float  # Hz

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not self.transition_frequency > 0:
            raise ValueError(
                f"transition_frequency must be positive, got {self.transition_frequency}"
            )


#: Strontium-87 with the clock transition 1S0 - 3P0.
SR87 = AtomSpecies(
    name="87Sr",
    mass=86.9088775 * ATOMIC_MASS_UNIT,
    transition_frequency=429228004229873.65,
)


@dataclass
class DriveField:
    """Traveling-wave drive: Rabi frequency, detuning and wavenumber."""

    rabi_frequency: float  # rad/s
    detuning: float  # rad/s
    wavenumber: float  # rad/m

    def __post_init__(self):
        if not self.rabi_frequency > 0:
            raise ValueError(f"rabi_frequency must be positive, got {self.rabi_frequency}")
        if not self.wavenumber > 0:
            raise ValueError(f"wavenumber must be positive, got {self.wavenumber}")

    @classmethod
    def resonant(cls, species: AtomSpecies, rabi_frequency: float, detuning: float = 0.0):
        """Drive whose wavenumber is set by the clock transition itself.

        The detuning enters only through delta(p); its relative effect on the
        wavenumber (|Delta|/nu0 <~ 1e-9) is ignored.
        """
        return cls(rabi_frequency, detuning, wavenumber_from_frequency(species))


@dataclass
class PacketParams:
    """Gaussian wave packet and internal-state amplitudes.

    The momentum-space amplitude is
    phi(p, 0) = pi^(-1/4) Pi^(-1/2) exp(-(p - p_c)^2 / (2 Pi^2)),
    shared by both internal components with weights C_g (ground) and
    C_e (excited).
    """

    center_momentum: float  # kg m/s
    momentum_width: float  # kg m/s
    amp_ground: complex
    amp_excited: complex

    def __post_init__(self):
        if not self.momentum_width > 0:
            raise ValueError(f"momentum_width must be positive, got {self.momentum_width}")
        total = abs(self.amp_ground) ** 2 + abs(self.amp_excited) ** 2
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"|C_g|^2 + |C_e|^2 must equal 1, got {total!r}")


def wavenumber_from_frequency(species: AtomSpecies) -> float:
    """Wavenumber (rad/m) of light resonant with the clock transition."""
    return 2.0 * np.pi * species.transition_frequency / SPEED_OF_LIGHT


def photon_momentum(field: DriveField) -> float:
    """hbar*k, the momentum exchanged per photon (kg m/s)."""
    return HBAR * field.wavenumber


def kinetic_frequency(p, species: AtomSpecies):
    """omega_p = p^2 / (2 M hbar) (rad/s).  Accepts scalars or arrays."""
    return p * p / (2.0 * species.mass * HBAR)


def recoil_shift(species: AtomSpecies, field: DriveField) -> float:
    """Back-action (recoil) shift omega_B = hbar k^2 / (2 M) (rad/s)."""
    return HBAR * field.wavenumber**2 / (2.0 * species.mass)


def doppler_shift(p, species: AtomSpecies, field: DriveField):
    """Doppler shift omega_D = p k / M (rad/s).

    Satisfies omega_{p + hbar k} - omega_p = omega_D + omega_B identically.
    """
    return p * field.wavenumber / species.mass


def energy_shift_delta(p, species: AtomSpecies, field: DriveField):
    """delta(p) = Delta + omega_D(p) + omega_B (rad/s)."""
    return field.detuning + doppler_shift(p, species, field) + recoil_shift(species, field)


def effective_rabi(p, species: AtomSpecies, field: DriveField):
    """Sigma(p) = sqrt(delta(p)^2 + Omega^2) (rad/s); always >= Omega."""
    delta = energy_shift_delta(p, species, field)
    return np.sqrt(delta * delta + field.rabi_frequency**2)


def oscillation_period(field: DriveField) -> float:
    """Rabi period T = 2 pi / Omega of the strong-coupling oscillation (s)."""
    return 2.0 * np.pi / field.rabi_frequency


def packet_velocity(species: AtomSpecies, field: DriveField) -> float:
    """Drift velocity upsilon = hbar k / (2 M) of each split component (m/s)."""
    return HBAR * field.wavenumber / (2.0 * species.mass)


def step_length(species: AtomSpecies, field: DriveField) -> float:
    """Displacement Lambda = pi hbar k / (M Omega) accumulated per period (m).

    Computed as upsilon * T so the identity Lambda = packet_velocity *
    oscillation_period holds exactly in floating point.
    """
    return packet_velocity(species, field) * oscillation_period(field)


def interaction_threshold_density(interaction_range: float) -> float:
    """Density 1/R^3 (1/m^3) below which atom-atom interactions of reach R
    leave the single-atom dynamics untouched."""
    if not interaction_range > 0:
        raise ValueError(f"interaction range must be positive, got {interaction_range}")
    return 1.0 / interaction_range**3
