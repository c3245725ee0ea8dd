"""Spin-orbit structure of the momentum pair Hamiltonian.

Shifting the pair momentum by half a photon recoil, p = p_x - hbar k / 2,
makes the zero-detuning pair Hamiltonian symmetric:

    V(p_x) = [[ p_x^2/2M - hbar k p_x/2M + hbar^2 k^2/8M,  -hbar J ],
              [ -hbar J,  p_x^2/2M + hbar k p_x/2M + hbar^2 k^2/8M ]]

with J = Omega/2.  In Pauli form V = (p_x^2/2M + hbar omega_B/4) I
- upsilon p_x sigma_z - hbar J sigma_x: the sigma_z term couples internal
state to momentum (spin-orbit), the sigma_x term is the drive.  Near p_x = 0
the quadratic term is negligible and the dispersion is a gapped cone.

Operator entries are energies (J); dispersion outputs are angular
frequencies (rad/s).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .model import (
    AtomSpecies,
    DriveField,
    effective_rabi,
    kinetic_frequency,
    packet_velocity,
    photon_momentum,
    recoil_shift,
)


@dataclass
class TwoByTwoOperator:
    """Hermitian 2x2 operator; entries in joules."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        scale = max(float(np.max(np.abs(m))), 1e-300)
        if float(np.max(np.abs(m - m.conj().T))) > 1e-12 * scale:
            raise ValueError("matrix is not Hermitian within 1e-12 (relative)")
        self.matrix = m

    def eigenvalues(self) -> np.ndarray:
        """Ascending real eigenvalues (J)."""
        return np.linalg.eigvalsh(self.matrix)


@dataclass
class PauliCoefficients:
    """Expansion V = c_identity * I + c_z * sigma_z + c_x * sigma_x (joules)."""

    c_identity: float
    c_z: float
    c_x: float

    def reconstruct(self) -> TwoByTwoOperator:
        return TwoByTwoOperator(
            np.array(
                [
                    [self.c_identity + self.c_z, self.c_x],
                    [self.c_x, self.c_identity - self.c_z],
                ],
                dtype=complex,
            )
        )


def symmetric_hamiltonian(p_x, species: AtomSpecies, field: DriveField) -> TwoByTwoOperator:
    """Pair Hamiltonian in the recoil-centered momentum coordinate (energies, J).

    Defined for zero detuning only; the symmetric form does not exist
    otherwise.
    """
    if field.detuning != 0.0:
        raise ValueError(
            "symmetric_hamiltonian requires zero detuning "
            f"(got detuning = {field.detuning!r} rad/s)"
        )
    hbar_k = photon_momentum(field)
    diag_lo = HBAR * kinetic_frequency(p_x - 0.5 * hbar_k, species)
    diag_hi = HBAR * kinetic_frequency(p_x + 0.5 * hbar_k, species)
    coupling = -HBAR * field.rabi_frequency / 2.0
    return TwoByTwoOperator(
        np.array([[diag_lo, coupling], [coupling, diag_hi]], dtype=complex)
    )


def pauli_decompose(op: TwoByTwoOperator) -> PauliCoefficients:
    """Coefficients of I, sigma_z, sigma_x for a real-symmetric operator."""
    m = op.matrix
    scale = max(float(np.max(np.abs(m))), 1e-300)
    if float(np.max(np.abs(m.imag))) > 1e-12 * scale:
        raise ValueError("operator has complex entries; expected real-symmetric")
    a, d = m[0, 0].real, m[1, 1].real
    return PauliCoefficients(
        c_identity=0.5 * (a + d),
        c_z=0.5 * (a - d),
        c_x=m[0, 1].real,
    )


def dirac_limit(
    p_x: float, species: AtomSpecies, field: DriveField
) -> tuple[TwoByTwoOperator, float]:
    """Linear-in-momentum operator near p_x = 0 and the dropped residual.

    Returns (hbar omega_B / 4) I - upsilon p_x sigma_z - (hbar Omega / 2) sigma_x
    together with the discarded scalar p_x^2 / 2M.  Both eigenvalues of the
    exact operator exceed the linear ones by exactly that residual.
    """
    if field.detuning != 0.0:
        raise ValueError(
            f"dirac_limit requires zero detuning (got {field.detuning!r} rad/s)"
        )
    linear = PauliCoefficients(
        c_identity=HBAR * recoil_shift(species, field) / 4.0,
        c_z=-packet_velocity(species, field) * p_x,
        c_x=-HBAR * field.rabi_frequency / 2.0,
    ).reconstruct()
    residual = p_x**2 / (2.0 * species.mass)
    return linear, residual


@dataclass
class DispersionSpectrum:
    """Dressed branches and bare levels over a momentum array (rad/s)."""

    p: np.ndarray  # kg m/s
    w_g: np.ndarray  # lower dressed branch
    w_e: np.ndarray  # upper dressed branch
    bare_g: np.ndarray  # omega_p
    bare_e: np.ndarray  # Delta + omega_{p + hbar k}


def dispersion_spectrum(
    p_values, species: AtomSpecies, field: DriveField
) -> DispersionSpectrum:
    """Eigenfrequencies W_g,e = (Delta + omega_p + omega_{p+hbar k} -+ Sigma)/2.

    Any detuning is allowed here.  The branch gap W_e - W_g equals Sigma(p)
    and reaches its minimum Omega where delta(p) = 0.
    """
    p = np.asarray(p_values, dtype=float)
    hbar_k = photon_momentum(field)
    bare_g = kinetic_frequency(p, species)
    bare_e = field.detuning + kinetic_frequency(p + hbar_k, species)
    mean = 0.5 * (bare_g + bare_e)
    half_gap = 0.5 * effective_rabi(p, species, field)
    return DispersionSpectrum(
        p=p,
        w_g=mean - half_gap,
        w_e=mean + half_gap,
        bare_g=bare_g,
        bare_e=bare_e,
    )
