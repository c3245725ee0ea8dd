"""Traveling-wave optical Stern-Gerlach dynamics of a two-level atom.

Coherent wave-packet evolution in momentum and position space, spin-orbit
analysis of the pair Hamiltonian, damped density-matrix dynamics, and a CLI
that serializes every product as a deterministic table.
"""

from .bloch import (
    BlochComponents,
    BlochField,
    bloch_field_from_state,
    bloch_rhs,
    integrate_bloch,
    integrated_populations,
    momentum_distributions_bloch,
    stationary_solution,
)
from .config import PRESETS, RunConfig, parse_config
from .constants import ATOMIC_MASS_UNIT, HBAR, SPEED_OF_LIGHT
from .errors import (
    ConfigError,
    CouplingRegimeWarning,
    GridError,
    OsgError,
    ToleranceError,
    TruncationError,
)
from .model import (
    SR87,
    AtomSpecies,
    DriveField,
    PacketParams,
    doppler_shift,
    effective_rabi,
    energy_shift_delta,
    interaction_threshold_density,
    kinetic_frequency,
    oscillation_period,
    packet_velocity,
    photon_momentum,
    recoil_shift,
    step_length,
    wavenumber_from_frequency,
)
from .momentum import (
    MomentumGrid,
    MomentumState,
    PairSolution,
    evolve_pair,
    evolve_state,
    gaussian_initial,
    grid_for_packet,
    momentum_distributions,
    solve_pair,
)
from .position import (
    DeflectionMap,
    PositionField,
    PositionGrid,
    analytic_amplitudes,
    analytic_field,
    centroid_trajectories,
    conjugate_grid,
    deflection_map,
    gaussian_fit_center,
    numeric_position_reconstruct,
    overlap_fidelity,
    position_snapshots,
)
from .spinorbit import (
    DispersionSpectrum,
    PauliCoefficients,
    TwoByTwoOperator,
    dirac_limit,
    dispersion_spectrum,
    pauli_decompose,
    symmetric_hamiltonian,
)
from .tables import SnapshotTable, format_float, read_table, write_table

__version__ = "0.1.0"
