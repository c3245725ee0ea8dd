"""Physical constants, SI units throughout."""

HBAR = 1.054571817e-34  # reduced Planck constant, J s
SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact

# Rounded atomic mass unit; the bundled species presets and all frozen
# regression values are calibrated against this value, not CODATA.
ATOMIC_MASS_UNIT = 1.67e-27  # kg
