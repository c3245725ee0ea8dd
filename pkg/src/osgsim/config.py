"""Run configuration: a minimal line-oriented ``key = value`` format with
``[section]`` headers, named presets and validation that points at the
offending key and line.

Frequencies in the ``[drive]`` section (``rabi``, ``detuning``, ``decay``)
are Hz-valued; with ``two_pi_times = true`` (the default) they are multiplied
by 2 pi to obtain angular rates.  Packet momenta are in units of hbar*k and
times in units of the Rabi period T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigError
from .model import SR87, AtomSpecies, DriveField, PacketParams, photon_momentum
from .tables import FORMATS

_METHODS = ("analytic", "numeric")

# section -> key -> (parser, default-as-string or None when required)
_SCHEMA: dict[str, dict[str, tuple[str, str | None]]] = {
    "species": {
        "name": ("str", "Sr87"),
        "mass_kg": ("float_opt", ""),
        "transition_frequency_hz": ("float_opt", ""),
    },
    "drive": {
        "rabi": ("float", None),
        "two_pi_times": ("bool", "true"),
        "detuning": ("float", "0.0"),
        "decay": ("float", "0.0"),
    },
    "packet": {
        "center_momentum_hbark": ("float", "0.0"),
        "width_hbark": ("float", "1.0"),
        "amp_ground": ("complex", "1.0"),
        "amp_excited": ("complex", "0.0"),
    },
    "grid": {
        "stride": ("int", "8"),
        "width_span": ("float", "8.0"),
        "recoil_span": ("float", "4.0"),
        "time_samples": ("int", "5"),
        "t_max_periods": ("float", "1.0"),
    },
    "dispersion": {
        "p_min_hbark": ("float", "-3.5"),
        "p_max_hbark": ("float", "2.5"),
        "samples": ("int", "601"),
    },
    "steady": {
        "delta_min_omega": ("float", "-2.0"),
        "delta_max_omega": ("float", "2.0"),
        "samples": ("int", "81"),
    },
    "position": {
        "method": ("str", "analytic"),
    },
    "output": {
        "directory": ("str", "out"),
        "format": ("str", "csv"),
    },
}

#: Named parameter presets; each entry overrides the schema defaults.
PRESETS: dict[str, dict[str, dict[str, str]]] = {
    "fig2": {
        "drive": {"rabi": "2.0e3"},
    },
    "fig3": {
        "drive": {"rabi": "1.0e6"},
        "packet": {"width_hbark": "0.5", "amp_ground": "1.0", "amp_excited": "0.0"},
        "grid": {"stride": "512", "time_samples": "5", "t_max_periods": "1.0"},
    },
    "fig4": {
        "drive": {"rabi": "1.0e6"},
        "packet": {"width_hbark": "20.0", "amp_ground": "0.8", "amp_excited": "0.6"},
        "grid": {"stride": "8", "time_samples": "13", "t_max_periods": "3.0"},
    },
    "fig5": {
        "drive": {"rabi": "1.0e6"},
        "packet": {"width_hbark": "20.0", "amp_ground": "0.8", "amp_excited": "0.6"},
        "grid": {"stride": "8", "time_samples": "121", "t_max_periods": "3.0"},
    },
    "fig6": {
        "drive": {"rabi": "1.0e6", "decay": "1.0e5"},
        "packet": {"width_hbark": "0.5", "amp_ground": "0.8", "amp_excited": "0.6"},
        "grid": {"stride": "64", "time_samples": "13", "t_max_periods": "6.0"},
    },
    "fig7": {
        "drive": {"rabi": "1.0e6", "decay": "1.0e5"},
        "packet": {"width_hbark": "0.5", "amp_ground": "0.8", "amp_excited": "0.6"},
        "grid": {"stride": "64", "time_samples": "401", "t_max_periods": "10.0"},
    },
}


@dataclass
class RunConfig:
    """Fully resolved run parameters plus raw values for output echoing."""

    species: AtomSpecies
    field: DriveField
    decay_rate: float  # rad/s
    packet: PacketParams
    stride: int
    width_span: float
    recoil_span: float
    time_samples: int
    t_max_periods: float
    dispersion_range: tuple[float, float, int]  # hbar*k units
    steady_range: tuple[float, float, int]  # Omega units
    method: str
    out_dir: str
    out_format: str
    preset: str = ""
    echo: list[tuple[str, str]] = dc_field(default_factory=list)


def _parse_scalar(kind: str, raw: str, key: str, line: int | None):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "float_opt":
            return float(raw) if raw else None
        if kind == "bool":
            low = raw.lower()
            if low in ("true", "yes", "1"):
                return True
            if low in ("false", "no", "0"):
                return False
            raise ValueError(raw)
        if kind == "complex":
            parts = [s.strip() for s in raw.split(",")]
            if len(parts) == 1:
                return complex(float(parts[0]), 0.0)
            if len(parts) == 2:
                return complex(float(parts[0]), float(parts[1]))
            raise ValueError(raw)
        return raw  # str
    except ValueError:
        raise ConfigError(f"cannot parse value {raw!r} as {kind}", key=key, line=line) from None


def _read_entries(text: str) -> tuple[str | None, dict[str, tuple[str, int]]]:
    """Raw ``section.key -> (value, line)`` entries and an optional preset name."""
    entries: dict[str, tuple[str, int]] = {}
    preset: str | None = None
    section = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                raise ConfigError(f"unknown section [{section}]", line=lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not section:
            if key == "preset":
                preset = value
                continue
            raise ConfigError(
                "only 'preset' may appear before the first section", key=key, line=lineno
            )
        if key not in _SCHEMA[section]:
            raise ConfigError(f"unknown key in [{section}]", key=key, line=lineno)
        entries[f"{section}.{key}"] = (value, lineno)
    return preset, entries


def parse_config(text: str, preset: str | None = None) -> RunConfig:
    """Parse configuration text, optionally on top of a named preset.

    A preset named inside the text must agree with one passed explicitly.
    Raises ConfigError naming the key and line on any invalid entry.
    """
    text_preset, entries = _read_entries(text)
    if text_preset is not None:
        if text_preset not in PRESETS:
            raise ConfigError(
                f"unknown preset {text_preset!r}; available: {sorted(PRESETS)}",
                key="preset",
            )
        if preset is not None and preset != text_preset:
            raise ConfigError(
                f"preset {text_preset!r} in the config conflicts with {preset!r}",
                key="preset",
            )
        preset = text_preset
    if preset is not None and preset not in PRESETS:
        raise ConfigError(
            f"unknown preset {preset!r}; available: {sorted(PRESETS)}", key="preset"
        )

    # layer values: schema defaults, then preset, then explicit entries
    values: dict[str, tuple[str, int | None]] = {}
    for section, keys in _SCHEMA.items():
        for key, (_, default) in keys.items():
            if default is not None:
                values[f"{section}.{key}"] = (default, None)
    if preset:
        for section, keys in PRESETS[preset].items():
            for key, val in keys.items():
                values[f"{section}.{key}"] = (val, None)
    values.update(entries)

    missing = [
        f"{section}.{key}"
        for section, keys in _SCHEMA.items()
        for key, (_, default) in keys.items()
        if default is None and f"{section}.{key}" not in values
    ]
    if missing:
        raise ConfigError(
            f"missing required keys: {', '.join(sorted(missing))} (or name a preset)"
        )

    def get(path: str):
        section, key = path.split(".")
        raw, line = values[path]
        return _parse_scalar(_SCHEMA[section][key][0], raw, key=path, line=line)

    def fail(path: str, message: str):
        line = values[path][1] if path in values else None
        raise ConfigError(message, key=path, line=line)

    # species
    name = get("species.name")
    mass = get("species.mass_kg")
    freq = get("species.transition_frequency_hz")
    if (mass is None) != (freq is None):
        fail(
            "species.mass_kg",
            "species.mass_kg and species.transition_frequency_hz must be given together",
        )
    if mass is not None:
        try:
            species = AtomSpecies(name=name, mass=mass, transition_frequency=freq)
        except ValueError as exc:
            raise ConfigError(str(exc), key="species.mass_kg") from None
    elif name == "Sr87":
        species = SR87
    else:
        fail("species.name", f"unknown species {name!r}; give mass and frequency")

    # drive
    scale = 2.0 * math.pi if get("drive.two_pi_times") else 1.0
    rabi = get("drive.rabi") * scale
    detuning = get("drive.detuning") * scale
    decay = get("drive.decay") * scale
    try:
        drive = DriveField.resonant(species, rabi_frequency=rabi, detuning=detuning)
    except ValueError as exc:
        raise ConfigError(str(exc), key="drive.rabi", line=values["drive.rabi"][1]) from None
    if decay < 0:
        fail("drive.decay", f"decay must be >= 0, got {decay}")

    # packet
    hbar_k = photon_momentum(drive)
    if not get("packet.width_hbark") > 0:
        fail("packet.width_hbark", f"width must be positive, got {get('packet.width_hbark')}")
    try:
        packet = PacketParams(
            center_momentum=get("packet.center_momentum_hbark") * hbar_k,
            momentum_width=get("packet.width_hbark") * hbar_k,
            amp_ground=get("packet.amp_ground"),
            amp_excited=get("packet.amp_excited"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc), key="packet.amp_ground") from None

    stride = get("grid.stride")
    if stride < 1:
        fail("grid.stride", f"stride must be >= 1, got {stride}")
    time_samples = get("grid.time_samples")
    if time_samples < 2:
        fail("grid.time_samples", f"time_samples must be >= 2, got {time_samples}")
    t_max_periods = get("grid.t_max_periods")
    if not t_max_periods > 0:
        fail("grid.t_max_periods", f"t_max_periods must be positive, got {t_max_periods}")

    method = get("position.method")
    if method not in _METHODS:
        fail("position.method", f"method must be one of {_METHODS}, got {method!r}")
    out_format = get("output.format")
    if out_format not in FORMATS:
        fail("output.format", f"format must be one of {FORMATS}, got {out_format!r}")

    for path, low in (("dispersion.samples", 2), ("steady.samples", 1)):
        if get(path) < low:
            fail(path, f"must be >= {low}, got {get(path)}")
    if not get("dispersion.p_min_hbark") < get("dispersion.p_max_hbark"):
        fail("dispersion.p_min_hbark", "dispersion range must have p_min < p_max")

    amp_g, amp_e = get("packet.amp_ground"), get("packet.amp_excited")
    echo = [
        ("preset", preset or ""),
        ("species", species.name),
        ("mass_kg", repr(species.mass)),
        ("transition_frequency_hz", repr(species.transition_frequency)),
        ("rabi_rad_s", repr(drive.rabi_frequency)),
        ("detuning_rad_s", repr(drive.detuning)),
        ("decay_rad_s", repr(decay)),
        ("wavenumber_rad_m", repr(drive.wavenumber)),
        ("center_momentum_hbark", repr(get("packet.center_momentum_hbark"))),
        ("width_hbark", repr(get("packet.width_hbark"))),
        ("amp_ground", f"{amp_g.real!r},{amp_g.imag!r}"),
        ("amp_excited", f"{amp_e.real!r},{amp_e.imag!r}"),
    ]

    return RunConfig(
        species=species,
        field=drive,
        decay_rate=decay,
        packet=packet,
        stride=stride,
        width_span=get("grid.width_span"),
        recoil_span=get("grid.recoil_span"),
        time_samples=time_samples,
        t_max_periods=t_max_periods,
        dispersion_range=(
            get("dispersion.p_min_hbark"),
            get("dispersion.p_max_hbark"),
            get("dispersion.samples"),
        ),
        steady_range=(
            get("steady.delta_min_omega"),
            get("steady.delta_max_omega"),
            get("steady.samples"),
        ),
        method=method,
        out_dir=get("output.directory"),
        out_format=out_format,
        preset=preset or "",
        echo=echo,
    )
