"""Read and write :class:`PhysicalConfig` as unit-tagged TOML.

Schema (one key per field, unit suffix mandatory)::

    sphere_mass_kg, sphere_radius_m, center_distance_m, density_kg_m3,
    form_factor, temperature_k, nongrav_gradient_n_m (optional, default 0),
    mech_freq_{a,b}, mech_damping_{a,b}, cavity_decay, coupling_{a,b},
    pump_plus, pump_minus   -- each with suffix `_hz` or `_rad_s`

Unknown keys are rejected so that typos do not silently fall back to
defaults.
"""

from __future__ import annotations

import math
import sys
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .errors import ConfigError
from .params import PhysicalConfig

TWO_PI = 2.0 * math.pi

_PLAIN = {
    "sphere_mass": "sphere_mass_kg",
    "sphere_radius": "sphere_radius_m",
    "center_distance": "center_distance_m",
    "density": "density_kg_m3",
    "form_factor": "form_factor",
    "temperature": "temperature_k",
}
_RATES = {
    "mech_freq_a": "mech_freq_a",
    "mech_freq_b": "mech_freq_b",
    "mech_damping_a": "mech_damping_a",
    "mech_damping_b": "mech_damping_b",
    "cavity_decay": "cavity_decay",
    "coupling_a": "coupling_a",
    "coupling_b": "coupling_b",
    "pump_plus": "pump_plus",
    "pump_minus": "pump_minus",
}
_OPTIONAL = {"nongrav_gradient": ("nongrav_gradient_n_m", 0.0)}

PAPER_DEFAULTS = "paper_defaults"


def _number(key, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    return float(value)


def config_from_mapping(data: dict) -> PhysicalConfig:
    seen = set()
    fields = {}
    for field, key in _PLAIN.items():
        if key not in data:
            raise ConfigError(f"missing key {key!r}")
        fields[field] = _number(key, data[key])
        seen.add(key)
    for field, stem in _RATES.items():
        hz, rad = f"{stem}_hz", f"{stem}_rad_s"
        present = [k for k in (hz, rad) if k in data]
        if len(present) != 1:
            raise ConfigError(f"expected exactly one of {hz!r} or {rad!r}")
        key = present[0]
        value = _number(key, data[key])
        fields[field] = value * TWO_PI if key == hz else value
        seen.add(key)
    for field, (key, default) in _OPTIONAL.items():
        fields[field] = _number(key, data[key]) if key in data else default
        seen.add(key)
    extra = set(data) - seen
    if extra:
        raise ConfigError(f"unknown keys: {sorted(extra)}")
    try:
        return PhysicalConfig(**fields)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def loads(text: str) -> PhysicalConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"not valid TOML: {exc}") from exc
    return config_from_mapping(data)


def load(path: str | Path) -> PhysicalConfig:
    """Load a config file; the name ``paper_defaults`` selects the bundled one."""
    if str(path) == PAPER_DEFAULTS:
        return paper_defaults()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def paper_defaults() -> PhysicalConfig:
    text = resources.files("gravent").joinpath("data/paper_defaults.toml").read_text()
    return loads(text)


def dumps(config: PhysicalConfig) -> str:
    """Serialize with `_rad_s` rate keys (lossless round trip)."""
    lines = []
    for field, key in _PLAIN.items():
        lines.append(f"{key} = {getattr(config, field)!r}")
    for field, stem in _RATES.items():
        value = getattr(config, field)
        if isinstance(value, complex):
            value = abs(value)
        lines.append(f"{stem}_rad_s = {float(value)!r}")
    lines.append(f"nongrav_gradient_n_m = {config.nongrav_gradient!r}")
    return "\n".join(lines) + "\n"
