"""Physical constants, lab-unit engine configuration and the natural-unit bridge.

Configurations are given in laboratory units (ordinary frequencies in Hz,
temperatures in K). Internally everything runs with hbar = k_B = 1, so
frequencies become angular frequencies (rad/s) and inverse temperatures
become ``beta = hbar / (k_B T)`` in s/rad.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34  # J s
    k_boltzmann: float = 1.380649e-23  # J / K


CONSTANTS = PhysicalConstants()


class ConfigError(ValueError):
    """Invalid configuration document or parameter; ``key`` names the culprit."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


@dataclass(frozen=True)
class EngineConfig:
    n_qubits: int
    freq_qubit_hot: float
    freq_qubit_cold: float
    freq_interaction: float
    coupling: float
    cavity_linewidth: float
    temp_hot: float
    temp_cold: float
    epsilon: float
    samples_per_stroke: int = 1000
    gap_floor: float = 1e-9

    def with_n(self, n_qubits: int) -> "EngineConfig":
        return dataclasses.replace(self, n_qubits=n_qubits)


_FREQ_KEYS = ("freq_qubit_hot", "freq_qubit_cold", "freq_interaction",
              "coupling", "cavity_linewidth")
_REQUIRED = tuple(f.name for f in dataclasses.fields(EngineConfig)
                  if f.default is dataclasses.MISSING)
_ALL_KEYS = tuple(f.name for f in dataclasses.fields(EngineConfig))


def _positive_finite(value, key):
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{key} must be a number", key)
    if not math.isfinite(value) or value <= 0:
        raise ConfigError(f"{key} must be positive and finite", key)


def validate_config(cfg: EngineConfig, engine: bool = True) -> EngineConfig:
    """Check every parameter constraint, raising ConfigError on the first failure.

    ``engine=True`` additionally demands an odd qubit number of at least 3;
    ladder construction alone accepts any N >= 1.
    """
    n = cfg.n_qubits
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigError("n_qubits must be an integer", "n_qubits")
    if n < 1:
        raise ConfigError("n_qubits must be positive", "n_qubits")
    if engine:
        if n % 2 == 0:
            raise ConfigError("n_qubits must be odd", "n_qubits")
        if n < 3:
            raise ConfigError("n_qubits must be at least 3", "n_qubits")
    for key in _FREQ_KEYS + ("temp_hot", "temp_cold", "epsilon"):
        _positive_finite(getattr(cfg, key), key)
    if not cfg.temp_hot > cfg.temp_cold:
        raise ConfigError("temp_hot must exceed temp_cold", "temp_hot")
    if not cfg.freq_qubit_hot > cfg.freq_qubit_cold:
        raise ConfigError("freq_qubit_hot must exceed freq_qubit_cold", "freq_qubit_hot")
    sps = cfg.samples_per_stroke
    if not isinstance(sps, int) or isinstance(sps, bool) or sps < 2:
        raise ConfigError("samples_per_stroke must be an integer >= 2", "samples_per_stroke")
    _positive_finite(cfg.gap_floor, "gap_floor")
    return cfg


def load_config(source: str, engine: bool = True) -> EngineConfig:
    """Parse a JSON configuration document into a validated EngineConfig."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"cannot parse configuration: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = sorted(set(doc) - set(_ALL_KEYS))
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r}", unknown[0])
    for key in _REQUIRED:
        if key not in doc:
            raise ConfigError(f"missing key {key!r}", key)
    return validate_config(EngineConfig(**doc), engine=engine)


def read_config(path, engine: bool = True) -> EngineConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    return load_config(text, engine=engine)


def dump_config(cfg: EngineConfig) -> str:
    return json.dumps(dataclasses.asdict(cfg), indent=2, sort_keys=False)


@dataclass(frozen=True)
class NaturalParams:
    """Engine parameters in natural units: angular frequencies in rad/s, beta in s/rad."""

    n_qubits: int
    omega_a_hot: float
    omega_a_cold: float
    omega_interaction: float
    coupling: float
    linewidth: float
    beta_hot: float
    beta_cold: float
    epsilon: float
    samples_per_stroke: int = 1000
    gap_floor: float = 1e-9

    def with_n(self, n_qubits: int) -> "NaturalParams":
        return dataclasses.replace(self, n_qubits=n_qubits)

    @property
    def eta_carnot(self) -> float:
        return 1.0 - self.beta_hot / self.beta_cold

    @property
    def gamma_purcell(self) -> float:
        return 8.0 * self.coupling**2 / self.linewidth


def to_natural(cfg: EngineConfig, constants: PhysicalConstants = CONSTANTS) -> NaturalParams:
    two_pi = 2.0 * math.pi
    ratio = constants.hbar / constants.k_boltzmann
    return NaturalParams(
        n_qubits=cfg.n_qubits,
        omega_a_hot=two_pi * cfg.freq_qubit_hot,
        omega_a_cold=two_pi * cfg.freq_qubit_cold,
        omega_interaction=two_pi * cfg.freq_interaction,
        coupling=two_pi * cfg.coupling,
        linewidth=two_pi * cfg.cavity_linewidth,
        beta_hot=ratio / cfg.temp_hot,
        beta_cold=ratio / cfg.temp_cold,
        epsilon=cfg.epsilon,
        samples_per_stroke=cfg.samples_per_stroke,
        gap_floor=cfg.gap_floor,
    )


def to_lab(p: NaturalParams, constants: PhysicalConstants = CONSTANTS) -> EngineConfig:
    """Inverse of :func:`to_natural`."""
    two_pi = 2.0 * math.pi
    ratio = constants.hbar / constants.k_boltzmann
    return EngineConfig(
        n_qubits=p.n_qubits,
        freq_qubit_hot=p.omega_a_hot / two_pi,
        freq_qubit_cold=p.omega_a_cold / two_pi,
        freq_interaction=p.omega_interaction / two_pi,
        coupling=p.coupling / two_pi,
        cavity_linewidth=p.linewidth / two_pi,
        temp_hot=ratio / p.beta_hot,
        temp_cold=ratio / p.beta_cold,
        epsilon=p.epsilon,
        samples_per_stroke=p.samples_per_stroke,
        gap_floor=p.gap_floor,
    )


def dimensionless_exponents(p: NaturalParams) -> tuple[float, float]:
    """Return (beta_H * omega_A^H, beta_C * omega_A^C)."""
    return p.beta_hot * p.omega_a_hot, p.beta_cold * p.omega_a_cold


def power_to_watts(power_natural: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Convert a power in rad/s^2 (hbar = 1) to W."""
    return power_natural * constants.hbar


REFERENCE_CONFIG = EngineConfig(
    n_qubits=31,
    freq_qubit_hot=1.0e9,
    freq_qubit_cold=0.55e9,
    freq_interaction=31.0e6,
    coupling=10.0e3,
    cavity_linewidth=1.0e6,
    temp_hot=20.0e-3,
    temp_cold=10.0e-3,
    epsilon=1.0e-3,
)
"""Reference parameter set: 31 qubits, cold qubit at 0.55 GHz."""
