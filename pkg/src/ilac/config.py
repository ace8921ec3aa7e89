"""Scenario files: flat ``key = value`` text with units in the key suffix.

Example::

    # 32-antenna gNB, labelled by SNR
    n_antennas = 32
    gamma_db = 30
    theta_deg = 0
    epsilon_mode = literal_one

Lines starting with ``#`` are comments. Unknown or repeated keys are errors.
Exactly one of ``distance_m`` / ``gamma_db`` places the UE; when neither is
given the scenario uses ``gamma_db = 20``.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from pathlib import Path

from .link import ConfigError, EpsilonMode, LinkState, SystemConfig, build_link, distance_for_gamma
from .tradeoff import Domain

DEFAULT_GAMMA_DB = 20.0

# file key -> (SystemConfig field, parser)
SYSTEM_KEYS = {
    "carrier_freq_hz": ("carrier_freq", float),
    "total_bandwidth_hz": ("total_bandwidth", float),
    "subcarrier_bandwidth_hz": ("subcarrier_bandwidth", float),
    "symbols_total": ("symbols_total", int),
    "n_antennas": ("n_antennas", int),
    "antenna_spacing_m": ("antenna_spacing", float),
    "theta_deg": ("theta", lambda v: math.radians(float(v))),
    "p_gnb_dbm": ("p_gnb_dbm", float),
    "p_ue_dbm": ("p_ue_dbm", float),
    "gain_gnb_lin": ("gain_gnb", float),
    "gain_ue_lin": ("gain_ue", float),
    "noise_power_dbm": ("noise_power_dbm", float),
    "waveform_coeff": ("waveform_coeff", float),
    "epsilon_mode": ("epsilon_mode", EpsilonMode),
}
SCENARIO_KEYS = {
    "anchor_x_m": float,
    "anchor_y_m": float,
    "distance_m": float,
    "gamma_db": float,
    "domain": str,
    "grid": int,
}
KNOWN_KEYS = set(SYSTEM_KEYS) | set(SCENARIO_KEYS)


@dataclass(frozen=True)
class Scenario:
    config: SystemConfig
    distance: float | None = None
    gamma_db: float | None = None
    domain: str = "both"
    grid: int | None = None

    def __post_init__(self):
        if self.distance is not None and self.gamma_db is not None:
            raise ConfigError("distance_m and gamma_db are mutually exclusive; set only one")
        if self.distance is None and self.gamma_db is None:
            object.__setattr__(self, "gamma_db", DEFAULT_GAMMA_DB)
        if self.domain not in ("time", "frequency", "both"):
            raise ConfigError(f"domain must be time, frequency or both, got {self.domain!r}")
        if self.grid is not None and self.grid < 2:
            raise ConfigError(f"grid must be at least 2, got {self.grid}")

    @property
    def domains(self) -> list[Domain]:
        if self.domain == "both":
            return [Domain.TIME, Domain.FREQUENCY]
        return [Domain(self.domain)]

    def resolved_distance(self) -> float:
        if self.distance is not None:
            return self.distance
        return distance_for_gamma(self.config, self.gamma_db)

    def link(self) -> LinkState:
        return build_link(self.config, self.resolved_distance(), self.gamma_db)


def parse_pairs(text: str, source: str = "<string>") -> dict[str, str]:
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",),
        interpolation=None,
    )
    parser.optionxform = str
    try:
        parser.read_string("[scenario]\n" + text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return dict(parser["scenario"])


def parse_override(item: str) -> tuple[str, str]:
    key, sep, value = item.partition("=")
    if not sep:
        raise ConfigError(f"--set expects key=value, got {item!r}")
    return key.strip(), value.strip()


def scenario_from_pairs(pairs: dict[str, str]) -> Scenario:
    unknown = sorted(set(pairs) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration key(s): {', '.join(unknown)}")
    system = {}
    extra = {}
    for key, raw in pairs.items():
        try:
            if key in SYSTEM_KEYS:
                name, conv = SYSTEM_KEYS[key]
                system[name] = conv(raw)
            else:
                extra[key] = SCENARIO_KEYS[key](raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None
    system["anchor"] = (extra.pop("anchor_x_m", 0.0), extra.pop("anchor_y_m", 0.0))
    config = SystemConfig(**system)
    return Scenario(
        config=config,
        distance=extra.get("distance_m"),
        gamma_db=extra.get("gamma_db"),
        domain=extra.get("domain", "both"),
        grid=extra.get("grid"),
    )


def load_scenario(path: str | Path | None = None, overrides=()) -> Scenario:
    """Read a scenario file (optional) and apply ``key=value`` overrides on top."""
    pairs: dict[str, str] = {}
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        pairs.update(parse_pairs(text, str(path)))
    for item in overrides:
        key, value = parse_override(item)
        pairs[key] = value
    # a flag placing the UE replaces whichever placement the file used
    placed = [parse_override(i)[0] for i in overrides]
    if "distance_m" in placed and "gamma_db" not in placed:
        pairs.pop("gamma_db", None)
    if "gamma_db" in placed and "distance_m" not in placed:
        pairs.pop("distance_m", None)
    return scenario_from_pairs(pairs)


def scenario_to_text(scenario: Scenario) -> str:
    """Inverse of :func:`parse_pairs` for the keys a scenario actually uses."""
    cfg = scenario.config
    values = {
        "carrier_freq_hz": cfg.carrier_freq,
        "total_bandwidth_hz": cfg.total_bandwidth,
        "subcarrier_bandwidth_hz": cfg.subcarrier_bandwidth,
        "symbols_total": cfg.symbols_total,
        "n_antennas": cfg.n_antennas,
        "antenna_spacing_m": cfg.antenna_spacing,
        "theta_deg": math.degrees(cfg.theta),
        "p_gnb_dbm": cfg.p_gnb_dbm,
        "p_ue_dbm": cfg.p_ue_dbm,
        "gain_gnb_lin": cfg.gain_gnb,
        "gain_ue_lin": cfg.gain_ue,
        "noise_power_dbm": cfg.noise_power_dbm,
        "waveform_coeff": cfg.waveform_coeff,
        "epsilon_mode": cfg.epsilon_mode.value,
        "anchor_x_m": cfg.anchor[0],
        "anchor_y_m": cfg.anchor[1],
        "domain": scenario.domain,
    }
    if scenario.distance is not None:
        values["distance_m"] = scenario.distance
    else:
        values["gamma_db"] = scenario.gamma_db
    if scenario.grid is not None:
        values["grid"] = scenario.grid
    return "".join(f"{k} = {v!r}\n" if isinstance(v, float) else f"{k} = {v}\n"
                   for k, v in values.items())

