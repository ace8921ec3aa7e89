"""Link budget: physical scenario parameters to dimensionless per-link quantities.

Everything downstream (capacity, CRB, trade-off curves) consumes a
:class:`LinkState`. Powers and noise are given in dBm at the configuration
boundary; all derived quantities are linear and SI.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


class ConfigError(ValueError):
    """Invalid or inconsistent scenario configuration."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class EpsilonMode(str, enum.Enum):
    LITERAL_ONE = "literal_one"
    DL_OVER_UL = "dl_over_ul"


def snr_db_to_linear(x_db):
    out = np.power(10.0, np.asarray(x_db, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def linear_to_db(x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError(f"linear_to_db needs a positive value, got {x!r}")
    out = 10.0 * np.log10(arr)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SystemConfig:
    """Physical and radio parameters of a single gNB / single UE scenario.

    Defaults follow the 2.6 GHz / 20 MHz / 200-symbol setting. ``antenna_spacing``
    of ``None`` means half a wavelength.
    """

    carrier_freq: float = 2.6e9
    total_bandwidth: float = 20e6
    subcarrier_bandwidth: float = 180e3
    symbols_total: int = 200
    n_antennas: int = 8
    antenna_spacing: float | None = None
    theta: float = 0.0
    p_gnb_dbm: float = 13.0
    p_ue_dbm: float = 13.0
    gain_gnb: float = 1.0
    gain_ue: float = 1.0
    noise_power_dbm: float = -101.0
    waveform_coeff: float = 1.0
    epsilon_mode: EpsilonMode = EpsilonMode.LITERAL_ONE
    anchor: tuple[float, float] = field(default=(0.0, 0.0))

    def __post_init__(self):
        object.__setattr__(self, "epsilon_mode", EpsilonMode(self.epsilon_mode))
        object.__setattr__(self, "anchor", tuple(float(v) for v in self.anchor))
        if self.antenna_spacing is None:
            object.__setattr__(self, "antenna_spacing", self.wavelength / 2.0)
        self.validate()

    def validate(self) -> None:
        if not self.carrier_freq > 0:
            raise ConfigError(f"carrier_freq must be positive, got {self.carrier_freq}")
        if not self.total_bandwidth > 0:
            raise ConfigError(f"total_bandwidth must be positive, got {self.total_bandwidth}")
        if not self.subcarrier_bandwidth > 0:
            raise ConfigError(
                f"subcarrier_bandwidth must be positive, got {self.subcarrier_bandwidth}"
            )
        if self.n_resource_blocks < 2:
            raise ConfigError(
                "total_bandwidth must hold at least two resource elements of "
                f"subcarrier_bandwidth ({self.total_bandwidth} / {self.subcarrier_bandwidth})"
            )
        if int(self.symbols_total) != self.symbols_total or self.symbols_total < 2:
            raise ConfigError(f"symbols_total must be an integer >= 2, got {self.symbols_total}")
        if int(self.n_antennas) != self.n_antennas or self.n_antennas < 2:
            raise ConfigError(f"n_antennas must be an integer >= 2, got {self.n_antennas}")
        if not self.antenna_spacing > 0:
            raise ConfigError(f"antenna_spacing must be positive, got {self.antenna_spacing}")
        if not abs(self.theta) < math.pi / 2:
            raise ConfigError(f"|theta| must be below pi/2, got {self.theta}")
        if self.gain_gnb <= 0 or self.gain_ue <= 0:
            raise ConfigError("antenna gains must be positive linear values")
        if self.waveform_coeff < 0:
            raise ConfigError(f"waveform_coeff must be >= 0, got {self.waveform_coeff}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq

    @property
    def n_resource_blocks(self) -> int:
        """Number of whole resource elements that fit in the total bandwidth."""
        return int(math.floor(self.total_bandwidth / self.subcarrier_bandwidth + 1e-9))

    @property
    def rho_ul(self) -> float:
        return _nominal_snr(self.p_ue_dbm, self)

    @property
    def rho_dl(self) -> float:
        return _nominal_snr(self.p_gnb_dbm, self)


def _nominal_snr(power_dbm: float, config: SystemConfig) -> float:
    return (
        snr_db_to_linear(power_dbm - config.noise_power_dbm)
        * config.gain_gnb
        * config.gain_ue
    )


@dataclass(frozen=True)
class LinkState:
    distance: float
    beta: float
    rho_ul: float
    rho_dl: float
    gamma: float
    toa: float
    alpha: float
    delta: float
    epsilon: float
    n_antennas: int

    @property
    def log_snr(self) -> float:
        """ln(alpha / (1 + delta)), the effective log-SNR of the capacity bound."""
        return math.log(self.alpha / (1.0 + self.delta))


def free_space_beta(config: SystemConfig, distance: float) -> float:
    """Large-scale fading coefficient (lambda / (4 pi d))^2 of free-space propagation."""
    if not distance > 0:
        raise DomainError(f"distance must be positive, got {distance}")
    return (config.wavelength / (4.0 * math.pi * distance)) ** 2


def distance_for_gamma(config: SystemConfig, gamma_db: float) -> float:
    """Free-space distance at which rho_dl * beta equals the requested SNR."""
    beta = snr_db_to_linear(gamma_db) / config.rho_dl
    if beta > 1.0:
        raise ConfigError(
            f"gamma_db={gamma_db} exceeds the link budget at unit fading "
            f"(rho_dl = {linear_to_db(config.rho_dl):.2f} dB)"
        )
    return config.wavelength / (4.0 * math.pi * math.sqrt(beta))


def build_link(config: SystemConfig, distance: float, gamma_db: float | None = None) -> LinkState:
    """Derive the per-link quantities at ``distance``.

    ``gamma_db`` overrides the localization SNR, which otherwise defaults to
    ``rho_dl * beta``.
    """
    beta = free_space_beta(config, distance)
    rho_ul = config.rho_ul
    rho_dl = config.rho_dl
    gamma = rho_dl * beta if gamma_db is None else snr_db_to_linear(gamma_db)
    alpha = 1.0 + (config.n_antennas + 1) * rho_dl * beta
    delta = rho_ul * beta
    if config.epsilon_mode is EpsilonMode.LITERAL_ONE:
        epsilon = 1.0
    else:
        epsilon = rho_dl / rho_ul
    if not alpha > 1.0 + delta:
        raise ConfigError(
            "non-positive effective log-SNR: alpha="
            f"{alpha:.6g} <= 1 + delta={1.0 + delta:.6g}"
        )
    return LinkState(
        distance=float(distance),
        beta=beta,
        rho_ul=rho_ul,
        rho_dl=rho_dl,
        gamma=float(gamma),
        toa=distance / SPEED_OF_LIGHT,
        alpha=alpha,
        delta=delta,
        epsilon=epsilon,
        n_antennas=int(config.n_antennas),
    )
