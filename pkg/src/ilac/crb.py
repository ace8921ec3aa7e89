"""Joint ToA/AoA localization bound for a single ULA anchor.

The position bound is ``c^2 t^2 CRB_aoa + c^2 CRB_toa`` with ``t`` the true
time of arrival of the link, i.e. the bound is evaluated at the operating
point. Localization symbol counts may be non-integer.
"""
from __future__ import annotations

import math

import numpy as np

from .link import SPEED_OF_LIGHT, DomainError, LinkState, SystemConfig


def _as_float(x):
    return float(x) if np.ndim(x) == 0 else x


def crb_aoa(config: SystemConfig, link: LinkState, symbols_loc):
    """Angle-of-arrival bound in rad^2; independent of bandwidth."""
    cos2 = math.cos(config.theta) ** 2
    if cos2 <= 0.0:
        raise DomainError("singular geometry: cos(theta) = 0")
    tau = np.asarray(symbols_loc, dtype=float)
    if np.any(tau <= 0):
        raise DomainError("localization symbols must be positive")
    n = config.n_antennas
    den = (
        4.0 * math.pi**2 * config.antenna_spacing**2 * link.gamma * cos2
        * n * (n - 1) * (2 * n - 1) * tau
    )
    return _as_float(3.0 * config.wavelength**2 / den)


def crb_toa(config: SystemConfig, link: LinkState, bandwidth, symbols_loc):
    """Time-of-arrival bound in s^2."""
    bw = np.asarray(bandwidth, dtype=float)
    tau = np.asarray(symbols_loc, dtype=float)
    if np.any(bw <= 0):
        raise DomainError("localization bandwidth must be positive")
    if np.any(tau <= 0):
        raise DomainError("localization symbols must be positive")
    den = (
        8.0 * math.pi**2 * bw**2 * (1.0 + config.waveform_coeff)
        * link.gamma * config.n_antennas * tau
    )
    return _as_float(3.0 / den)


def crb_position(config: SystemConfig, link: LinkState, bandwidth, symbols_loc):
    """Position bound in m^2, vectorised over bandwidth and symbol count."""
    c2 = SPEED_OF_LIGHT**2
    aoa = np.asarray(crb_aoa(config, link, symbols_loc))
    toa = np.asarray(crb_toa(config, link, bandwidth, symbols_loc))
    return _as_float(c2 * link.toa**2 * aoa + c2 * toa)


def estimate_position(anchor, theta_hat, t_hat):
    """Map an (AoA, ToA) estimate to a 2D position relative to ``anchor``."""
    if t_hat < 0:
        raise DomainError(f"time of arrival must be non-negative, got {t_hat}")
    r = SPEED_OF_LIGHT * t_hat
    x0, y0 = anchor
    return x0 + math.cos(theta_hat) * r, y0 + math.sin(theta_hat) * r
