"""Downlink capacity with uplink-pilot channel estimation overhead.

All capacities are in nats/s (natural log). Pilot lengths may be passed as
numpy arrays for vectorised sweeps.
"""
from __future__ import annotations

import math

import numpy as np

from .link import DomainError, LinkState


def _as_float(x):
    return float(x) if np.ndim(x) == 0 else x


def estimate_mean_square(pilot, link: LinkState):
    """Mean square of the MMSE channel estimate for a pilot of ``pilot`` symbols."""
    tp = np.asarray(pilot, dtype=float)
    return _as_float(tp * link.rho_ul * link.beta**2 / (1.0 + tp * link.rho_ul * link.beta))


def sinr_exact(pilot, link: LinkState):
    nu = estimate_mean_square(pilot, link)
    return _as_float(link.n_antennas * link.rho_dl * np.asarray(nu) / (link.rho_dl * link.beta))


def capacity_exact(bandwidth, symbols_comm, pilot, link: LinkState, symbols_total):
    """Maximum-ratio downlink capacity, pilot overhead included.

    Parameters
    ----------
    bandwidth : float
        Bandwidth given to communication, Hz.
    symbols_comm : int
        Symbols of the coherence interval given to communication (pilot + data).
    pilot : int or array_like
        Uplink pilot length in symbols; must satisfy ``0 < pilot < symbols_comm``.
    link : LinkState
    symbols_total : int
        Symbols per coherence interval.
    """
    tp = np.asarray(pilot, dtype=float)
    if not bandwidth > 0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth}")
    if symbols_comm > symbols_total:
        raise DomainError("communication symbols exceed the coherence interval")
    if np.any(tp <= 0) or np.any(tp >= symbols_comm):
        raise DomainError(
            f"zero-or-negative airtime: pilot must lie in (0, {symbols_comm}), got {pilot!r}"
        )
    sinr = np.asarray(sinr_exact(tp, link))
    return _as_float(bandwidth * (symbols_comm - tp) / symbols_total * np.log1p(sinr))


def log_lower_bound(x, x_bar):
    """Lower bound of ln(1 + x) from its expansion at ``x_bar``; tight at x = x_bar."""
    x = np.asarray(x, dtype=float)
    x_bar = np.asarray(x_bar, dtype=float)
    if np.any(x <= 0) or np.any(x_bar <= 0):
        raise DomainError("log_lower_bound needs positive arguments")
    return _as_float(np.log1p(x_bar) + x_bar / (1.0 + x_bar) * (1.0 - x_bar / x))


def _pilot_cost(link: LinkState) -> float:
    return link.n_antennas * link.epsilon / link.alpha


def capacity_approx(bandwidth, symbols_comm, pilot, link: LinkState, symbols_total):
    """Continuous-pilot capacity after the logarithmic lower bound."""
    tp = np.asarray(pilot, dtype=float)
    if np.any(tp <= 0) or np.any(tp >= symbols_comm):
        raise DomainError(f"pilot must lie in (0, {symbols_comm}), got {pilot!r}")
    log_snr = link.log_snr
    k = _pilot_cost(link)
    val = symbols_comm * log_snr - symbols_comm * k / tp - tp * log_snr + k
    return _as_float(bandwidth / symbols_total * val)


def optimal_pilot(symbols_comm, link: LinkState) -> float:
    """Continuous pilot length maximising :func:`capacity_approx` (not rounded or clamped)."""
    return math.sqrt(symbols_comm * _pilot_cost(link) / link.log_snr)


def capacity_approx_optimal(bandwidth, symbols_comm, link: LinkState, symbols_total):
    """:func:`capacity_approx` evaluated at the continuous optimal pilot, in closed form.

    Vectorised over ``bandwidth`` and ``symbols_comm``.
    """
    log_snr = link.log_snr
    k = _pilot_cost(link)
    tc = np.asarray(symbols_comm, dtype=float)
    val = tc * log_snr - 2.0 * np.sqrt(tc * k * log_snr) + k
    return _as_float(np.asarray(bandwidth, dtype=float) / symbols_total * val)


def integer_argmax_pilot(symbols_comm: int, objective) -> int:
    """Exhaustive argmax of ``objective(pilot)`` over pilots 1 .. symbols_comm - 1.

    Ties resolve to the smallest pilot.
    """
    if symbols_comm < 2:
        raise DomainError("need at least two communication symbols to fit a pilot")
    pilots = np.arange(1, symbols_comm)
    values = np.asarray(objective(pilots), dtype=float)
    return int(pilots[int(np.argmax(values))])


def capacity_summary(bandwidth, symbols_comm: int, link: LinkState, symbols_total: int) -> dict:
    """Capacity at the continuous and the integer optimal pilot, with pilot overhead."""
    if not bandwidth > 0:
        raise DomainError(f"communication bandwidth must be positive, got {bandwidth}")
    tp = optimal_pilot(symbols_comm, link)
    tp_int = integer_argmax_pilot(
        symbols_comm, lambda p: capacity_approx(bandwidth, symbols_comm, p, link, symbols_total)
    )
    return {
        "pilot_continuous": tp,
        "pilot_integer": tp_int,
        "capacity_exact_nats": capacity_exact(bandwidth, symbols_comm, tp_int, link, symbols_total),
        "capacity_approx_nats": capacity_approx(bandwidth, symbols_comm, tp, link, symbols_total)
        if 0 < tp < symbols_comm else math.nan,
        "overhead_fraction": tp_int / symbols_total,
    }
