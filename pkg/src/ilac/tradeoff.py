"""Capacity-loss versus CRB-loss trade-off for time- and frequency-domain splits.

Time domain: ``tau_L`` of the ``tau_T`` symbols go to localization, the rest
to communication over the full bandwidth. Frequency domain: ``B_L`` of the
bandwidth goes to localization for the whole coherence interval.

Capacities here are the pilot-optimised lower-bound capacities
(:func:`ilac.capacity.capacity_approx_optimal`). Loss functions are vectorised
over their resource argument.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .capacity import capacity_approx_optimal
from .crb import crb_position
from .link import DomainError, LinkState, SystemConfig


class Domain(str, enum.Enum):
    TIME = "time"
    FREQUENCY = "frequency"


class PilotPolicy(str, enum.Enum):
    CONTINUOUS_OPTIMAL = "continuous_optimal"
    INTEGER_ARGMAX = "integer_argmax"


@dataclass(frozen=True)
class ResourceSplit:
    domain: Domain
    tau_l: float = 0.0
    b_l: float = 0.0
    pilot_policy: PilotPolicy = PilotPolicy.CONTINUOUS_OPTIMAL

    def check(self, config: SystemConfig) -> None:
        if self.domain is Domain.TIME and not 0 <= self.tau_l < config.symbols_total:
            raise DomainError(f"tau_L must lie in [0, {config.symbols_total}), got {self.tau_l}")
        if self.domain is Domain.FREQUENCY and not 0 <= self.b_l < config.total_bandwidth:
            raise DomainError(f"B_L must lie in [0, {config.total_bandwidth}), got {self.b_l}")


@dataclass(frozen=True)
class TradeoffPoint:
    split: ResourceSplit
    alloc_fraction: float
    capacity: float
    crb: float
    capacity_loss: float
    crb_loss: float
    warn_negative_loss: bool = False


@dataclass
class SweepResult:
    domain: Domain
    points: list[TradeoffPoint]
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points])


@dataclass(frozen=True)
class TimeCapacityLoss:
    """Time-domain capacity loss in two forms.

    ``approx_form`` is the closed form with a single sqrt(tau_L) term; it is a
    lower bound of ``exact_form``, the actual difference of optimised
    capacities, and can go negative for very small tau_L.
    """

    approx_form: float | np.ndarray
    exact_form: float | np.ndarray


def _as_float(x):
    return float(x) if np.ndim(x) == 0 else x


def _pilot_cost(link: LinkState) -> float:
    return link.n_antennas * link.epsilon / link.alpha


def _bracket(link: LinkState, config: SystemConfig) -> float:
    """Per-bandwidth optimised capacity times tau_T (the bracket shared by both domains)."""
    tt = config.symbols_total
    L = link.log_snr
    k = _pilot_cost(link)
    return tt * L - 2.0 * math.sqrt(tt * k * L) + k


def total_capacity(link: LinkState, config: SystemConfig) -> float:
    """Optimised capacity with every resource given to communication."""
    return capacity_approx_optimal(
        config.total_bandwidth, config.symbols_total, link, config.symbols_total
    )


def capacity_loss_time(tau_l, link: LinkState, config: SystemConfig) -> TimeCapacityLoss:
    tau = np.asarray(tau_l, dtype=float)
    tt = config.symbols_total
    if np.any(tau < 0) or np.any(tau >= tt):
        raise DomainError(f"tau_L must lie in [0, {tt}), got {tau_l!r}")
    B = config.total_bandwidth
    L = link.log_snr
    k = _pilot_cost(link)
    approx = B / tt * (tau * L - 2.0 * np.sqrt(tau * k * L))
    full = capacity_approx_optimal(B, tt, link, tt)
    exact = full - np.asarray(capacity_approx_optimal(B, tt - tau, link, tt))
    return TimeCapacityLoss(_as_float(approx), _as_float(exact))


def tau_l_from_capacity_loss(loss, link: LinkState, config: SystemConfig):
    """Invert the approximate time-domain loss for tau_L (the larger root)."""
    lc = np.asarray(loss, dtype=float)
    if np.any(lc < 0):
        raise DomainError("capacity loss must be non-negative")
    L = link.log_snr
    a = _pilot_cost(link) * L
    b = lc * config.symbols_total * L / config.total_bandwidth
    return _as_float(((math.sqrt(a) + np.sqrt(a + b)) / L) ** 2)


def crb_loss_time(tau_l, config: SystemConfig):
    """tau_T / tau_L; ``inf`` when nothing is allocated to localization."""
    tau = np.asarray(tau_l, dtype=float)
    if np.any(tau < 0):
        raise DomainError("tau_L must be non-negative")
    with np.errstate(divide="ignore"):
        out = np.where(tau > 0, config.symbols_total / np.where(tau > 0, tau, 1.0), np.inf)
    return _as_float(out)


def crb_loss_from_time_loss(loss, link: LinkState, config: SystemConfig):
    """Closed-form time-domain CRB loss as a function of capacity loss."""
    lc = np.asarray(loss, dtype=float)
    if np.any(lc < 0):
        raise DomainError("capacity loss must be non-negative")
    L = link.log_snr
    tt = config.symbols_total
    root = math.sqrt(link.n_antennas * link.epsilon * L / link.alpha)
    den = root + np.sqrt(root**2 + lc * tt * L / config.total_bandwidth)
    return _as_float(tt * (L / den) ** 2)


def capacity_loss_freq(b_l, link: LinkState, config: SystemConfig):
    bl = np.asarray(b_l, dtype=float)
    B = config.total_bandwidth
    if np.any(bl < 0) or np.any(bl >= B):
        raise DomainError(f"B_L must lie in [0, {B}), got {b_l!r}")
    b_c = B - bl
    return _as_float((B - b_c) / config.symbols_total * _bracket(link, config))


def bandwidth_from_capacity_loss(loss, link: LinkState, config: SystemConfig):
    """Bandwidth whose removal costs ``loss`` nats/s; inverse of :func:`capacity_loss_freq`."""
    lc = np.asarray(loss, dtype=float)
    if np.any(lc < 0):
        raise DomainError("capacity loss must be non-negative")
    total = total_capacity(link, config)
    if np.any(lc > total):
        raise DomainError(
            f"infeasible capacity loss: exceeds total capacity {total:.6g} nats/s"
        )
    return _as_float(lc * config.symbols_total / _bracket(link, config))


def crb_loss_freq(b_l, link: LinkState, config: SystemConfig):
    """CRB(B_L, tau_T) / CRB(B, tau_T) from the position bound; ``inf`` at B_L = 0."""
    bl = np.asarray(b_l, dtype=float)
    if np.any(bl < 0):
        raise DomainError("B_L must be non-negative")
    tt = config.symbols_total
    ref = crb_position(config, link, config.total_bandwidth, tt)
    safe = np.where(bl > 0, bl, 1.0)
    out = np.where(bl > 0, np.asarray(crb_position(config, link, safe, tt)) / ref, np.inf)
    return _as_float(out)


def crb_loss_freq_alt(b_l, link: LinkState, config: SystemConfig):
    """Diagnostic: the closed-form frequency-domain ratio with its alternative constants.

    Differs from :func:`crb_loss_freq` by a constant factor on the ToA term;
    reported for comparison only.
    """
    bl = np.asarray(b_l, dtype=float)
    n = config.n_antennas
    aoa = (
        3.0 * link.toa**2 * config.wavelength**2
        / (config.antenna_spacing**2 * math.cos(config.theta) ** 2 * (n - 1) * (2 * n - 1))
    )
    s = 1.0 + config.waveform_coeff
    with np.errstate(divide="ignore"):
        num = aoa + 12.0 / (2.0 * bl**2 * s)
    return _as_float(num / (aoa + 12.0 / (2.0 * config.total_bandwidth**2 * s)))


def crb_loss_from_freq_loss(loss, link: LinkState, config: SystemConfig):
    return crb_loss_freq(bandwidth_from_capacity_loss(loss, link, config), link, config)


def allocation_units(domain: Domain, config: SystemConfig, grid: int | None = None) -> np.ndarray:
    """Allocation sizes on the resource grid, in symbols (time) or Hz (frequency).

    Whole resource elements only; both the empty and the full allocation are
    excluded. ``grid`` picks that many evenly spread units, or all of them
    when ``None`` or larger than what fits.
    """
    domain = Domain(domain)
    if domain is Domain.TIME:
        step, k_max = 1.0, config.symbols_total - 1
    else:
        step = config.subcarrier_bandwidth
        k_max = config.n_resource_blocks
        if k_max * step >= config.total_bandwidth:
            k_max -= 1
    if grid is not None and grid < 2:
        raise DomainError("grid resolution must be at least 2 points")
    if grid is None or grid >= k_max:
        k = np.arange(1, k_max + 1)
    else:
        k = np.unique(np.rint(np.linspace(1, k_max, grid)).astype(int))
    return k * step


def sweep_frontier(
    domain: Domain, grid: int | None, link: LinkState, config: SystemConfig
) -> SweepResult:
    """Evaluate capacity, CRB and both losses along a resource sweep.

    Points come out ordered by allocation fraction. Time-domain capacity loss
    is the approximate form and may be negative at tiny allocations; such points
    carry ``warn_negative_loss``.
    """
    domain = Domain(domain)
    units = allocation_units(domain, config, grid)
    B = config.total_bandwidth
    tt = config.symbols_total
    if domain is Domain.TIME:
        capacity = np.asarray(capacity_approx_optimal(B, tt - units, link, tt))
        crb = np.asarray(crb_position(config, link, B, units))
        loss = np.asarray(capacity_loss_time(units, link, config).approx_form)
        crb_loss = np.asarray(crb_loss_time(units, config))
        fraction = units / tt
        splits = [ResourceSplit(domain, tau_l=float(u)) for u in units]
    else:
        capacity = np.asarray(capacity_approx_optimal(B - units, tt, link, tt))
        crb = np.asarray(crb_position(config, link, units, tt))
        loss = np.asarray(capacity_loss_freq(units, link, config))
        crb_loss = np.asarray(crb_loss_freq(units, link, config))
        fraction = units / B
        splits = [ResourceSplit(domain, b_l=float(u)) for u in units]
    points = [
        TradeoffPoint(
            split=s,
            alloc_fraction=float(f),
            capacity=float(c),
            crb=float(r),
            capacity_loss=float(lc),
            crb_loss=float(rl),
            warn_negative_loss=bool(lc < 0),
        )
        for s, f, c, r, lc, rl in zip(splits, fraction, capacity, crb, loss, crb_loss)
    ]
    meta = {
        "n_antennas": config.n_antennas,
        "distance_m": link.distance,
        "gamma": link.gamma,
        "epsilon_mode": config.epsilon_mode.value,
        "max_capacity": total_capacity(link, config),
        "min_crb": crb_position(config, link, B, tt),
    }
    return SweepResult(domain=domain, points=points, metadata=meta)


@dataclass(frozen=True)
class DominanceSummary:
    """Which domain reaches the lower CRB loss along a shared capacity-loss grid."""

    capacity_loss: np.ndarray
    crb_loss_time: np.ndarray
    crb_loss_freq: np.ndarray
    freq_fraction: float
    time_fraction: float
    crossover: float | None


def frontier_dominance(link: LinkState, config: SystemConfig, n_points: int = 200) -> DominanceSummary:
    """Compare the two closed-form loss curves on a common capacity-loss grid.

    The grid runs up to the largest loss both domains can reach with whole
    resource elements.
    """
    t_max = float(capacity_loss_time(config.symbols_total - 1, link, config).approx_form)
    f_units = allocation_units(Domain.FREQUENCY, config)
    f_max = float(capacity_loss_freq(f_units[-1], link, config))
    upper = min(t_max, f_max)
    lc = np.linspace(upper / n_points, upper, n_points)
    lt = np.asarray(crb_loss_from_time_loss(lc, link, config))
    lf = np.asarray(crb_loss_from_freq_loss(lc, link, config))
    freq_better = lf < lt
    flips = np.nonzero(np.diff(freq_better.astype(int)))[0]
    crossover = float(lc[flips[0] + 1]) if flips.size else None
    return DominanceSummary(
        capacity_loss=lc,
        crb_loss_time=lt,
        crb_loss_freq=lf,
        freq_fraction=float(np.mean(freq_better)),
        time_fraction=float(np.mean(lt < lf)),
        crossover=crossover,
    )
