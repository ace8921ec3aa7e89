"""Exit criteria, one test each; every test records a PASS/FAIL line.

The lines are printed in the pytest terminal summary, or directly when this
file is run as a script.
"""
import dataclasses
import math

import numpy as np
import pytest

from ilac import SystemConfig, build_link, distance_for_gamma
from ilac import cli
from ilac.capacity import capacity_approx, log_lower_bound, optimal_pilot
from ilac.crb import crb_position, crb_toa
from ilac.oracle import dominance_with_fallback
from ilac.tradeoff import (
    bandwidth_from_capacity_loss,
    capacity_loss_freq,
    capacity_loss_time,
    crb_loss_freq,
    crb_loss_time,
    tau_l_from_capacity_loss,
    crb_loss_from_time_loss,
    crb_loss_from_freq_loss,
    total_capacity,
)
from conftest import ACCEPTANCE_LINES

GRID = [(n, g) for n in (8, 32) for g in (10.0, 20.0, 30.0)]


def scenario(n, gamma_db, **kw):
    cfg = SystemConfig(n_antennas=n, **kw)
    return build_link(cfg, distance_for_gamma(cfg, gamma_db), gamma_db), cfg


def record(name, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


def rel_err(got, expected):
    got, expected = np.asarray(got, float), np.asarray(expected, float)
    return np.abs(got - expected) / np.maximum(np.abs(expected), 1e-30)


def test_time_loss_roundtrip():
    worst = 0.0
    for n, g in GRID:
        link, cfg = scenario(n, g)
        lc = np.linspace(0.0, float(capacity_loss_time(cfg.symbols_total - 1, link, cfg).approx_form), 100)
        err = rel_err(crb_loss_from_time_loss(lc, link, cfg), cfg.symbols_total / tau_l_from_capacity_loss(lc, link, cfg))
        worst = max(worst, float(err.max()))
    record("time-domain loss roundtrip", worst <= 1e-9, f"max rel err {worst:.2e} (tol 1e-9, 6 scenarios x 100 L_C)")


def test_freq_loss_roundtrip():
    worst = 0.0
    for n, g in GRID:
        link, cfg = scenario(n, g)
        total = total_capacity(link, cfg)
        lc = np.linspace(total / 100, total * 0.99, 100)
        composed = crb_loss_freq(bandwidth_from_capacity_loss(lc, link, cfg), link, cfg)
        worst = max(worst, float(rel_err(crb_loss_from_freq_loss(lc, link, cfg), composed).max()))
        # the same identity reached from the allocation side
        b_l = np.linspace(cfg.total_bandwidth / 101, cfg.total_bandwidth * 100 / 101, 100)
        tt = cfg.symbols_total
        tp = optimal_pilot(tt, link)
        direct = np.array([
            capacity_approx(cfg.total_bandwidth, tt, tp, link, tt) - capacity_approx(cfg.total_bandwidth - b, tt, tp, link, tt)
            for b in b_l
        ])
        ratio = crb_position(cfg, link, b_l, tt) / crb_position(cfg, link, cfg.total_bandwidth, tt)
        worst = max(worst, float(rel_err(crb_loss_from_freq_loss(direct, link, cfg), ratio).max()))
    record("frequency-domain loss roundtrip", worst <= 1e-12, f"max rel err {worst:.2e} (tol 1e-12)")


def test_frequency_exactness():
    worst = 0.0
    for n, g in GRID:
        link, cfg = scenario(n, g)
        B, tt = cfg.total_bandwidth, cfg.symbols_total
        tp = optimal_pilot(tt, link)
        b_l = np.linspace(B / 51, B * 50 / 51, 50)
        direct = np.array([
            capacity_approx(B, tt, tp, link, tt) - capacity_approx(B - b, tt, tp, link, tt) for b in b_l
        ])
        worst = max(worst, float(rel_err(capacity_loss_freq(b_l, link, cfg), direct).max()))
    record("frequency-domain exactness", worst <= 1e-12, f"max rel err {worst:.2e} over 50 B_L (tol 1e-12)")


def test_time_bound_ordering():
    violations = 0
    for n, g in GRID:
        link, cfg = scenario(n, g)
        tt = cfg.symbols_total
        tau = np.arange(1, tt)
        tp_full = optimal_pilot(tt, link)
        full = capacity_approx(cfg.total_bandwidth, tt, tp_full, link, tt)
        exact = np.array([
            full - capacity_approx(cfg.total_bandwidth, tt - t, optimal_pilot(tt - t, link), link, tt)
            for t in tau
        ])
        approx = capacity_loss_time(tau, link, cfg).approx_form
        violations += int(np.sum(approx > exact))
    record("time-domain bound ordering", violations == 0, f"{violations} violations over tau_L = 1..199")


def test_log_inequality():
    axis = np.logspace(-4, 4, 100)
    x, x_bar = np.meshgrid(axis, axis)
    violations = int(np.sum(log_lower_bound(x, x_bar) > np.log1p(x) + 1e-12))
    diag = float(np.max(np.abs(log_lower_bound(axis, axis) - np.log1p(axis))))
    ok = violations == 0 and diag <= 1e-12
    record("log lower-bound audit", ok, f"{violations} violations in {x.size} pairs, diagonal err {diag:.1e}")


def test_pilot_optimality():
    bad = 0
    worst_fd = 0.0
    for n, g in GRID:
        link, cfg = scenario(n, g)
        for tc in (2, 5, 20, 50, 200):
            pilots = np.arange(1, tc)
            values = np.atleast_1d(capacity_approx(cfg.total_bandwidth, tc, pilots, link, cfg.symbols_total))
            best = int(pilots[np.argmax(values)])
            tp = optimal_pilot(tc, link)
            allowed = {min(max(f(tp), 1), tc - 1) for f in (math.floor, math.ceil)}
            bad += best not in allowed
            h = 1e-4 * min(tp, tc - tp)
            f = lambda p: capacity_approx(cfg.total_bandwidth, tc, p, link, cfg.symbols_total)
            worst_fd = max(worst_fd, abs((f(tp + h) - f(tp - h)) / (2 * h)) / abs(f(tp)))
    ok = bad == 0 and worst_fd < 1e-6
    record("pilot optimality", ok, f"{bad} argmax misses, max rel derivative {worst_fd:.1e} (tol 1e-6)")


def test_crb_scaling_laws():
    worst = 0.0
    for n, g in GRID:
        link, cfg = scenario(n, g)
        B, tt = cfg.total_bandwidth, cfg.symbols_total
        tau = np.arange(1, tt + 1, dtype=float)
        ratio = crb_position(cfg, link, B, tau) / crb_position(cfg, link, B, tt)
        worst = max(worst, float(rel_err(crb_loss_time(tau, cfg), tt / tau).max()))
        worst = max(worst, float(rel_err(crb_loss_time(tau, cfg), ratio).max()))
        worst = max(worst, float(rel_err(crb_position(cfg, link, B, 2 * tau), crb_position(cfg, link, B, tau) / 2).max()))
        louder = dataclasses.replace(link, gamma=2 * link.gamma)
        worst = max(worst, float(rel_err(crb_position(cfg, louder, B, tau), crb_position(cfg, link, B, tau) / 2).max()))
        b_l = np.arange(1, 112) * cfg.subcarrier_bandwidth
        worst = max(worst, float(rel_err(crb_toa(cfg, link, b_l, tt), crb_toa(cfg, link, B, tt) * (B / b_l) ** 2).max()))
    record("CRB scaling laws", worst <= 1e-12, f"max rel err {worst:.2e} (tol 1e-12)")


def test_qualitative_crossover():
    runs = dominance_with_fallback(SystemConfig())
    modes = ["literal_one", "dl_over_ul"][: len(runs)]
    detail = "; ".join(
        f"{m}: N_T=8/10dB freq {r.summary_a.freq_fraction:.0%}, N_T=32/30dB time {r.summary_b.time_fraction:.0%}"
        for m, r in zip(modes, runs)
    )
    ok = any(r.report.passed for r in runs)
    record("qualitative crossover", ok, detail + " (need >= 90% each)")


def test_frontier_determinism(tmp_path):
    paths = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        assert cli.main(["frontier", "--out", str(out)]) == 0
        paths.append(out / "frontier.csv")
    same = paths[0].read_bytes() == paths[1].read_bytes()
    record("frontier determinism", same, f"{len(paths[0].read_bytes())} bytes, identical={same}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
