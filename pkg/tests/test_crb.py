import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ilac import DomainError, SystemConfig, build_link
from ilac.crb import crb_aoa, crb_position, crb_toa, estimate_position
from ilac.link import SPEED_OF_LIGHT

B = 20e6


@pytest.fixture
def setup():
    cfg = SystemConfig(n_antennas=8)
    return cfg, build_link(cfg, 100.0, gamma_db=20.0)


def test_frozen_aoa(setup):
    cfg, link = setup
    # 3 / (pi^2 * 100 * 8*7*15 * 200) with d = lambda/2
    assert crb_aoa(cfg, link, 200) == pytest.approx(1.809306850756031633e-8, rel=1e-13)


def test_frozen_toa(setup):
    cfg, link = setup
    assert crb_toa(cfg, link, B, 200) == pytest.approx(2.968394052021614398e-22, rel=1e-13)


def test_frozen_position(setup):
    cfg, link = setup
    assert crb_position(cfg, link, B, 200) == pytest.approx(2.076092803434630874e-4, rel=1e-13)


def test_aoa_scalings(setup):
    cfg, link = setup
    assert crb_aoa(cfg, link, 400) == pytest.approx(crb_aoa(cfg, link, 200) / 2, rel=1e-15)
    louder = build_link(cfg, 100.0, gamma_db=20.0 + 10 * math.log10(2))
    assert crb_aoa(cfg, louder, 200) == pytest.approx(crb_aoa(cfg, link, 200) / 2, rel=1e-12)


def test_toa_scalings(setup):
    cfg, link = setup
    assert crb_toa(cfg, link, 2 * B, 200) == pytest.approx(crb_toa(cfg, link, B, 200) / 4, rel=1e-15)
    flat = SystemConfig(n_antennas=8, waveform_coeff=0.0)
    assert crb_toa(cfg, link, B, 200) == pytest.approx(crb_toa(flat, link, B, 200) / 2, rel=1e-15)


def test_position_without_range_is_toa_only(setup):
    cfg, link = setup
    import dataclasses

    at_anchor = dataclasses.replace(link, toa=0.0)
    assert crb_position(cfg, at_anchor, B, 200) == SPEED_OF_LIGHT**2 * crb_toa(cfg, link, B, 200)


@pytest.mark.parametrize("k", [2.0, 3.5, 10.0])
def test_position_symbol_ratio(setup, k):
    cfg, link = setup
    assert crb_position(cfg, link, B, 20) / crb_position(cfg, link, B, 20 * k) == pytest.approx(k, rel=1e-12)


def test_position_decreasing_in_every_resource(setup):
    cfg, link = setup
    taus = np.arange(1, 201)
    assert np.all(np.diff(crb_position(cfg, link, B, taus)) < 0)
    bws = np.linspace(180e3, B, 50)
    assert np.all(np.diff(crb_position(cfg, link, bws, 200)) < 0)
    values = [crb_position(SystemConfig(n_antennas=n), link, B, 200) for n in range(2, 40)]
    assert np.all(np.diff(values) < 0)
    gammas = [build_link(cfg, 100.0, g) for g in np.linspace(0, 40, 20)]
    assert np.all(np.diff([crb_position(cfg, l, B, 200) for l in gammas]) < 0)


def test_domain_errors(setup):
    cfg, link = setup
    with pytest.raises(DomainError):
        crb_toa(cfg, link, 0.0, 200)
    with pytest.raises(DomainError):
        crb_aoa(cfg, link, 0.0)


def test_estimate_position_axes():
    d = 123.4
    assert estimate_position((1.0, 2.0), 0.0, d / SPEED_OF_LIGHT) == pytest.approx((1.0 + d, 2.0), rel=1e-15)
    assert estimate_position((1.0, 2.0), 0.3, 0.0) == (1.0, 2.0)
    x, y = estimate_position((0.0, 0.0), math.pi / 2, d / SPEED_OF_LIGHT)
    assert abs(x) < 1e-9 * d and y == pytest.approx(d, rel=1e-15)
    with pytest.raises(DomainError):
        estimate_position((0.0, 0.0), 0.0, -1.0)


@given(
    st.floats(-1e4, 1e4), st.floats(-1e4, 1e4),
    st.floats(-math.pi, math.pi), st.floats(1e-9, 1e-4),
)
def test_estimate_position_range(x0, y0, theta, t):
    x, y = estimate_position((x0, y0), theta, t)
    assert math.hypot(x - x0, y - y0) == pytest.approx(SPEED_OF_LIGHT * t, rel=1e-9)
