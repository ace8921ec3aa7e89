import pytest

from ilac import SystemConfig, build_link, distance_for_gamma

SCENARIO_GRID = [(n, g) for n in (8, 32) for g in (10.0, 20.0, 30.0)]


def scenario_link(n_antennas=8, gamma_db=20.0, **overrides):
    cfg = SystemConfig(n_antennas=n_antennas, **overrides)
    return build_link(cfg, distance_for_gamma(cfg, gamma_db), gamma_db), cfg


@pytest.fixture
def config():
    return SystemConfig()


@pytest.fixture
def link20(config):
    return build_link(config, distance_for_gamma(config, 20.0), 20.0)


@pytest.fixture(params=SCENARIO_GRID, ids=lambda p: f"N{p[0]}-{p[1]:g}dB")
def grid_case(request):
    n, g = request.param
    return scenario_link(n, g)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
