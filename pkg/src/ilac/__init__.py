"""Analytical performance model of an integrated localization and communication link."""
from .link import (
    ConfigError,
    DomainError,
    EpsilonMode,
    LinkState,
    SystemConfig,
    build_link,
    distance_for_gamma,
    free_space_beta,
    linear_to_db,
    snr_db_to_linear,
)

__version__ = "0.1.0"
