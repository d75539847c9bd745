"""Soibelman representations at fixed q and their q -> 0 limits on truncated spaces."""
from .pipelines import (Layout, PerLeg, Soibelman, compare_pipelines, pi0_global, pi0_per_leg, psi_q,
                        scaled_generator)

__all__ = ["Layout", "PerLeg", "Soibelman", "compare_pipelines", "pi0_global", "pi0_per_leg", "psi_q",
           "scaled_generator"]
