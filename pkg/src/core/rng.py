"""Deterministic random streams for Monte Carlo realizations.

Every random draw is keyed by (seed, realization, purpose), so results never
depend on the order in which realizations are evaluated.
"""

from enum import IntEnum

import numpy as np


class Purpose(IntEnum):
    """What a random stream is used for."""

    CLUSTERS = 0
    RAY_PHASES = 1
    RIS_PHASES = 2


def stream(seed: int, realization: int, purpose: Purpose) -> np.random.Generator:
    """
    Get the generator for one draw purpose of one realization.

    Args:
        seed: Scenario seed
        realization: Monte Carlo realization index (>= 0)
        purpose: Draw purpose

    Returns:
        Independent numpy generator
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(int(realization), int(purpose)))
    return np.random.default_rng(sequence)
