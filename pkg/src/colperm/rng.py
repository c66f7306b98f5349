"""Reproducible random streams keyed by (seed, stream id)."""

from __future__ import annotations

import numpy as np


def stream(seed: int, stream_id: int = 0) -> np.random.Generator:
    """Counter-based Philox generator; distinct stream ids give independent streams."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream_id),))
    return np.random.Generator(np.random.Philox(ss))
