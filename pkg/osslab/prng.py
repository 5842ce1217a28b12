"""Counter-based random streams keyed by ``(seed, index)``.

Each stream is an independent Philox generator whose 128-bit key packs the
seed and the stream index, so stream ``i`` never depends on how many draws
were taken from stream ``i - 1``.
"""

from __future__ import annotations

import logging
import os

import numpy as np

logger = logging.getLogger("osslab.prng")

SEED_ENV = "OSSLAB_SEED"
_MASK64 = (1 << 64) - 1


def default_seed() -> int:
    """Seed 0, unless ``OSSLAB_SEED`` says otherwise."""
    raw = os.environ.get(SEED_ENV, "")
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", SEED_ENV, raw)
        return 0


def stream(seed: int, index: int) -> np.random.Generator:
    """Generator for stream ``index`` under ``seed``."""
    key = ((index & _MASK64) << 64) | (seed & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))
