"""Deterministic derivation of independent integer seeds.

Every piece of randomness in the package flows from one caller-supplied
base seed. Sub-seeds are keyed by a path of integers and short string tags
(replication number, purpose like "design" or "noise", column index), so
results never depend on evaluation order, worker count, or scheduling.
Consumers turn the derived integer into a stream with
``numpy.random.default_rng(seed)``.
"""

from __future__ import annotations

import zlib

import numpy as np

from .errors import InvalidInput


def _encode(part) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    part = int(part)
    if part < 0:
        raise InvalidInput(f"seed path entries must be non-negative, got {part}")
    return part


def derived_seed(*path) -> int:
    """Collapse a path of ints and string tags to one integer seed.

    Distinct paths give independent, reproducible seeds. Anything computed
    inside a batch (one column of a scoring run, one replication of a
    simulation) can be reproduced in isolation by rebuilding its path.
    """
    if not path:
        raise InvalidInput("seed path must not be empty")
    entropy = tuple(_encode(p) for p in path)
    state = np.random.SeedSequence(entropy=entropy).generate_state(2, np.uint64)
    return int(state[0] ^ (state[1] << 1)) % (1 << 63)


def column_tie_seed(tie_seed: int, column: int) -> int:
    """Tie-break seed used for one predictor column of a scoring batch."""
    return derived_seed(tie_seed, "column", column)
