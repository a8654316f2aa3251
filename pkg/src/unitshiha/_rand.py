"""Deterministic RNG stream derivation.

Independent streams are derived as ``SeedSequence((seed, *key))`` so that a
(seed, key) pair always maps to the same stream regardless of how many other
streams were created before it.  This keeps bootstrap resamples and
simulation replicates order-insensitive and safe to run concurrently.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream"]


def _entropy_ints(seed) -> tuple[int, ...]:
    if seed is None:
        # one-off nondeterministic master entropy
        return (int(np.random.SeedSequence().entropy),)
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    if isinstance(seed, (tuple, list)):
        out: list[int] = []
        for part in seed:
            out.extend(_entropy_ints(part))
        return tuple(out)
    raise TypeError(f"seed must be an int, tuple of ints, or None, not {type(seed)!r}")


def stream(seed, *key: int) -> np.random.Generator:
    """Return the generator for ``(seed, *key)``.

    Pass-through: if ``seed`` is already a Generator the key is ignored and
    the generator is returned as-is (caller manages its state).
    """
    if isinstance(seed, np.random.Generator):
        return seed
    entropy = _entropy_ints(seed) + tuple(int(k) for k in key)
    return np.random.default_rng(np.random.SeedSequence(entropy))
