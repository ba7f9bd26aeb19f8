"""Seedable uniform random stream with draw accounting.

Backed by numpy's PCG64 bit generator (period 2^128, published reference
implementation), so a 64-bit seed pins the entire uniform sequence bit-exactly
across runs and platforms.  Draws are buffered in blocks; numpy fills blocks
with the same values a sequence of single draws would produce, so buffering
never changes the stream.

The consumed-draw counter exists so simulations can prove they use a fixed,
path-independent number of draws.
"""

from __future__ import annotations

import numpy as np

_BLOCK = 4096


class RngStream:
    """Counted stream of uniforms in [0, 1) from a 64-bit seed."""

    __slots__ = ("seed", "n_draws", "_gen", "_buf", "_pos")

    def __init__(self, seed: int):
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ValueError(f"seed must be an integer (got {seed!r})")
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits (got {seed})")
        self.seed = seed
        self.n_draws = 0
        self._gen = np.random.Generator(np.random.PCG64(seed))
        self._buf: list[float] = []
        self._pos = 0

    def uniform(self) -> float:
        """Next uniform draw in [0, 1); advances the stream by exactly one."""
        if self._pos >= len(self._buf):
            self._buf = self._gen.random(_BLOCK).tolist()
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        self.n_draws += 1
        return u

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, n_draws={self.n_draws})"
