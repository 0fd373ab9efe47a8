"""Seed derivation and a buffered scalar stream over numpy's PCG64."""

from __future__ import annotations

import numpy as np

_BLOCK = 4096


def make_rng(seed: int | None, *salt: int) -> np.random.Generator:
    """Generator seeded from ``seed`` plus optional integer salt words."""
    if seed is None:
        return np.random.default_rng()
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), *salt]))


class UniformStream:
    """Scalar uniforms drawn from ``rng`` in blocks; much cheaper than
    per-call ``rng.random()`` in tight Python loops."""

    __slots__ = ("_rng", "_buf", "_i")

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self._buf: list[float] = []
        self._i = 0

    def random(self) -> float:
        if self._i >= len(self._buf):
            self._buf = self._rng.random(_BLOCK).tolist()
            self._i = 0
        x = self._buf[self._i]
        self._i += 1
        return x

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        i = int(self.random() * k)
        return i if i < k else k - 1
