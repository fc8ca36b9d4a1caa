"""Replayable source of the per-step vertex picks shared by both model versions."""

from __future__ import annotations

import numpy as np

# Fixed block length; part of the stream definition, changing it changes every run.
BLOCK = 4096


class ChoiceStream:
    """Deterministic sequence of (duplicate, delete) picks.

    At step ``n`` (1-based) both picks are uniform on the ``n`` old vertices
    ``0..n-1``, independent and drawn with replacement. Picks are generated
    in fixed blocks from a PCG64 generator so that a seed fully determines
    the stream, no matter how the caller consumes it.
    """

    def __init__(self, seed: int):
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._rng = np.random.Generator(np.random.PCG64(seed))
        self.step = 0  # number of picks handed out so far
        self._us: list[int] = []
        self._vs: list[int] = []
        self._pos = 0

    def _refill(self) -> None:
        first = self.step + 1
        highs = np.arange(first, first + BLOCK, dtype=np.int64)
        self._us = self._rng.integers(0, highs).tolist()
        self._vs = self._rng.integers(0, highs).tolist()
        self._pos = 0

    def __iter__(self):
        return self

    def __next__(self) -> tuple[int, int]:
        if self._pos == len(self._us):
            self._refill()
        i = self._pos
        self._pos = i + 1
        self.step += 1
        return self._us[i], self._vs[i]

    def take(self, count: int) -> list[tuple[int, int]]:
        return [next(self) for _ in range(count)]


class ScriptedStream:
    """Stream replaying an explicit list of picks; used for enumeration and tests."""

    def __init__(self, picks):
        self.seed = None
        self._picks = list(picks)
        self.step = 0

    def __iter__(self):
        return self

    def __next__(self) -> tuple[int, int]:
        if self.step >= len(self._picks):
            raise StopIteration
        u, v = self._picks[self.step]
        self.step += 1
        if not (0 <= u < self.step and 0 <= v < self.step):
            raise ValueError(f"pick {(u, v)} at step {self.step} is not an old vertex")
        return u, v
