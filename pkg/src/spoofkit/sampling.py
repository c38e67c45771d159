"""Deterministic 64-bit PRNG and selection helpers.

Every random choice in this package (manifest sampling, crop offsets,
augmentation draws) flows through :class:`SplitMix64` so that results are
bit-reproducible across platforms and Python versions, independent of the
interpreter's default RNG.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


class SplitMix64:
    """Splitmix-style 64-bit generator with a tiny, documented state."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return (z ^ (z >> 31)) & MASK64

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling (unbiased)."""
        if n <= 0:
            raise ValueError("randbelow requires n > 0")
        limit = MASK64 - (MASK64 % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randbelow(hi - lo + 1)

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform float in [lo, hi)."""
        return lo + (hi - lo) * (self.next_u64() / (MASK64 + 1))

    def sign(self) -> int:
        return 1 if self.next_u64() & 1 else -1


def derive_seed(seed: int, *words: int) -> int:
    """Derive a sub-seed from a base seed and a fixed tuple of words.

    The scheme (fold each word in, then advance one splitmix step) is part
    of the serialized-manifest contract: recorded seeds must reproduce the
    same selections on any platform.
    """
    state = seed & MASK64
    for w in words:
        state = SplitMix64(state ^ (w & MASK64)).next_u64()
    return state


def fnv1a64(text: str) -> int:
    """FNV-1a hash of a UTF-8 string; stable across runs and platforms."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & MASK64
    return h


def sample_without_replacement(items: Sequence[T], k: int, rng: SplitMix64) -> list[T]:
    """Select k items uniformly without replacement (partial Fisher-Yates).

    The caller is responsible for passing `items` in canonical order;
    selection depends only on that order and the rng state.
    """
    n = len(items)
    if k < 0 or k > n:
        raise ValueError(f"cannot sample {k} of {n} items")
    pool = list(items)
    for i in range(k):
        j = i + rng.randbelow(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def shuffled(items: Sequence[T], rng: SplitMix64) -> list[T]:
    """Full Fisher-Yates shuffle of a copy of `items`."""
    return sample_without_replacement(items, len(items), rng)
