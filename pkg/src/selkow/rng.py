"""Deterministic, platform-independent random orderings.

The generator is SplitMix64 (Steele, Lea & Flood 2014) on unbounded Python
ints masked to 64 bits. Trial ``i`` under master seed ``s`` is seeded with the
``(i+1)``-th SplitMix64 output of ``s``, obtained by a direct jump, so every
trial's stream is independent of how trials are scheduled. Permutations come
from a Fisher-Yates shuffle whose bounded draws use rejection sampling, so
they carry no modulo bias.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

DEFAULT_SEED = 12345


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(seed: int, index: int) -> int:
    return mix64(seed + (index + 1) * GOLDEN_GAMMA)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        if k < 1:
            raise ValueError(f"empty range [0, {k})")
        limit = (1 << 64) - (1 << 64) % k
        while True:
            x = self.next()
            if x < limit:
                return x % k

    def permutation(self, n: int) -> list[int]:
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
