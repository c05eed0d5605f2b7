"""Deterministic 64-bit PRNG for reproducible randomized constructions.

The generator is SplitMix64 (Steele, Lea & Flood's mix from the Java 8
SplittableRandom), chosen because it is tiny, fully specified, and
trivially reproducible across languages:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB  mod 2^64
    output: z XOR (z >> 31)

Independent streams: stream i of master seed s is SplitMix64 seeded with
mix64(s XOR (i+1) * 0x9E3779B97F4A7C15), where mix64 is the output
scrambler above applied once.  `randrange` uses rejection sampling on
raw 64-bit words, so small-range draws are exactly uniform.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output scrambler on one 64-bit word."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 sequence generator over a 64-bit state."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        return mix64(self.state)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), exact via rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def sample(self, seq, m: int) -> list:
        """m distinct items from seq via a partial Fisher-Yates shuffle."""
        pool = list(seq)
        if m > len(pool):
            raise ValueError("sample larger than population")
        for i in range(m):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:m]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def stream(seed: int, index: int) -> SplitMix64:
    """Independent generator number `index` derived from a master seed."""
    return SplitMix64(mix64((seed ^ ((index + 1) * _GOLDEN & _MASK)) & _MASK))
