"""Deterministic 64-bit random number generation.

Every random draw in this package (data transforms, splits, parameter
initialization, audit sampling) comes from the xorshift64* generator below so
that seeded runs reproduce bit-for-bit on any platform. The constants are
fixed and part of the on-disk reproducibility contract:

* state update: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` (mod 2^64)
* output: ``x * 0x2545F4914F6CDD1D`` (mod 2^64)
* seeding: one splitmix64 step (``gamma = 0x9E3779B97F4A7C15``,
  mix constants ``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB``) so that a
  zero seed still yields a nonzero state
* doubles: ``(output >> 11) * 2**-53`` giving uniforms in [0, 1)
* child streams: ``child(i)`` reseeds with ``splitmix64(seed + (i+1)*gamma)``
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STAR = 0x2545F4914F6CDD1D


def splitmix64(x: int) -> int:
    """One splitmix64 step: advance by the golden gamma and mix."""
    x = (x + _GAMMA) & MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


class Xorshift64Star:
    """Small, fast, platform-independent PRNG (xorshift64*)."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        state = splitmix64(self.seed)
        # Zero is a fixed point of the xorshift transitions.
        self._state = state if state != 0 else _GAMMA

    def u64(self) -> int:
        """Next raw 64-bit output."""
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * _STAR) & MASK64

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """Uniform double in [lo, hi)."""
        return lo + (hi - lo) * ((self.u64() >> 11) * 2.0 ** -53)

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.u64()
            if x < limit:
                return x % n

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates shuffle of range(n)."""
        out = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randbelow(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def uniforms(self, count: int, lo: float = 0.0, hi: float = 1.0) -> list[float]:
        """A list of independent uniform doubles in [lo, hi)."""
        return [self.uniform(lo, hi) for _ in range(count)]

    def child(self, index: int) -> "Xorshift64Star":
        """Independent stream for a sub-task (e.g. per-image draws).

        Children depend only on (seed, index), so parallel per-index work
        reproduces the serial order.
        """
        return Xorshift64Star(splitmix64((self.seed + (index + 1) * _GAMMA) & MASK64))
