"""SplitMix64, a tiny seedable generator with a fixed, portable output stream."""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


class SplitMix64:
    """Sebastiano Vigna's SplitMix64.

    The state advances by the golden-ratio increment and each output is the
    standard two-multiply finalizer, so a given seed produces the same stream
    in any language that implements it.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def uniform_array(self, low: float, high: float, shape) -> np.ndarray:
        """Row-major fill, one draw per entry."""
        size = int(np.prod(shape))
        return np.array([self.uniform(low, high) for _ in range(size)]).reshape(shape)

    def randbelow(self, n: int) -> int:
        return self.next_u64() % n

    def spawn(self) -> "SplitMix64":
        """Child generator seeded from the next output of this one."""
        return SplitMix64(self.next_u64())
