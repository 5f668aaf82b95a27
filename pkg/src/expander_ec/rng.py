"""Seeded split-mix generator so every randomized run is reproducible."""

from __future__ import annotations

__all__ = ["SplitMix"]

_MASK = (1 << 64) - 1


class SplitMix:
    """64-bit split-mix sequence with the usual golden-ratio increment.

    State advances by 0x9E3779B97F4A7C15 per draw and each output is
    finalized with two xor-shift multiplies, so distinct seeds give
    independent-looking streams and the same seed replays exactly.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform draw from [0, n) by rejection below the largest multiple."""
        if n <= 0:
            raise ValueError("empty range")
        limit = _MASK + 1 - ((_MASK + 1) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def bitstring(self, n: int) -> int:
        """n uniform random bits packed into an int."""
        out = 0
        filled = 0
        while filled < n:
            out |= self.next_u64() << filled
            filled += 64
        return out & ((1 << n) - 1)

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.randrange(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def sample_ids(self, n: int, k: int) -> list[int]:
        """k distinct ids from range(n), sorted; sparse partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError("bad sample size")
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.randrange(n - i)
            vi = swapped.get(i, i)
            vj = swapped.get(j, j)
            out.append(vj)
            swapped[j] = vi
        out.sort()
        return out
