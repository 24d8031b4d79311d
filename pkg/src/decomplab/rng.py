"""Deterministic RNG (splitmix64) so results are stable across platforms.

Python's random module would work, but its generator is a documented
implementation detail of CPython; the point here is that a seed committed in
a test or a catalog reproduces the same bytes anywhere, so the generator is
pinned down to a dozen lines of integer arithmetic.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n):
        """Uniform-ish integer in [0, n); modulo bias is negligible for small n."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
