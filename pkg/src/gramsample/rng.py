"""Counter-based random streams keyed by ``(seed, stream_id)``.

Backed by numpy's Philox4x64 bit generator. Only the raw 64-bit outputs are
consumed (floats and bounded integers are derived here), so draw sequences do
not depend on numpy's higher-level distribution code.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_TWO_M53 = 2.0**-53


class RandomStream:
    """Reproducible random stream.

    Two streams built from the same ``(seed, stream_id)`` produce the same
    sequence on every platform. Concurrent trials should use distinct
    ``stream_id`` values (the trial index) rather than sharing one stream.
    """

    def __init__(self, seed=0, stream_id=0):
        self.seed = int(seed) & _MASK64
        self.stream_id = int(stream_id) & _MASK64
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._bitgen = np.random.Philox(key=key)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id})"

    def clone(self):
        """Independent copy positioned at the same point of the sequence."""
        other = RandomStream(self.seed, self.stream_id)
        other._bitgen.state = self._bitgen.state
        return other

    def raw(self, size):
        return self._bitgen.random_raw(size)

    def uniform(self, size):
        """Doubles in [0, 1) with 53 random bits each."""
        return (self.raw(size) >> np.uint64(11)).astype(np.float64) * _TWO_M53

    def below(self, n):
        """Uniform integer in ``range(n)`` by rejection on 64-bit outputs."""
        if n < 1:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = int(self._bitgen.random_raw())
            if x < limit:
                return x % n

    def generator(self):
        """numpy Generator sharing this stream's bit generator (used for Gaussians)."""
        return np.random.Generator(self._bitgen)
