"""Deterministic pseudo-random numbers for seeded checks.

Python's ``random`` module is stable in practice, but byte-identical reports
are a hard requirement here, so we keep our own tiny splitmix64 generator.
Every randomized routine takes an explicit 64-bit seed; per-trial streams are
derived as ``DetRng(seed).fork(trial_index)`` so trials are order independent.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class DetRng:
    """Splitmix64 stream with the few draw shapes the package needs."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state, out = _splitmix64(self._state)
        return out

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], endpoints included."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        # rejection sampling keeps the distribution exact
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + (x % span)

    def nonzero_int(self, bound: int) -> int:
        """Uniform nonzero integer in [-bound, bound]."""
        while True:
            x = self.randint(-bound, bound)
            if x != 0:
                return x

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def fork(self, index: int) -> "DetRng":
        """Independent substream for trial ``index`` (schedule independent)."""
        child = DetRng(0)
        child._state = (self._state ^ ((index + 1) * 0xD1B54A32D192ED03)) & _MASK
        child.next_u64()
        return child
