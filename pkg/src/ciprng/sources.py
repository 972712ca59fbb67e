"""Entropy sources feeding the generator.

Two kinds: a 64-bit xorshift used in production, and a scripted replay
source that plays back a fixed list of values for reproducing known
traces in tests.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ScriptExhaustedError

_MASK64 = (1 << 64) - 1

# arbitrary documented nonzero defaults (golden-ratio and Weyl-type words)
DEFAULT_BIT_SEED = 0x9E3779B97F4A7C15
DEFAULT_COORD_SEED = 0xD1B54A32D192ED03


class EntropySource:
    """Minimal source interface: a bit stream and a coordinate stream."""

    kind: str

    def next_bit(self) -> int:
        raise NotImplementedError

    def next_coordinate(self, n_bits: int) -> int:
        raise NotImplementedError


class Xorshift64(EntropySource):
    """Marsaglia's 64-bit xorshift with shift triple (13, 7, 17): left, right, left.

    The state is a nonzero 64-bit word and stays nonzero forever (each
    step is a bijection on nonzero states).  Bits are taken from the low
    bit of each word; coordinates as (word mod N) + 1, accepting the
    negligible modulo bias for N <= 16.
    """

    kind = "xorshift"

    def __init__(self, seed: int = DEFAULT_BIT_SEED):
        if not 0 < seed <= _MASK64:
            raise ValueError(f"seed must be a nonzero 64-bit value, got {seed}")
        self.state = seed

    def next_word(self) -> int:
        x = self.state
        x ^= (x << 13) & _MASK64
        x ^= x >> 7
        x ^= (x << 17) & _MASK64
        self.state = x
        return x

    def next_bit(self) -> int:
        return self.next_word() & 1

    def next_coordinate(self, n_bits: int) -> int:
        if n_bits < 2:
            raise ValueError(f"n_bits must be >= 2, got {n_bits}")
        return (self.next_word() % n_bits) + 1


class ScriptedSource(EntropySource):
    """Replays a fixed sequence of integers.

    Raises ScriptExhaustedError when the script runs out, unless `cycle`
    was set, in which case it wraps around.
    """

    kind = "scripted"

    def __init__(self, values: Sequence[int], cycle: bool = False):
        self.values = tuple(int(v) for v in values)
        self.cycle = cycle
        self.cursor = 0

    def _next(self) -> int:
        if self.cursor >= len(self.values):
            if not self.cycle or not self.values:
                raise ScriptExhaustedError(
                    f"script exhausted after {len(self.values)} values"
                )
            self.cursor = 0
        v = self.values[self.cursor]
        self.cursor += 1
        return v

    def next_bit(self) -> int:
        v = self._next()
        if v not in (0, 1):
            raise ValueError(f"scripted bit source produced {v}, expected 0 or 1")
        return v

    def next_coordinate(self, n_bits: int) -> int:
        if n_bits < 2:
            raise ValueError(f"n_bits must be >= 2, got {n_bits}")
        v = self._next()
        if not 1 <= v <= n_bits:
            raise ValueError(f"scripted coordinate {v} outside [1, {n_bits}]")
        return v


def parse_seed(text: str) -> int:
    """Parse a decimal or 0x-prefixed hexadecimal 64-bit seed."""
    value = int(text, 0)
    if not 0 < value <= _MASK64:
        raise ValueError(f"seed must be a nonzero 64-bit value, got {text!r}")
    return value


def parse_script(text: str) -> list[int]:
    """Parse a comma-separated integer list, e.g. "2,4,2,3"."""
    items = [part.strip() for part in text.split(",") if part.strip()]
    if not items:
        raise ValueError("empty script")
    return [int(part, 0) for part in items]
