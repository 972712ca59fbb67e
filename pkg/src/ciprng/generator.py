"""The chaotic-iteration generator.

One round draws a bit b from the first source, then performs m = b + k
single-coordinate updates, each picking a coordinate S in [1, N] from the
second source and replacing coordinate S of the state with coordinate S
of f(state).  The state after the m updates is the round output.

A numba-compiled bulk path handles long runs when both sources are
xorshift; it reproduces the pure-Python round loop bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitops
from .func import VectorOfImages
from .sources import EntropySource, Xorshift64

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None


@dataclass(frozen=True)
class GeneratorConfig:
    """Round parameters: iteration function, round-length base k, seed state.

    Strict mode requires k > 3N, the regime in which round outputs
    decorrelate from the seed; compat mode admits any k >= 1 so that
    short known traces can be reproduced.
    """

    f: VectorOfImages
    k: int
    seed_state: int
    strict: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.strict and self.k <= 3 * self.f.n_bits:
            raise ValueError(
                f"strict mode requires k > 3N = {3 * self.f.n_bits}, got k={self.k}; "
                "pass strict=False to allow small k"
            )
        if not 0 <= self.seed_state < self.f.size:
            raise ValueError(
                f"seed_state {self.seed_state} outside [0, {self.f.size - 1}]"
            )


class CiGenerator:
    """Mutable generator state: current state x plus the two sources.

    Single-owner: not safe for concurrent mutation.  Independent
    instances are cheap and run in parallel freely.
    """

    def __init__(self, config: GeneratorConfig, prng1: EntropySource, prng2: EntropySource):
        self.config = config
        self.x = config.seed_state
        self.prng1 = prng1
        self.prng2 = prng2
        self.rounds_emitted = 0
        self._images = np.asarray(config.f.images, dtype=np.int64)

    def round(self) -> int:
        """Run one round (m = bit + k updates) and return the new state."""
        f = self.config.f
        n = f.n_bits
        images = f.images
        x = self.x
        m = self.prng1.next_bit() + self.config.k
        for _ in range(m):
            s = self.prng2.next_coordinate(n)
            w = 1 << (n - s)
            x = (x & ~w) | (images[x] & w)
        self.x = x
        self.rounds_emitted += 1
        return x

    def states(self, n_rounds: int) -> np.ndarray:
        """Outputs of the next n_rounds rounds, in order."""
        if n_rounds < 1:
            raise ValueError(f"n_rounds must be >= 1, got {n_rounds}")
        if (
            _numba is not None
            and type(self.prng1) is Xorshift64
            and type(self.prng2) is Xorshift64
        ):
            out = np.empty(n_rounds, dtype=np.int64)
            x, s1, s2 = _bulk_rounds(
                self._images,
                self.config.f.n_bits,
                self.config.k,
                self.x,
                np.uint64(self.prng1.state),
                np.uint64(self.prng2.state),
                out,
            )
            self.x = int(x)
            self.prng1.state = int(s1)
            self.prng2.state = int(s2)
            self.rounds_emitted += n_rounds
            return out
        return np.array([self.round() for _ in range(n_rounds)], dtype=np.int64)

    def bit_stream(self, n_rounds: int, include_seed: bool = False) -> str:
        """Big-endian bit patterns of n_rounds round outputs, concatenated.

        With include_seed the state as of this call (the seed, for a
        fresh generator) is prepended.
        """
        n = self.config.f.n_bits
        head = [self.x] if include_seed else []
        states = np.concatenate([np.array(head, dtype=np.int64), self.states(n_rounds)])
        return bitops.bits_to_str(bitops.state_bits(states, n))

    def byte_stream(self, n_bytes: int) -> bytes:
        """Round-output bits (no seed) packed MSB-first into exactly n_bytes."""
        if n_bytes < 1:
            raise ValueError(f"n_bytes must be >= 1, got {n_bytes}")
        n = self.config.f.n_bits
        n_rounds = -(-8 * n_bytes // n)  # ceil: enough rounds, tail bits dropped
        bits = bitops.state_bits(self.states(n_rounds), n)
        return bitops.pack_bits(bits[: 8 * n_bytes])


if _numba is not None:
    @_numba.njit(cache=True)
    def _bulk_rounds(images, n_bits, k, x, s1, s2, out):  # pragma: no cover - jitted
        one = np.uint64(1)
        for r in range(out.shape[0]):
            s1 ^= s1 << np.uint64(13)
            s1 ^= s1 >> np.uint64(7)
            s1 ^= s1 << np.uint64(17)
            m = k + np.int64(s1 & one)
            for _ in range(m):
                s2 ^= s2 << np.uint64(13)
                s2 ^= s2 >> np.uint64(7)
                s2 ^= s2 << np.uint64(17)
                coord = np.int64(s2 % np.uint64(n_bits))
                w = np.int64(1) << (n_bits - 1 - coord)
                x = (x & ~w) | (images[x] & w)
            out[r] = x
        return x, s1, s2
