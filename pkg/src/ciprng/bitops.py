"""Bit-sequence helpers shared by the generator, the test battery, and the CLI."""

from __future__ import annotations

import numpy as np


def as_bit_array(bits) -> np.ndarray:
    """Normalize a bit sequence to a uint8 array of 0/1 values.

    Accepts a '0'/'1' string, a sequence of 0/1 integers, or a numpy
    array.  Packed bytes are not auto-detected; use `unpack_bits` first.
    """
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    elif isinstance(bits, (bytes, bytearray)):
        raise TypeError("raw bytes are ambiguous here; unpack_bits() them first")
    else:
        arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError(f"expected a flat bit sequence, got shape {arr.shape}")
    if arr.size and arr.max() > 1:
        raise ValueError("bit sequence contains values other than 0 and 1")
    return arr


def bits_to_str(bits) -> str:
    arr = as_bit_array(bits)
    return (arr + ord("0")).astype(np.uint8).tobytes().decode("ascii")


def pack_bits(bits) -> bytes:
    """Pack bits MSB-first into bytes; the bit count must be a multiple of 8."""
    arr = as_bit_array(bits)
    if arr.size % 8:
        raise ValueError(f"bit count {arr.size} is not a multiple of 8")
    return np.packbits(arr).tobytes()


def unpack_bits(data: bytes) -> np.ndarray:
    """Inverse of pack_bits: bytes to a uint8 array of bits, MSB-first."""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def state_bits(states, n_bits: int) -> np.ndarray:
    """Concatenated big-endian n_bits-wide bit patterns of the given states."""
    arr = np.asarray(states, dtype=np.int64)
    shifts = np.arange(n_bits - 1, -1, -1, dtype=np.int64)
    return ((arr[:, None] >> shifts) & 1).astype(np.uint8).ravel()
