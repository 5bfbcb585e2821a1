"""Bitmask helpers.  Element sets are ints, bit i = element with index i."""

from __future__ import annotations

import numpy as np


def iter_bits(mask: int):
    'Indices of the set bits, ascending.'
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def row_masks(bools: np.ndarray) -> tuple[int, ...]:
    'One int per row of a 2-d bool array.'
    packed = np.packbits(bools, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def submask(a: int, b: int) -> bool:
    return a & b == a
