"""Bit-mask helpers for vertex subsets of [m].

Vertices are 1-based in all I/O and 0-based as bit positions internally:
vertex i corresponds to bit (i - 1).
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    """Mask for a collection of 1-based vertex labels."""
    m = 0
    for v in vertices:
        if v < 1:
            raise ValueError(f"vertex labels are 1-based, got {v}")
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> list[int]:
    """Sorted 1-based vertex labels of a mask."""
    return [i + 1 for i in iter_bits(mask)]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_subsets(mask: int) -> Iterator[int]:
    """All subsets of mask (including 0 and mask itself), increasing as integers."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        # step to the next subset in the standard subset-enumeration order
        sub = (sub - mask) & mask


def iter_submasks_desc(mask: int) -> Iterator[int]:
    """All nonempty subsets of mask, each visited once (descending trick)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def full_mask(m: int) -> int:
    return (1 << m) - 1


def format_mask(mask: int) -> str:
    """Render a mask as '{1,3,4}' with 1-based labels; '{}' for the empty set."""
    return "{" + ",".join(str(v) for v in vertices_of(mask)) + "}"
