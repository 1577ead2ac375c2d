"""Information-theoretic lower bounds for uniform-prior, unit-cost ODT."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Tuple


def entropy_bound(m: int) -> float:
    """Total entropy bound ``m * log2(m)`` over all hypotheses."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return m * math.log2(m)


def huffman_depth_counts(m: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """``((shallow_depth, count), (deep_depth, count))`` of the balanced tree.

    With ``l = ceil(log2 m)`` there are ``2^l - m`` leaves at depth ``l - 1``
    and ``2m - 2^l`` leaves at depth ``l``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    ell = (m - 1).bit_length()
    return (ell - 1, (1 << ell) - m), (ell, 2 * m - (1 << ell))


def huffman_bound(m: int, p: int = 1, as_total: bool = True) -> Fraction:
    """Minimum over binary trees with ``m`` leaves of the sum of depth^p.

    Returned as the total over leaves, or divided by ``m`` when
    ``as_total`` is false (the per-hypothesis p-th moment bound).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    total = Fraction(0)
    for depth, count in huffman_depth_counts(m):
        if count:
            total += count * depth**p
    return total if as_total else total / m
