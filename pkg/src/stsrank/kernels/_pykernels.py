"""Pure-Python reference versions of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same return values; the test-suite runs both and compares them.

Bit convention: a vector of length ``n`` is an int whose most significant
bit (``1 << (n - 1)``) is coordinate 0.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np


def gf2_rank(rows: list[int], ncols: int) -> int:
    """Rank over GF(2) of int-encoded rows of width ``ncols``."""
    pivots: dict[int, int] = {}
    for r in rows:
        if r >> ncols:
            raise ValueError("row wider than ncols")
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def stabilizer_scan(masks: list[int], degree: int) -> list[tuple[int, ...]]:
    """All permutations of ``range(degree)`` mapping the mask set onto itself.

    Output is in lexicographic order of the image tuples.
    """
    target = frozenset(masks)
    words = sorted(target)
    supports = [[c for c in range(degree) if (w >> (degree - 1 - c)) & 1] for w in words]
    out = []
    for images in permutations(range(degree)):
        bits = [1 << (degree - 1 - p) for p in images]
        for sup in supports:
            img = 0
            for c in sup:
                img |= bits[c]
            if img not in target:
                break
        else:
            out.append(images)
    return out


def _canonical_key(mapped: list[int]) -> bytes:
    classes = sorted(
        tuple(sorted(mapped[4 * i: 4 * i + 4], reverse=True)) for i in range(7)
    )
    return bytes(w for cls in classes for w in cls)


def factorization_images(key: bytes) -> set[bytes]:
    """Canonical keys of all S8-images of a one-factorization.

    ``key`` is 28 bytes: seven parallel classes of four weight-2 bytes. The
    canonical key sorts words descending inside a class and classes
    ascending.
    """
    if len(key) != 28:
        raise ValueError("factorization key must be 28 bytes")
    pairs = []
    for w in key:
        pts = [c for c in range(8) if (w >> (7 - c)) & 1]
        if len(pts) != 2:
            raise ValueError(f"word {w:02X} is not of weight 2")
        pairs.append(pts)
    out = set()
    for images in permutations(range(8)):
        bits = [1 << (7 - p) for p in images]
        out.add(_canonical_key([bits[a] | bits[b] for a, b in pairs]))
    return out


def latin_orthogonal_batch(squares: np.ndarray, x: int) -> np.ndarray:
    """For each order-8 square, whether its phi-code is orthogonal to ``x``.

    ``squares`` has shape ``(N, 8, 8)``; ``x`` is a 24-bit int split as
    row block, column block, symbol block.
    """
    squares = np.asarray(squares)
    if squares.ndim != 3 or squares.shape[1:] != (8, 8):
        raise ValueError("expected an (N, 8, 8) array")
    if squares.size and squares.max() > 7:
        raise ValueError("symbol out of range")
    coords = [(x >> (23 - c)) & 1 for c in range(24)]
    xr = np.array(coords[0:8], dtype=np.uint8)
    xc = np.array(coords[8:16], dtype=np.uint8)
    xs = np.array(coords[16:24], dtype=np.uint8)
    parity = xr[:, None] ^ xc[None, :] ^ xs[squares]
    return ~parity.reshape(len(squares), -1).any(axis=1)
