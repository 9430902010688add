"""Latin squares, their unary embedding into length-24 words, and the
families of order-8 squares whose embedding is orthogonal to given vectors.

A square ``L`` of order 8 is read as the 64 triples ``(i, j, L[i][j])``. Each
triple embeds as three weight-1 bytes, so ``C(L)`` is orthogonal to a length-24
vector ``x = (x1 | x2 | x3)`` iff ``x1[i] + x2[j] + x3[L[i][j]]`` is even for
every cell.

Families constrained by vectors of the right shape are never enumerated
directly. Each block of coordinates is permuted so that the first vector
becomes ``11110000`` in every block; the orthogonal squares then split into
four independent order-4 quadrants, which are filtered separately.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from math import prod
from typing import Sequence

import numpy as np

from . import kernels
from .errors import PreconditionError
from .gf2core import BitVec, rank_of
from .permgroups import Permutation, apply

BLOCKS = 3


@dataclass(frozen=True, order=True)
class LatinSquare:
    order: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(int(a) for a in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        n = self.order
        if n not in (4, 8):
            raise ValueError(f"order {n} not supported")
        if len(cells) != n or any(len(row) != n for row in cells):
            raise ValueError("cells are not an order x order array")
        full = set(range(n))
        if any(set(row) != full for row in cells) or any({row[j] for row in cells} != full for j in range(n)):
            raise ValueError("not a Latin square")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.cells[i][j]

    def to_text(self) -> str:
        lines = [str(self.order)] + [" ".join(map(str, row)) for row in self.cells]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> LatinSquare:
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        n = int(lines[0])
        return cls(n, tuple(tuple(int(t) for t in ln.split()) for ln in lines[1:1 + n]))

    def to_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.uint8)


def enumerate_latin4() -> list[LatinSquare]:
    """All 576 Latin squares of order 4, in lexicographic order."""
    rows = list(permutations(range(4)))
    out = []

    def extend(chosen):
        if len(chosen) == 4:
            out.append(LatinSquare(4, tuple(chosen)))
            return
        for r in rows:
            if all(r[j] != prev[j] for prev in chosen for j in range(4)):
                extend(chosen + [r])

    extend([])
    return out


def random_latin8(rng: random.Random) -> LatinSquare:
    """A random isotope of the cyclic or the elementary abelian group table."""
    base = rng.choice([lambda i, j: (i + j) % 8, lambda i, j: i ^ j])
    rp, cp, sp = (rng.sample(range(8), 8) for _ in range(3))
    return LatinSquare(8, tuple(tuple(sp[base(rp[i], cp[j])] for j in range(8)) for i in range(8)))


def phi_embed(L: LatinSquare) -> frozenset[BitVec]:
    """The 64 weight-3 words ``phi(i) | phi(j) | phi(L[i][j])``."""
    if L.order != 8:
        raise PreconditionError("order", "phi embedding is defined for order 8")
    return frozenset(
        BitVec.from_support(24, (i, 8 + j, 16 + L.cells[i][j])) for i in range(8) for j in range(8)
    )


def is_cw_codeword(c: BitVec) -> bool:
    return c.length == 24 and all(b.weight == 1 for b in c.split([8, 8, 8]))


def is_orthogonal_code(L: LatinSquare, x: BitVec) -> bool:
    if x.length != 24:
        raise PreconditionError("length", f"expected length 24, got {x.length}")
    return bool(kernels.latin_orthogonal_batch(L.to_array()[None], x.bits)[0])


def check_filter_hypotheses(vectors: Sequence[BitVec]) -> None:
    """Raise :class:`PreconditionError` naming the first failed hypothesis."""
    if not 1 <= len(vectors) <= 3:
        raise PreconditionError("arity", "between one and three vectors are supported")
    ones = BitVec.ones(8)
    for v in vectors:
        if v.length != 24:
            raise PreconditionError("length", f"vector of length {v.length}")
        if any(b.weight != 4 for b in v.split([8, 8, 8])):
            raise PreconditionError("block weight", f"{v} does not have weight 4 in every block")
    blocks = [v.split([8, 8, 8]) for v in vectors]
    for b in range(BLOCKS):
        col = [bl[b] for bl in blocks]
        if rank_of(col + [ones]) != len(col) + 1:
            raise PreconditionError("psi-independence", f"block {b} images are dependent modulo the all-ones word")
    for p in range(len(vectors)):
        for q in range(p + 1, len(vectors)):
            for b in range(BLOCKS):
                if (blocks[p][b] + blocks[q][b]).weight != 4:
                    raise PreconditionError(
                        "pairwise intersection", f"blocks {b} of vectors {p},{q} do not meet in exactly two points"
                    )
            if vectors[p].dot(vectors[q]):
                raise PreconditionError("orthogonality", f"vectors {p},{q} are not orthogonal")


def normalizing_permutations(vectors: Sequence[BitVec]) -> tuple[Permutation, Permutation, Permutation]:
    """Per-block permutations taking the vectors to ``11110000``, ``11001100``, ``10101010``.

    Points are ranked by their labels under the given vectors (members of the
    support first), ties broken by position.
    """
    blocks = [v.split([8, 8, 8]) for v in vectors]
    perms = []
    for b in range(BLOCKS):
        cols = [bl[b] for bl in blocks]
        order = sorted(range(8), key=lambda s: tuple(1 - c[s] for c in cols) + (s,))
        images = [0] * 8
        for rank, s in enumerate(order):
            images[s] = rank
        perms.append(Permutation(tuple(images)))
    return tuple(perms)


CANONICAL_BLOCKS = (0b11110000, 0b11001100, 0b10101010)


def permute_blocks(perms: Sequence[Permutation], x: BitVec) -> BitVec:
    return BitVec.concat([apply(p, b) for p, b in zip(perms, x.split([8, 8, 8]))])


def _quadrant_symbol_half(row_half: int, col_half: int) -> int:
    # rows/cols/symbols 0..3 carry the canonical anchor's ones
    return 1 ^ row_half ^ col_half


def _latin4_array() -> np.ndarray:
    return np.array([sq.cells for sq in enumerate_latin4()], dtype=np.uint8)


_LATIN4 = None


def latin4_array() -> np.ndarray:
    global _LATIN4
    if _LATIN4 is None:
        _LATIN4 = _latin4_array()
        _LATIN4.setflags(write=False)
    return _LATIN4


def quadrant_families(extras: Sequence[BitVec]) -> list[np.ndarray]:
    """Survivors of the order-4 filter in each quadrant of the canonical split.

    ``extras`` are constraint vectors already in normalized coordinates. Each
    returned array has shape ``(n_q, 4, 4)`` and holds global symbols 0..7;
    quadrants are ordered (top-left, top-right, bottom-left, bottom-right).
    """
    sq4 = latin4_array()
    out = []
    for rh, ch in product((0, 1), repeat=2):
        sh = _quadrant_symbol_half(rh, ch)
        glob = sq4 + 4 * sh
        keep = np.ones(len(sq4), dtype=bool)
        for w in extras:
            coords = [(w.bits >> (23 - c)) & 1 for c in range(24)]
            xr = np.array(coords[4 * rh: 4 * rh + 4], dtype=np.uint8)
            xc = np.array(coords[8 + 4 * ch: 8 + 4 * ch + 4], dtype=np.uint8)
            xs = np.array(coords[16:24], dtype=np.uint8)
            parity = xr[:, None] ^ xc[None, :] ^ xs[glob]
            keep &= ~parity.reshape(len(sq4), -1).any(axis=1)
        out.append(glob[keep])
    return out


def _prepare(vectors: Sequence[BitVec]):
    check_filter_hypotheses(vectors)
    perms = normalizing_permutations(vectors)
    normalized = [permute_blocks(perms, v) for v in vectors]
    anchor = normalized[0].split([8, 8, 8])
    if any(b.bits != CANONICAL_BLOCKS[0] for b in anchor):
        raise AssertionError("normalization failed to reach the canonical anchor")
    return perms, quadrant_families(normalized[1:])


def filtered_counts(x: BitVec, y: BitVec | None = None, z: BitVec | None = None) -> int:
    """Number of order-8 squares orthogonal to all given vectors.

    Computed as a product of four per-quadrant counts; no order-8 square is
    built.
    """
    if y is None and z is not None:
        raise PreconditionError("arity", "z given without y")
    vectors = [v for v in (x, y, z) if v is not None]
    _, fams = _prepare(vectors)
    return prod(len(f) for f in fams)


def _assemble(fams: list[np.ndarray], choice: Sequence[int] | None = None) -> np.ndarray:
    if choice is not None:
        fams = [f[c:c + 1] for f, c in zip(fams, choice)]
    sizes = [len(f) for f in fams]
    n = prod(sizes)
    out = np.empty((n, 8, 8), dtype=np.uint8)
    idx = np.indices(sizes).reshape(4, -1)
    for q, (rh, ch) in enumerate(product((0, 1), repeat=2)):
        out[:, 4 * rh: 4 * rh + 4, 4 * ch: 4 * ch + 4] = fams[q][idx[q]]
    return out


def _to_original(canon: np.ndarray, perms: Sequence[Permutation]) -> np.ndarray:
    p_row = np.array(perms[0].images)
    p_col = np.array(perms[1].images)
    inv_sym = np.array(perms[2].inverse().images, dtype=np.uint8)
    return inv_sym[canon[:, p_row][:, :, p_col]]


def _sorted_unique(arr: np.ndarray) -> np.ndarray:
    flat = np.unique(arr.reshape(len(arr), 64), axis=0)
    return flat.reshape(-1, 8, 8)


MAX_MATERIALIZED = 16 ** 4


def enumerate_filtered_array(x: BitVec, y: BitVec, z: BitVec | None = None) -> np.ndarray:
    """Like :func:`enumerate_filtered` but as a sorted ``(N, 8, 8)`` array."""
    vectors = [v for v in (x, y, z) if v is not None]
    perms, fams = _prepare(vectors)
    if prod(len(f) for f in fams) > MAX_MATERIALIZED:
        raise PreconditionError("materialization cap", "family too large to list")
    return _sorted_unique(_to_original(_assemble(fams), perms))


def enumerate_filtered(x: BitVec, y: BitVec, z: BitVec | None = None) -> list[LatinSquare]:
    """All order-8 squares orthogonal to two or three constraint vectors."""
    return [LatinSquare(8, tuple(map(tuple, sq))) for sq in enumerate_filtered_array(x, y, z).tolist()]


def sample_filtered(vectors: Sequence[BitVec], rng: random.Random) -> LatinSquare:
    """One square drawn uniformly from the family of the given vectors."""
    perms, fams = _prepare(vectors)
    choice = [rng.randrange(len(f)) for f in fams]
    sq = _to_original(_assemble(fams, choice), perms)[0]
    return LatinSquare(8, tuple(map(tuple, sq.tolist())))


def _family_keys(arr: np.ndarray) -> set[bytes]:
    return {row.tobytes() for row in arr.reshape(len(arr), 64)}


def set_identity_check(x: BitVec, y: BitVec) -> bool:
    """Whether the families of ``(x, y)``, ``(x, x+y)`` and ``(x+y, y)`` coincide.

    Each family is enumerated through its own normalization.
    """
    check_filter_hypotheses([x, y])
    s = x + y
    a = _family_keys(enumerate_filtered_array(x, y))
    b = _family_keys(enumerate_filtered_array(x, s))
    c = _family_keys(enumerate_filtered_array(s, y))
    return a == b == c
