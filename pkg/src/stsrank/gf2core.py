"""Vectors and linear codes over GF(2).

Coordinates are 0-based. A vector of length ``n`` stores coordinate 0 in the
most significant bit of ``bits``, so integer order equals lexicographic order
of the written bit string and ``int("1010", 2)`` is the vector ``1010``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import kernels
from .errors import LengthMismatchError, PreconditionError

MAX_LENGTH = 1023
DUAL_WINDOW = 16
BLOCK = 8
TAIL = 7
BYTE_ONES = 0xFF


@dataclass(frozen=True, order=True)
class BitVec:
    """Fixed-length GF(2) vector."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if not 0 < self.length <= MAX_LENGTH:
            raise ValueError(f"length {self.length} outside 1..{MAX_LENGTH}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_string(cls, text: str) -> BitVec:
        s = "".join(text.split())
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(s), int(s, 2))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVec:
        bits = 0
        for c in support:
            if not 0 <= c < length:
                raise ValueError(f"coordinate {c} outside 0..{length - 1}")
            bits |= 1 << (length - 1 - c)
        return cls(length, bits)

    @classmethod
    def zero(cls, length: int) -> BitVec:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitVec:
        return cls(length, (1 << length) - 1)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (self.length - 1 - i)) & 1

    def __add__(self, other: BitVec) -> BitVec:
        _same_length(self, other)
        return BitVec(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b")

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if self[i])

    def dot(self, other: BitVec) -> int:
        _same_length(self, other)
        return (self.bits & other.bits).bit_count() & 1

    def complement(self) -> BitVec:
        return BitVec(self.length, self.bits ^ ((1 << self.length) - 1))

    def split(self, sizes: Sequence[int]) -> list[BitVec]:
        """Cut into consecutive pieces of the given sizes."""
        if sum(sizes) != self.length:
            raise LengthMismatchError(f"sizes {list(sizes)} do not sum to {self.length}")
        out = []
        shift = self.length
        for n in sizes:
            shift -= n
            out.append(BitVec(n, (self.bits >> shift) & ((1 << n) - 1)))
        return out

    @staticmethod
    def concat(parts: Sequence[BitVec]) -> BitVec:
        bits = 0
        for p in parts:
            bits = (bits << p.length) | p.bits
        return BitVec(sum(p.length for p in parts), bits)


def _same_length(a: BitVec, b: BitVec) -> None:
    if a.length != b.length:
        raise LengthMismatchError(f"lengths {a.length} and {b.length} differ")


def _common_length(vectors: Sequence[BitVec]) -> int | None:
    lengths = {v.length for v in vectors}
    if len(lengths) > 1:
        raise LengthMismatchError(f"mixed lengths {sorted(lengths)}")
    return lengths.pop() if lengths else None


def _reduce(r: int, pivots: dict[int, int]) -> int:
    while r:
        p = pivots.get(r.bit_length() - 1)
        if p is None:
            return r
        r ^= p
    return 0


@dataclass(frozen=True)
class LinearCode:
    """A binary linear code given by an independent basis.

    The basis order is significant: operations that make choices (such as
    :func:`complement_basis`) walk it in declaration order.
    """

    length: int
    basis: tuple[BitVec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        for b in self.basis:
            if b.length != self.length:
                raise LengthMismatchError(f"basis vector of length {b.length} in code of length {self.length}")
        if kernels.gf2_rank([b.bits for b in self.basis], self.length) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def span_of(cls, length: int, vectors: Iterable[BitVec]) -> LinearCode:
        """Code spanned by ``vectors``; keeps the first independent ones in order."""
        pivots: dict[int, int] = {}
        basis = []
        for v in vectors:
            if v.length != length:
                raise LengthMismatchError(f"vector of length {v.length} for code of length {length}")
            r = _reduce(v.bits, pivots)
            if r:
                pivots[r.bit_length() - 1] = r
                basis.append(v)
        return cls(length, tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.dim

    def _pivots(self) -> dict[int, int]:
        pivots: dict[int, int] = {}
        for b in self.basis:
            r = _reduce(b.bits, pivots)
            pivots[r.bit_length() - 1] = r
        return pivots

    def __contains__(self, v: BitVec) -> bool:
        return span_contains(self, v)

    def words(self) -> list[BitVec]:
        """All ``2**dim`` codewords in increasing order."""
        ints = [0]
        for b in self.basis:
            ints += [w ^ b.bits for w in ints]
        return [BitVec(self.length, w) for w in sorted(ints)]

    def word_set(self) -> frozenset[int]:
        return frozenset(w.bits for w in self.words())

    def same_span(self, other: LinearCode) -> bool:
        return self.length == other.length and self.dim == other.dim and all(b in other for b in self.basis)


def rank_of(vectors: Sequence[BitVec]) -> int:
    """GF(2) dimension of the span of ``vectors``."""
    n = _common_length(vectors)
    if n is None:
        return 0
    return kernels.gf2_rank([v.bits for v in vectors], n)


def span_contains(code: LinearCode, v: BitVec) -> bool:
    if v.length != code.length:
        raise LengthMismatchError(f"vector length {v.length} vs code length {code.length}")
    return _reduce(v.bits, code._pivots()) == 0


def complement_basis(sub: LinearCode, sup: LinearCode) -> LinearCode:
    """A complement of ``sub`` inside ``sup``, chosen greedily from ``sup.basis``."""
    if sub.length != sup.length:
        raise LengthMismatchError(f"lengths {sub.length} and {sup.length} differ")
    for b in sub.basis:
        if b not in sup:
            raise PreconditionError("containment", f"{b} is not in the larger code")
    pivots = sub._pivots()
    chosen = []
    for b in sup.basis:
        r = _reduce(b.bits, pivots)
        if r:
            pivots[r.bit_length() - 1] = r
            chosen.append(b)
    return LinearCode(sup.length, tuple(chosen))


def dual_small(code: LinearCode) -> LinearCode:
    """Dual code by exhaustive search; lengths up to 16 only."""
    n = code.length
    if n > DUAL_WINDOW:
        raise PreconditionError("dual window", f"length {n} exceeds {DUAL_WINDOW}")
    gens = [b.bits for b in code.basis]
    orth = (BitVec(n, w) for w in range(1, 1 << n) if all((w & g).bit_count() % 2 == 0 for g in gens))
    return LinearCode.span_of(n, orth)


def nullspace(rows: Sequence[BitVec], length: int) -> LinearCode:
    """All vectors orthogonal to every row, by Gaussian elimination."""
    reduced: list[int] = []
    pivot_bits: list[int] = []
    for v in rows:
        if v.length != length:
            raise LengthMismatchError(f"row of length {v.length}, expected {length}")
        r = v.bits
        for pb, pr in zip(pivot_bits, reduced):
            if r & pb:
                r ^= pr
        if not r:
            continue
        top = 1 << (r.bit_length() - 1)
        for i, pr in enumerate(reduced):
            if pr & top:
                reduced[i] = pr ^ r
        reduced.append(r)
        pivot_bits.append(top)
    pivot_mask = sum(pivot_bits)
    basis = []
    for c in range(length):
        f = 1 << (length - 1 - c)
        if f & pivot_mask:
            continue
        w = f
        for pb, pr in zip(pivot_bits, reduced):
            if pr & f:
                w |= pb
        basis.append(BitVec(length, w))
    return LinearCode(length, tuple(basis))


def two_dim_subspaces(code: LinearCode) -> list[LinearCode]:
    """The seven 2-dimensional subspaces of a 3-dimensional code."""
    if code.dim != 3:
        raise PreconditionError("dimension", f"expected dim 3, got {code.dim}")
    nonzero = [w for w in code.words() if w.bits]
    seen = {}
    for a, b in combinations(nonzero, 2):
        key = tuple(sorted((a.bits, b.bits, a.bits ^ b.bits)))
        seen.setdefault(key, key)
    out = []
    for key in sorted(seen):
        out.append(LinearCode(code.length, (BitVec(code.length, key[0]), BitVec(code.length, key[1]))))
    return out


def psi_block(b: int) -> int:
    """Canonical representative of an 8-bit block modulo the all-ones word."""
    return min(b, b ^ BYTE_ONES)


def block_layout(length: int) -> int:
    """Number ``u`` of 8-bit blocks for a length ``8u + 7`` vector."""
    if length < TAIL or (length - TAIL) % BLOCK:
        raise PreconditionError("block layout", f"length {length} is not of the form 8u+7")
    return (length - TAIL) // BLOCK


def psi_vec(x: BitVec, m: int | None = None) -> BitVec:
    """Replace each 8-bit block by the smaller of itself and its complement.

    The 7-bit tail block is left unchanged. With ``m`` given, the length must
    be ``2**m - 1``.
    """
    if m is not None and x.length != (1 << m) - 1:
        raise PreconditionError("block layout", f"length {x.length} is not 2^{m}-1")
    u = block_layout(x.length)
    blocks = x.split([BLOCK] * u + [TAIL])
    out = [BitVec(BLOCK, psi_block(b.bits)) for b in blocks[:u]] + [blocks[u]]
    return BitVec.concat(out)
