"""Permutations of at most eight points acting on coordinates.

``Permutation.images[i]`` is the image of point ``i``. A permutation moves
coordinate ``i`` of a vector to position ``images[i]``, so coordinate ``i`` of
``apply(p, x)`` is coordinate ``p^-1(i)`` of ``x``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from . import kernels
from .errors import LengthMismatchError, NotInOrbitError, PreconditionError
from .gf2core import BitVec, LinearCode

MAX_DEGREE = 8


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        return cls(tuple(int(t) for t in text.split()))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition, right factor first: ``(p * q)(i) == p(q(i))``."""
        if self.degree != other.degree:
            raise LengthMismatchError(f"degrees {self.degree} and {other.degree}")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


@dataclass(frozen=True)
class PermSet:
    degree: int
    members: frozenset[Permutation]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, p: Permutation) -> bool:
        return p in self.members

    def is_group(self) -> bool:
        ident = Permutation.identity(self.degree)
        if ident not in self.members:
            return False
        return all(p * q in self.members for p in self.members for q in self.members) and all(
            p.inverse() in self.members for p in self.members
        )


def symmetric_group(degree: int) -> PermSet:
    _check_degree(degree)
    return PermSet(degree, frozenset(Permutation(p) for p in permutations(range(degree))))


def random_permutation(degree: int, rng: random.Random) -> Permutation:
    images = list(range(degree))
    rng.shuffle(images)
    return Permutation(tuple(images))


def _check_degree(degree: int) -> None:
    if not 1 <= degree <= MAX_DEGREE:
        raise PreconditionError("degree cap", f"degree {degree} outside 1..{MAX_DEGREE}")


def permute_bits(p: Permutation, bits: int) -> int:
    """Apply ``p`` to an int-encoded vector of length ``p.degree``."""
    n = p.degree
    out = 0
    for i, j in enumerate(p.images):
        if (bits >> (n - 1 - i)) & 1:
            out |= 1 << (n - 1 - j)
    return out


def apply(p: Permutation, x: BitVec) -> BitVec:
    if p.degree != x.length:
        raise LengthMismatchError(f"degree {p.degree} vs length {x.length}")
    return BitVec(x.length, permute_bits(p, x.bits))


def apply_set(p: Permutation, xs: Iterable[BitVec]) -> frozenset[BitVec]:
    return frozenset(apply(p, x) for x in xs)


def stabilizer(degree: int, target: Iterable[BitVec]) -> PermSet:
    """All permutations fixing ``target`` as a set, by scanning every permutation."""
    _check_degree(degree)
    target = list(target)
    for t in target:
        if t.length != degree:
            raise LengthMismatchError(f"target vector of length {t.length}, degree {degree}")
    found = kernels.stabilizer_scan([t.bits for t in target], degree)
    return PermSet(degree, frozenset(Permutation(p) for p in found))


def orbit_transitive_check(group: PermSet, objects: Sequence[LinearCode]) -> bool:
    """Whether ``group`` acts with a single orbit on the given subspaces."""
    if not objects:
        raise PreconditionError("nonempty", "no objects given")
    keys = {o.word_set() for o in objects}
    start = objects[0]
    orbit = set()
    for p in group:
        orbit.add(frozenset(permute_bits(p, w) for w in start.word_set()))
    return keys <= orbit


def coset_solve_set(target: Iterable[BitVec], source: Iterable[BitVec], degree: int) -> Permutation:
    """Least permutation (lexicographically) mapping the set ``source`` onto ``target``."""
    _check_degree(degree)
    tgt = frozenset(t.bits for t in target)
    src = [s.bits for s in source]
    for images in permutations(range(degree)):
        p = Permutation(images)
        if frozenset(permute_bits(p, s) for s in src) == tgt:
            return p
    raise NotInOrbitError("source and target lie in different orbits")


def coset_solve(target_image: BitVec, source: BitVec, stab: PermSet | None = None) -> Permutation:
    """One ``sigma`` with ``sigma(source) == target_image``.

    The full solution set is ``coset(sigma, stab)`` when ``stab`` is the
    stabilizer of ``source``.
    """
    if target_image.length != source.length:
        raise LengthMismatchError("source and target lengths differ")
    if stab is not None and stab.degree != source.length:
        raise LengthMismatchError("stabilizer degree differs from vector length")
    if target_image.weight != source.weight:
        raise NotInOrbitError(f"weights {source.weight} and {target_image.weight} differ")
    return coset_solve_set([target_image], [source], source.length)


def coset(sigma: Permutation, stab: PermSet) -> PermSet:
    return PermSet(stab.degree, frozenset(sigma * r for r in stab.members))
