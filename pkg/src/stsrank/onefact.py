"""One-factorizations of K8: partitions of the 28 weight-2 words of length 8
into seven parallel classes (perfect matchings).

Words are 8-bit ints, coordinate 0 in the most significant bit, so the hex
token ``81`` is the pair {0, 7}.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from . import kernels
from .errors import ParityUndefinedError, ParseError, PreconditionError
from .gf2core import BitVec, rank_of
from .permgroups import Permutation, permute_bits

ORBIT_SIZES = (630, 420, 2520, 30, 1680, 960)
W28 = tuple(sorted(((1 << (7 - a)) | (1 << (7 - b)) for a, b in combinations(range(8), 2)), reverse=True))
_W28_SET = frozenset(W28)


@dataclass(frozen=True)
class Factorization:
    """An ordered 7-tuple of parallel classes covering every weight-2 word once."""

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if len(classes) != 7:
            raise ValueError(f"expected 7 parallel classes, got {len(classes)}")
        for cls in classes:
            if len(cls) != 4 or any(w not in _W28_SET for w in cls):
                raise ValueError(f"class {_class_hex(cls)} is not four weight-2 words")
            acc = 0
            for w in cls:
                if acc & w:
                    raise ValueError(f"class {_class_hex(cls)} is not a perfect matching")
                acc |= w
        if sorted(w for cls in classes for w in cls) != sorted(W28):
            raise ValueError("classes do not partition the 28 weight-2 words")

    def key(self) -> bytes:
        """Canonical 28-byte key: words descending within a class, classes ascending."""
        return bytes(w for cls in sorted(tuple(sorted(c, reverse=True)) for c in self.classes) for w in cls)

    def canonical(self) -> Factorization:
        return Factorization.from_key(self.key())

    @classmethod
    def from_key(cls, key: bytes) -> Factorization:
        return cls(tuple(tuple(key[4 * i: 4 * i + 4]) for i in range(7)))

    def to_hex(self) -> str:
        return " ".join(_class_hex(c) for c in self.classes)

    def __str__(self) -> str:
        return self.to_hex()


def _class_hex(cls) -> str:
    return "".join(f"{w:02X}" for w in cls)


def parse_hex_representative(row: str) -> Factorization:
    """Decode seven groups of eight hex digits into a factorization."""
    groups = row.split()
    if len(groups) != 7:
        raise ParseError(f"expected 7 hex groups, found {len(groups)}")
    classes = []
    for g in groups:
        if len(g) != 8:
            raise ParseError(f"group {g!r} is not 8 hex digits")
        try:
            words = [int(g[i:i + 2], 16) for i in range(0, 8, 2)]
        except ValueError:
            raise ParseError(f"group {g!r} is not hexadecimal") from None
        for tok, w in zip((g[i:i + 2] for i in range(0, 8, 2)), words):
            if w.bit_count() != 2:
                raise ParseError(f"token {tok} has weight {w.bit_count()}, expected 2")
        classes.append(tuple(words))
    try:
        return Factorization(tuple(classes))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_factorizations(text: str) -> list[Factorization]:
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_hex_representative(line))
        except ParseError as exc:
            raise ParseError(f"line {n}: {exc}") from None
    return out


def write_factorizations(fs) -> str:
    return "".join(f.to_hex() + "\n" for f in fs)


def load_representatives(path: str | Path | None = None) -> list[Factorization]:
    """The six orbit representatives, from the bundled table or ``path``."""
    if path is None:
        text = resources.files("stsrank").joinpath("data/representatives.txt").read_text()
        where = "bundled representative table"
    else:
        text = Path(path).read_text()
        where = str(path)
    try:
        reps = read_factorizations(text)
    except ParseError as exc:
        raise ParseError(f"parse representatives ({where}), {exc}") from None
    if len(reps) != 6:
        raise ParseError(f"parse representatives ({where}): expected 6 rows, found {len(reps)}")
    return reps


def perfect_matchings() -> list[tuple[int, ...]]:
    """The 105 perfect matchings of K8, each as a descending word tuple."""
    out = []

    def extend(free, chosen):
        if not free:
            out.append(tuple(sorted(chosen, reverse=True)))
            return
        a = free[0]
        for b in free[1:]:
            w = (1 << (7 - a)) | (1 << (7 - b))
            extend([c for c in free if c not in (a, b)], chosen + [w])

    extend(list(range(8)), [])
    return sorted(out)


def enumerate_factorizations() -> list[Factorization]:
    """All 6240 one-factorizations, each once, in canonical form and sorted order.

    Backtracking always completes the class of the lexicographically first
    uncovered pair, starting with {0, 1}.
    """
    by_word: dict[int, list[tuple[int, ...]]] = {w: [] for w in W28}
    for pm in perfect_matchings():
        for w in pm:
            by_word[w].append(pm)
    found = []

    def extend(covered: frozenset, chosen: list):
        if len(chosen) == 7:
            found.append(Factorization(tuple(chosen)))
            return
        first = next(w for w in W28 if w not in covered)
        for pm in by_word[first]:
            if any(w in covered for w in pm):
                continue
            extend(covered | set(pm), chosen + [pm])

    extend(frozenset(), [])
    return sorted((f.canonical() for f in found), key=Factorization.key)


def apply_perm(p: Permutation, V: Factorization) -> Factorization:
    """Coordinate action of ``p`` on every word; class order is kept."""
    if p.degree != 8:
        raise PreconditionError("degree", "factorizations live on 8 points")
    return Factorization(tuple(tuple(permute_bits(p, w) for w in cls) for cls in V.classes))


def canonical_form(V: Factorization) -> bytes:
    """Least key over the S8-orbit of ``V``."""
    return min(kernels.factorization_images(V.key()))


@dataclass(frozen=True)
class Orbit:
    label: str
    representative: Factorization
    members: tuple[bytes, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitTable:
    orbits: tuple[Orbit, ...]
    lookup: dict

    def classify(self, V: Factorization) -> str:
        return self.orbits[self.lookup[V.key()]].label

    def sizes(self) -> tuple[int, ...]:
        return tuple(o.size for o in self.orbits)


def classify_orbits(all_factorizations, representatives=None) -> OrbitTable:
    """Split the full enumeration into S8-orbits and name each by its representative.

    Orbits are swept from the least unassigned key; each orbit is the set of
    canonical keys of all 40320 images.
    """
    reps = load_representatives() if representatives is None else list(representatives)
    universe = {f.key() for f in all_factorizations}
    lookup: dict[bytes, int] = {}
    swept = []
    for k in sorted(universe):
        if k in lookup:
            continue
        images = kernels.factorization_images(k)
        if not images <= universe:
            raise PreconditionError("full enumeration", "input is not closed under S8")
        for img in images:
            lookup[img] = -1
        swept.append(images)
    orbits = []
    for i, rep in enumerate(reps):
        hits = [n for n, orb in enumerate(swept) if rep.key() in orb]
        if len(hits) != 1:
            raise ParseError(f"representative V{i + 1} matches no orbit of the enumeration")
        orbits.append((i, hits[0]))
    if sorted(h for _, h in orbits) != list(range(len(swept))):
        raise PreconditionError("representatives", "representatives do not cover every orbit exactly once")
    table = []
    for i, h in orbits:
        members = tuple(sorted(swept[h]))
        for k in members:
            lookup[k] = i
        table.append(Orbit(f"V{i + 1}", reps[i], members))
    return OrbitTable(tuple(table), lookup)


def reorder(tau: Permutation, V: Factorization) -> Factorization:
    """Class ``k`` of the result is class ``tau(k)`` of ``V``.

    With this convention ``parity(x, reorder(tau, V)) == apply(tau^-1, parity(x, V))``.
    """
    if tau.degree != 7:
        raise PreconditionError("degree", "class reordering uses permutations of 7 points")
    return Factorization(tuple(V.classes[tau(k)] for k in range(7)))


def _class_parities(x: int, V: Factorization) -> list[set[int]]:
    return [{(w & x).bit_count() & 1 for w in cls} for cls in V.classes]


def xset(V: Factorization) -> frozenset[BitVec]:
    """Weight-4 vectors making every class pure, with four odd and three even classes."""
    out = set()
    for support in combinations(range(8), 4):
        x = sum(1 << (7 - c) for c in support)
        par = _class_parities(x, V)
        if all(len(p) == 1 for p in par) and sum(p == {1} for p in par) == 4:
            out.add(BitVec(8, x))
    return frozenset(out)


def xset_span_dim(V: Factorization) -> int:
    return rank_of(sorted(xset(V)))


def xset_psi_dim(V: Factorization) -> int:
    """Dimension of the image of the span modulo the all-ones word."""
    xs = sorted(xset(V))
    if not xs:
        return 0
    return rank_of(xs + [BitVec.ones(8)]) - 1


def parity(x: BitVec, V: Factorization) -> BitVec:
    """Bit ``i`` is 1 iff class ``i`` is odd with respect to ``x``."""
    if x.length != 8:
        raise PreconditionError("length", f"expected length 8, got {x.length}")
    bits = 0
    for i, p in enumerate(_class_parities(x.bits, V)):
        if len(p) != 1:
            raise ParityUndefinedError(f"class {i} is mixed with respect to {x}")
        if p == {1}:
            bits |= 1 << (6 - i)
    return BitVec(7, bits)


def parity_set(V: Factorization) -> frozenset[BitVec]:
    return frozenset(parity(x, V) for x in xset(V))


def extended_words(V: Factorization) -> list[BitVec]:
    """The 28 words ``w | e_i`` for ``w`` in class ``i``."""
    return [BitVec(15, (w << 7) | (1 << (6 - i))) for i, cls in enumerate(V.classes) for w in cls]


def orthogonality_criterion(x: BitVec, c: BitVec, V: Factorization) -> bool:
    """Whether ``(x | c)`` is orthogonal to every extended class word."""
    if x not in xset(V):
        raise PreconditionError("x in X(V)", f"{x} is not in X(V)")
    if c.length != 7 or c.weight != 4:
        raise PreconditionError("weight 4", f"{c} is not a weight-4 word of length 7")
    xc = BitVec.concat([x, c])
    return all(xc.dot(w) == 0 for w in extended_words(V))
