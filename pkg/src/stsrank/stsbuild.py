"""Steiner triple systems on ``v = 2^m - 1`` points built block-wise.

Point layout: ``u = 2^(m-3) - 1`` blocks of eight points (block ``i`` holds
points ``8i .. 8i+7``) followed by a tail of seven points ``8u .. 8u+6``.
Block ``i`` carries the label ``u - i`` in GF(2)^(m-3); the tail carries label
0. With this labelling the equidistant code generated from the label bits is
zero on the tail.

A system is assembled from three parts:

* an STS(7) on the tail;
* for every block, an ordered one-factorization; the pairs of class ``j``
  are joined to tail point ``j``;
* for every line ``{i1 < i2 < i3}`` of the boolean system on the block labels,
  a Latin square of order 8 whose cell ``(r, c)`` yields the triple
  ``{8*i1 + r, 8*i2 + c, 8*i3 + L[r][c]}``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import ConstructionError, ParseError, PreconditionError
from .gf2core import BitVec, LinearCode, complement_basis, dual_small, nullspace, psi_vec, rank_of
from .latin import LatinSquare, random_latin8, sample_filtered
from .onefact import Factorization, apply_perm, load_representatives, parity, parse_hex_representative, reorder, xset
from .permgroups import Permutation, apply, coset_solve_set, random_permutation, stabilizer

DEFAULT_S3_ROWS = (
    "1010100",
    "0101100",
    "0110010",
    "1001010",
    "1100001",
    "0011001",
    "0000111",
)


@dataclass(frozen=True)
class TripleSystem:
    v: int
    blocks: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        for b in blocks:
            if len(b) != 3 or len(set(b)) != 3 or not all(0 <= p < self.v for p in b):
                raise ValueError(f"bad block {b} for v={self.v}")

    def pair_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for a, b, c in self.blocks:
            for pr in ((a, b), (a, c), (b, c)):
                counts[pr] = counts.get(pr, 0) + 1
        return counts

    def is_steiner(self) -> bool:
        """Every pair of points lies in exactly one block."""
        counts = self.pair_counts()
        return len(counts) == self.v * (self.v - 1) // 2 and all(n == 1 for n in counts.values())

    def pair_audit(self, pairs: Sequence[tuple[int, int]] | None = None) -> bool:
        """Check the Steiner property on all pairs, or only on ``pairs``."""
        if pairs is None:
            return self.is_steiner()
        counts = self.pair_counts()
        if any(n != 1 for n in counts.values()):
            return False
        return all(counts.get(tuple(sorted(p)), 0) == 1 for p in pairs)

    def incidence_vectors(self) -> list[BitVec]:
        return [BitVec.from_support(self.v, b) for b in self.blocks]

    def to_json(self) -> dict:
        return {"v": self.v, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, doc: dict) -> TripleSystem:
        try:
            return cls(int(doc["v"]), tuple(tuple(b) for b in doc["blocks"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"not a triple system document: {exc}") from None


def s3_from_rows(rows: Sequence[str]) -> TripleSystem:
    return TripleSystem(7, tuple(BitVec.from_string(r).support() for r in rows))


DEFAULT_S3 = s3_from_rows(DEFAULT_S3_ROWS)


def enumerate_sts7() -> list[TripleSystem]:
    """The 30 labelled Steiner triple systems on seven points."""
    triples = list(combinations(range(7), 3))
    out = []

    def extend(chosen, covered):
        if len(chosen) == 7:
            out.append(TripleSystem(7, tuple(chosen)))
            return
        first = next(p for p in combinations(range(7), 2) if p not in covered)
        for t in triples:
            if first[0] in t and first[1] in t:
                prs = {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])}
                if not prs & covered:
                    extend(chosen + [t], covered | prs)

    extend([], frozenset())
    return sorted(out, key=lambda s: s.blocks)


def s3_dual(s3: TripleSystem) -> LinearCode:
    return dual_small(LinearCode.span_of(7, s3.incidence_vectors()))


@dataclass(frozen=True)
class Layout:
    m: int

    def __post_init__(self):
        if self.m < 5:
            raise PreconditionError("m >= 5", f"m={self.m}")

    @property
    def v(self) -> int:
        return (1 << self.m) - 1

    @property
    def u(self) -> int:
        return (1 << (self.m - 3)) - 1

    @property
    def k(self) -> int:
        return self.u * (self.u - 1) // 6

    @property
    def tail(self) -> int:
        return 8 * self.u

    def label(self, i: int) -> int:
        return self.u - i

    def block_of_label(self, a: int) -> int:
        return self.u - a


def _block_word(layout: Layout, pattern: Sequence[int]) -> BitVec:
    """Length-v word that is all-ones on each block ``i`` with ``pattern[i] == 1``."""
    bits = 0
    for i, on in enumerate(pattern):
        bits = (bits << 8) | (0xFF if on else 0)
    return BitVec(layout.v, bits << 7)


def build_A(m: int) -> LinearCode:
    """Equidistant code of dimension m-3: block ``i`` of generator ``r`` is all-ones
    iff bit ``r`` (from the top) of the block label is set."""
    lay = Layout(m)
    n = m - 3
    gens = []
    for r in range(n):
        bit = 1 << (n - 1 - r)
        gens.append(_block_word(lay, [1 if lay.label(i) & bit else 0 for i in range(lay.u)]))
    return LinearCode(lay.v, tuple(gens))


def build_E(m: int) -> LinearCode:
    """Block-constant words that vanish on the tail; dimension u."""
    lay = Layout(m)
    return LinearCode(lay.v, tuple(_block_word(lay, [int(i == j) for i in range(lay.u)]) for j in range(lay.u)))


def build_B(m: int) -> LinearCode:
    return complement_basis(build_A(m), build_E(m))


def collapse(x: BitVec, m: int) -> BitVec:
    """Map a block-constant word to one bit per block."""
    lay = Layout(m)
    blocks = x.split([8] * lay.u + [7])
    if blocks[-1].bits or any(b.bits not in (0, 0xFF) for b in blocks[:-1]):
        raise PreconditionError("block-constant", f"{x} is not block-constant with zero tail")
    return BitVec(lay.u, sum(1 << (lay.u - 1 - i) for i, b in enumerate(blocks[:-1]) if b.bits))


def boolean_system(m: int) -> TripleSystem:
    """Lines ``{a, b, a+b}`` of GF(2)^(m-3), on block indices."""
    lay = Layout(m)
    lines = set()
    for a, b in combinations(range(1, lay.u + 1), 2):
        lines.add(tuple(sorted(lay.block_of_label(t) for t in (a, b, a ^ b))))
    return TripleSystem(lay.u, tuple(lines))


@dataclass(frozen=True)
class ConstructionSpec:
    m: int
    s3: TripleSystem
    partitions: tuple[Factorization, ...]
    orderings: tuple[Permutation, ...]
    latin_assignment: dict = field(hash=False)
    b_complement: LinearCode | None = None
    extra_vectors: tuple[BitVec, ...] = ()
    seed: int | None = None
    deficit: int | None = None

    def validate(self) -> None:
        lay = Layout(self.m)
        if self.s3.v != 7 or not self.s3.is_steiner():
            raise PreconditionError("s3", "tail system is not an STS(7)")
        if len(self.partitions) != lay.u or len(self.orderings) != lay.u:
            raise PreconditionError("block count", f"need {lay.u} partitions and orderings")
        if any(t.degree != 7 for t in self.orderings):
            raise PreconditionError("ordering degree", "orderings permute seven classes")
        if set(self.latin_assignment) != set(boolean_system(self.m).blocks):
            raise PreconditionError("latin assignment", "keys must be exactly the boolean system lines")
        if any(sq.order != 8 for sq in self.latin_assignment.values()):
            raise PreconditionError("latin assignment", "squares must have order 8")

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "seed": self.seed,
            "deficit": self.deficit,
            "s3": [list(b) for b in self.s3.blocks],
            "partitions": [p.to_hex() for p in self.partitions],
            "orderings": [str(t) for t in self.orderings],
            "latin": [
                {"block": list(key), "square": self.latin_assignment[key].to_text().splitlines()}
                for key in sorted(self.latin_assignment)
            ],
            "b_complement": [str(b) for b in self.b_complement.basis] if self.b_complement else None,
            "extra_vectors": [str(x) for x in self.extra_vectors],
        }

    @classmethod
    def from_json(cls, doc: dict) -> ConstructionSpec:
        try:
            m = int(doc["m"])
            v = (1 << m) - 1
            b = doc.get("b_complement")
            return cls(
                m=m,
                s3=TripleSystem(7, tuple(tuple(t) for t in doc["s3"])),
                partitions=tuple(parse_hex_representative(p) for p in doc["partitions"]),
                orderings=tuple(Permutation.parse(t) for t in doc["orderings"]),
                latin_assignment={
                    tuple(e["block"]): LatinSquare.from_text("\n".join(e["square"])) for e in doc["latin"]
                },
                b_complement=None if b is None else LinearCode(v, tuple(BitVec.from_string(s) for s in b)),
                extra_vectors=tuple(BitVec.from_string(s) for s in doc.get("extra_vectors", [])),
                seed=doc.get("seed"),
                deficit=doc.get("deficit"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"not a construction spec document: {exc}") from None


def assemble(spec: ConstructionSpec) -> TripleSystem:
    spec.validate()
    lay = Layout(spec.m)
    t0 = lay.tail
    blocks = [tuple(t0 + p for p in b) for b in spec.s3.blocks]
    for i, (V, tau) in enumerate(zip(spec.partitions, spec.orderings)):
        ordered = reorder(tau, V)
        for j, cls in enumerate(ordered.classes):
            for w in cls:
                a, b = (c for c in range(8) if (w >> (7 - c)) & 1)
                blocks.append((8 * i + a, 8 * i + b, t0 + j))
    for (i1, i2, i3), sq in sorted(spec.latin_assignment.items()):
        for r in range(8):
            for c in range(8):
                blocks.append((8 * i1 + r, 8 * i2 + c, 8 * i3 + sq.cells[r][c]))
    if len(blocks) != 7 + 28 * lay.u + 64 * lay.k:
        raise ConstructionError("block count does not match 7 + 28u + 64k")
    system = TripleSystem(lay.v, tuple(blocks))
    if not system.is_steiner():
        raise ConstructionError("assembled system fails the pair-coverage audit")
    return system


def is_orthogonal_to(system: TripleSystem, code: LinearCode) -> bool:
    rows = system.incidence_vectors()
    return all(r.dot(g) == 0 for g in code.basis for r in rows)


@dataclass(frozen=True)
class RankClass:
    rank: int
    dual_dim: int
    extra_classes: frozenset[BitVec]

    @property
    def deficit(self) -> int:
        return len(self.extra_classes).bit_length()


def _weight_pattern_ok(x: BitVec, u: int) -> bool:
    return all(b.weight == 4 for b in x.split([8] * u + [7]))


def rank_class(system: TripleSystem, m: int) -> RankClass:
    """2-rank of ``system`` and the psi-classes of dual words beyond ``A_m``.

    Every nonzero coset of ``A_m`` in the dual is reduced by ``psi``; each image
    must have weight 4 in every block including the tail.
    """
    lay = Layout(m)
    if system.v != lay.v:
        raise PreconditionError("order", f"system has v={system.v}, expected {lay.v}")
    A = build_A(m)
    if not is_orthogonal_to(system, A):
        raise PreconditionError("orthogonal to A_m", "system is not orthogonal to A_m")
    rows = system.incidence_vectors()
    rank = rank_of(rows)
    dual = nullspace(rows, lay.v)
    if dual.dim != lay.v - rank:
        raise ConstructionError("dual dimension disagrees with the rank")
    extra = complement_basis(A, dual)
    classes = set()
    combos = [BitVec.zero(lay.v)]
    for b in extra.basis:
        combos += [c + b for c in combos]
    for c in combos[1:]:
        img = psi_vec(c, m)
        if not _weight_pattern_ok(img, lay.u):
            raise ConstructionError(f"dual word {img} does not have weight 4 in every block")
        classes.add(img)
    if len(classes) != (1 << extra.dim) - 1:
        raise ConstructionError("distinct dual cosets collapsed under psi")
    return RankClass(rank, dual.dim, frozenset(classes))


# recipe choices per deficit: orbit pool for each block and the orbits of
# which at least one block must be drawn (indices into V1..V6)
_ORBIT_POOL = {0: (0, 1, 2, 3, 4, 5), 1: (0, 1, 2, 3), 2: (0, 3), 3: (3,)}
_FORCED = {0: (4, 5), 1: (1, 2), 2: (0,), 3: (3,)}


def _subspaces(words: Sequence[BitVec], dim: int) -> list[frozenset[BitVec]]:
    """All ``dim``-dimensional subspaces spanned by the given words, zero included."""
    nonzero = sorted(w for w in words if w.bits)
    length = words[0].length
    found = set()
    for combo in combinations(nonzero, dim):
        if rank_of(list(combo)) == dim:
            found.add(frozenset(LinearCode.span_of(length, combo).words()))
    return sorted(found, key=lambda s: sorted(s))


def _random_basis(words: Sequence[BitVec], dim: int, rng: random.Random) -> list[BitVec]:
    nonzero = [w for w in words if w.bits]
    basis: list[BitVec] = []
    while len(basis) < dim:
        w = rng.choice(nonzero)
        if rank_of(basis + [w]) > len(basis):
            basis.append(w)
    return basis


def latin_assignment_for(m: int, extras: Sequence[BitVec], rng: random.Random) -> dict:
    """One Latin square per boolean line, orthogonal to the restrictions of ``extras``."""
    lay = Layout(m)
    out = {}
    for line in boolean_system(m).blocks:
        if not extras:
            out[line] = random_latin8(rng)
            continue
        restricted = []
        for x in extras:
            blocks = x.split([8] * lay.u + [7])
            restricted.append(BitVec.concat([blocks[i] for i in line]))
        out[line] = sample_filtered(restricted, rng)
    return out


def recipe(m: int, deficit: int, seed: int = 0) -> ConstructionSpec:
    """A construction whose assembled system has rank exactly ``v - m + 3 - deficit``.

    ``deficit`` extra dual words are planted: a basis ``t_1..t_d`` of a
    ``deficit``-dimensional subspace ``W`` of the tail dual is fixed, and each
    block's class order is chosen from the coset of permutations carrying ``W``
    onto a subspace of that block's parity vectors. One block is always drawn
    from an orbit whose parity space has dimension exactly ``deficit`` (or is
    empty when ``deficit == 0``), which rules out further dual words.
    """
    if deficit not in (0, 1, 2, 3):
        raise PreconditionError("deficit", f"deficit {deficit} not in 0..3")
    lay = Layout(m)
    rng = random.Random(f"stsrank:{m}:{deficit}:{seed}")
    reps = load_representatives()

    s3 = rng.choice(enumerate_sts7())
    tail_dual = s3_dual(s3).words()

    choice = [rng.choice(_ORBIT_POOL[deficit]) for _ in range(lay.u)]
    choice[rng.randrange(lay.u)] = rng.choice(_FORCED[deficit])
    partitions = tuple(apply_perm(random_permutation(8, rng), reps[c]).canonical() for c in choice)

    tail_basis = _random_basis(tail_dual, deficit, rng)
    W = LinearCode.span_of(7, tail_basis).words()
    stab_W = sorted(stabilizer(7, W))

    orderings = []
    block_parts: list[list[BitVec]] = [[] for _ in range(deficit)]
    for V in partitions:
        if deficit == 0:
            orderings.append(random_permutation(7, rng))
            continue
        by_parity: dict[BitVec, list[BitVec]] = {}
        for x in sorted(xset(V)):
            by_parity.setdefault(parity(x, V), []).append(x)
        space = [BitVec.zero(7)] + sorted(by_parity)
        target = rng.choice(_subspaces(space, deficit))
        sigma = coset_solve_set(target, W, 7)
        tau = sigma * rng.choice(stab_W)
        orderings.append(tau)
        for n, t in enumerate(tail_basis):
            block_parts[n].append(rng.choice(by_parity[apply(tau, t)]))
    extras = tuple(BitVec.concat(parts + [t]) for parts, t in zip(block_parts, tail_basis))

    return ConstructionSpec(
        m=m,
        s3=s3,
        partitions=partitions,
        orderings=tuple(orderings),
        latin_assignment=latin_assignment_for(m, extras, rng),
        b_complement=build_B(m),
        extra_vectors=extras,
        seed=seed,
        deficit=deficit,
    )


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"
