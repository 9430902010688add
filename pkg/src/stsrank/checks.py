"""Exhaustive verification routines shared by the command line and the tests.

Each routine returns a :class:`CheckResult`. Reports never contain timings
or anything else that could vary between runs with the same inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from . import census, kernels
from .errors import StsRankError
from .gf2core import BitVec, LinearCode, two_dim_subspaces
from .latin import LatinSquare, enumerate_filtered_array, filtered_counts, is_orthogonal_code, set_identity_check
from .onefact import (
    ORBIT_SIZES,
    apply_perm,
    classify_orbits,
    enumerate_factorizations,
    load_representatives,
    orthogonality_criterion,
    parity,
    parity_set,
    reorder,
    xset,
    xset_psi_dim,
    xset_span_dim,
)
from .permgroups import apply, orbit_transitive_check, random_permutation, stabilizer
from .stsbuild import DEFAULT_S3, DEFAULT_S3_ROWS, assemble, build_A, enumerate_sts7, is_orthogonal_to, rank_class, recipe, s3_dual

SAMPLE_SEED = 20240601


@dataclass
class CheckResult:
    name: str
    anchor: str
    passed: bool = True
    details: list[str] = field(default_factory=list)

    def expect(self, label: str, got, want) -> None:
        ok = got == want
        self.passed &= ok
        self.details.append(f"{label}: {got}" + ("" if ok else f" (expected {want})"))

    def note(self, text: str) -> None:
        self.details.append(text)

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "passed": self.passed, "details": self.details}


def check_dim2() -> CheckResult:
    r = CheckResult("dim2", "a 3-dimensional space has seven 2-dimensional subspaces")
    for label, code in (("F2^3", LinearCode(3, (BitVec(3, 4), BitVec(3, 2), BitVec(3, 1)))),
                        ("S3-dual", s3_dual(DEFAULT_S3))):
        subs = two_dim_subspaces(code)
        r.expect(f"{label} subspaces", len(subs), 7)
        cover = {w: sum(w in s for s in subs) for w in code.words() if w.bits}
        r.expect(f"{label} subspaces through each nonzero word", sorted(set(cover.values())), [3])
    return r


def _sample_vectors(rng: random.Random):
    """The canonical (x, y, z) triple moved by a random permutation in each block."""
    base = [BitVec.concat([BitVec(8, b)] * 3) for b in (0b11110000, 0b11001100, 0b10101010)]
    perms = [random_permutation(8, rng) for _ in range(3)]
    return [BitVec.concat([apply(p, blk) for p, blk in zip(perms, v.split([8, 8, 8]))]) for v in base]


def check_latin_filter() -> CheckResult:
    r = CheckResult("latin-filter", "|L(x)| = 576^4, |L(x,y)| = 16^4, |L(x,y,z)| = 1")
    rng = random.Random(SAMPLE_SEED)
    for trial, (x, y, z) in enumerate([_sample_vectors(random.Random(0))] + [_sample_vectors(rng)]):
        r.expect(f"trial {trial} |L(x)|", filtered_counts(x), 576 ** 4)
        r.expect(f"trial {trial} |L(x,y)|", filtered_counts(x, y), 16 ** 4)
        r.expect(f"trial {trial} |L(x,y,z)|", filtered_counts(x, y, z), 1)
    x, y, z = _sample_vectors(random.Random(0))
    fam = enumerate_filtered_array(x, y)
    r.expect("materialized |L(x,y)|", len(fam), 16 ** 4)
    r.expect("every listed square orthogonal to x and y",
             bool(kernels.latin_orthogonal_batch(fam, x.bits).all() and kernels.latin_orthogonal_batch(fam, y.bits).all()),
             True)
    (sq,) = enumerate_filtered_array(x, y, z)
    r.expect("the square of L(x,y,z) orthogonal to x, y, z",
             all(is_orthogonal_code(LatinSquare(8, sq.tolist()), w) for w in (x, y, z)), True)
    r.expect("L(x,y) = L(x,x+y) = L(x+y,y)", set_identity_check(x, y), True)
    return r


def check_xset_sizes() -> CheckResult:
    r = CheckResult("xset-sizes", "|X(V)| takes the values 6, 2, 2, 14, 0, 0")
    reps = load_representatives()
    r.expect("|X(V1..V6)|", [len(xset(V)) for V in reps], [6, 2, 2, 14, 0, 0])
    r.expect("span dims V1..V4", [xset_span_dim(V) for V in reps[:4]], [3, 2, 2, 4])
    r.expect("psi dims V1..V4", [xset_psi_dim(V) for V in reps[:4]], [2, 1, 1, 3])
    return r


def check_stab() -> CheckResult:
    r = CheckResult("stab", "|Stab(S3-dual)| = 168, subspace stabilizers 48, transitive")
    dual = s3_dual(DEFAULT_S3)
    nonzero = [w for w in dual.words() if w.bits]
    G = stabilizer(7, nonzero)
    r.expect("|Stab(S3-dual)|", len(G), 168)
    r.expect("Stab(S3) = Stab(S3-dual)", stabilizer(7, DEFAULT_S3.incidence_vectors()).members == G.members, True)
    subs = two_dim_subspaces(dual)
    r.expect("2-dim subspace stabilizer orders", sorted({len(stabilizer(7, s.words())) for s in subs}), [48])
    r.expect("transitive on the 2-dim subspaces", orbit_transitive_check(G, subs), True)
    inter = {len(stabilizer(7, [a]).members & stabilizer(7, [b]).members) for a, b in combinations(nonzero, 2)}
    r.expect("|Stab(x) & Stab(x')| over distinct nonzero pairs", sorted(inter), [8])
    r.expect("|Stab(x)| for weight-4 x", sorted({len(stabilizer(7, [w])) for w in nonzero}), [144])
    return r


def check_parity_vectors() -> CheckResult:
    r = CheckResult("parity-vectors", "parity vectors of V1 and V4")
    reps = load_representatives()
    nonzero_dual = frozenset(w for w in s3_dual(DEFAULT_S3).words() if w.bits)
    r.expect("parity set of V4 equals nonzero S3-dual", parity_set(reps[3]) == nonzero_dual, True)
    p1 = parity_set(reps[0])
    listed = {BitVec.from_string("0011110"), BitVec.from_string("1100110")}
    r.expect("parity set of V1 contains the listed vectors", listed <= p1, True)
    r.note("parity set of V1: " + " ".join(sorted(str(p) for p in p1)))
    return r


def check_parity_laws(samples: int = 100) -> CheckResult:
    r = CheckResult("parity-laws", "p(x, tau*V) = tau^-1(p(x,V)) and p(pi(x), pi(V)) = p(x,V)")
    rng = random.Random(SAMPLE_SEED)
    taus = [random_permutation(7, rng) for _ in range(samples)]
    pis = [random_permutation(8, rng) for _ in range(samples)]
    bad_tau = bad_pi = cases = 0
    for V in load_representatives():
        for x in sorted(xset(V)):
            p = parity(x, V)
            for t in taus:
                cases += 1
                bad_tau += parity(x, reorder(t, V)) != apply(t.inverse(), p)
            for q in pis:
                bad_pi += parity(apply(q, x), apply_perm(q, V)) != p
    r.note(f"cases per law: {cases}")
    r.expect("class reordering failures", bad_tau, 0)
    r.expect("coordinate action failures", bad_pi, 0)
    return r


def check_orthogonality() -> CheckResult:
    r = CheckResult("orthogonality", "(x|c) is orthogonal to the extended classes iff p(x,V) = c")
    weight4 = [BitVec.from_support(7, s) for s in combinations(range(7), 4)]
    cases = bad = 0
    for V in load_representatives():
        for x in sorted(xset(V)):
            p = parity(x, V)
            for c in weight4:
                cases += 1
                bad += orthogonality_criterion(x, c, V) != (p == c)
    r.note(f"cases: {cases}")
    r.expect("disagreements", bad, 0)
    return r


VERIFY_TARGETS = {
    "dim2": check_dim2,
    "latin-filter": check_latin_filter,
    "xset-sizes": check_xset_sizes,
    "stab": check_stab,
    "parity-vectors": check_parity_vectors,
    "parity-laws": check_parity_laws,
    "orthogonality": check_orthogonality,
}


def check_factorizations(representatives=None) -> CheckResult:
    r = CheckResult("enumerate-factorizations", "6240 one-factorizations in orbits 630, 420, 2520, 30, 1680, 960")
    allf = enumerate_factorizations()
    r.expect("one-factorizations", len(allf), census.GAMMA_V)
    table = classify_orbits(allf, representatives)
    r.expect("orbit sizes of V1..V6", table.sizes(), ORBIT_SIZES)
    return r


def check_sts7() -> CheckResult:
    r = CheckResult("enumerate-sts7", "30 STS(7); the dual of the default is its rows inverted")
    systems = enumerate_sts7()
    r.expect("systems", len(systems), 30)
    r.expect("default present", DEFAULT_S3 in systems, True)
    dual = s3_dual(DEFAULT_S3)
    r.expect("dual dimension", dual.dim, 3)
    inverted = {BitVec.from_string(row).complement() for row in DEFAULT_S3_ROWS}
    r.expect("nonzero dual words are the inverted rows", {w for w in dual.words() if w.bits} == inverted, True)
    return r


def check_census(ms=(5, 6, 7, 8)) -> CheckResult:
    r = CheckResult("census", "closed forms and the identities displayed in their proofs")
    for m in ms:
        p = census.CensusParams(m)
        rep = census.identity_suite(p)
        r.expect(f"m={m} failed identities", rep.failed(), [])
        r.expect(f"m={m} all values positive", all(census.m_rank(p, j) > 0 for j in range(4)) and census.m_total(p) > 0, True)
    return r


def check_construction(m: int, deficit: int, seed: int = 0) -> CheckResult:
    lay_v = (1 << m) - 1
    want = lay_v - m + 3 - deficit
    r = CheckResult(f"construct m={m} d={deficit}", "rank v - m + 3 - d with 2^d - 1 extra classes")
    spec = recipe(m, deficit, seed)
    system = assemble(spec)
    r.expect("Steiner audit", system.is_steiner(), True)
    r.expect("orthogonal to A_m", is_orthogonal_to(system, build_A(m)), True)
    rc = rank_class(system, m)
    r.expect("rank", rc.rank, want)
    r.expect("extra classes", len(rc.extra_classes), (1 << deficit) - 1)
    return r


def run_all(representatives_path=None) -> list[CheckResult]:
    """Every verify target, both enumerations, the census and one construction per deficit at m=5."""
    results = []

    def guarded(name, fn, *args):
        try:
            results.append(fn(*args))
        except (StsRankError, ValueError, OSError) as exc:
            results.append(CheckResult(name, "aborted", False, [f"{type(exc).__name__}: {exc}"]))

    for name, fn in VERIFY_TARGETS.items():
        guarded(name, fn)
    try:
        reps = load_representatives(representatives_path)
    except (StsRankError, OSError) as exc:
        results.append(CheckResult("parse representatives", "representative table", False, [str(exc)]))
    else:
        guarded("enumerate-factorizations", check_factorizations, reps)
    guarded("enumerate-sts7", check_sts7)
    guarded("census", check_census)
    for d in range(4):
        guarded(f"construct m=5 d={d}", check_construction, 5, d, 0)
    return results
