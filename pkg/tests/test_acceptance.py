"""Acceptance criteria 1-9, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary (and to stdout with ``-s``)."""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import combinations

from conftest import ACCEPTANCE_LINES
from stsrank import census, kernels
from stsrank.gf2core import BitVec, two_dim_subspaces
from stsrank.latin import enumerate_filtered_array, filtered_counts, phi_embed, set_identity_check, LatinSquare
from stsrank.onefact import (
    ORBIT_SIZES,
    apply_perm,
    classify_orbits,
    enumerate_factorizations,
    load_representatives,
    orthogonality_criterion,
    parity,
    parity_set,
    reorder,
    extended_words,
    xset,
    xset_psi_dim,
    xset_span_dim,
)
from stsrank.permgroups import apply, orbit_transitive_check, random_permutation, stabilizer
from stsrank.stsbuild import (
    DEFAULT_S3,
    DEFAULT_S3_ROWS,
    Layout,
    assemble,
    build_A,
    enumerate_sts7,
    is_orthogonal_to,
    rank_class,
    recipe,
    s3_dual,
)

@contextmanager
def criterion(n: int, title: str, limit: float | None = None):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        bound = f" (limit {limit:g}s)" if limit else ""
        line = f"criterion {n} {status}: {title} [{elapsed:.2f}s{bound}]"
        ACCEPTANCE_LINES[n] = line
        print(line)

def test_criterion_1_factorization_census():
    with criterion(1, "6240 one-factorizations, orbits 630/420/2520/30/1680/960", 60):
        allf = enumerate_factorizations()
        assert len(allf) == 6240
        table = classify_orbits(allf, load_representatives())
        assert table.sizes() == ORBIT_SIZES
        assert [o.label for o in table.orbits] == [f"V{i}" for i in range(1, 7)]

def test_criterion_2_xset_dimensions():
    with criterion(2, "|X(V)| = 6,2,2,14,0,0; span dims 3,2,2,4; psi dims 2,1,1,3"):
        reps = load_representatives()
        assert [len(xset(V)) for V in reps] == [6, 2, 2, 14, 0, 0]
        assert [xset_span_dim(V) for V in reps[:4]] == [3, 2, 2, 4]
        assert [xset_psi_dim(V) for V in reps[:4]] == [2, 1, 1, 3]

def _moved_triple(seed):
    rng = random.Random(seed)
    perms = [random_permutation(8, rng) for _ in range(3)]
    return [
        BitVec.concat([apply(p, BitVec(8, b)) for p in perms])
        for b in (0b11110000, 0b11001100, 0b10101010)
    ]

def test_criterion_3_latin_filter():
    with criterion(3, "filtered Latin counts 576^4, 16^4 (materialized), 1; set identity", 60):
        for seed in range(3):
            x, y, z = _moved_triple(seed)
            assert filtered_counts(x) == 576 ** 4
            assert filtered_counts(x, y) == 16 ** 4
            assert filtered_counts(x, y, z) == 1
        x, y, z = _moved_triple(0)
        fam = enumerate_filtered_array(x, y)
        assert len(fam) == 65536
        assert len({sq.tobytes() for sq in fam}) == 65536
        assert kernels.latin_orthogonal_batch(fam, x.bits).all()
        assert kernels.latin_orthogonal_batch(fam, y.bits).all()
        # independent oracle on a spread of listed squares
        for sq in fam[::1021]:
            words = phi_embed(LatinSquare(8, sq.tolist()))
            assert all(w.dot(x) == 0 and w.dot(y) == 0 for w in words)
        assert len(enumerate_filtered_array(x, y, z)) == 1
        assert set_identity_check(x, y)

def test_criterion_4_stabilizers():
    with criterion(4, "Stab orders 168, 48 (all seven), transitive, pairwise intersections 8", 10):
        dual = s3_dual(DEFAULT_S3)
        nonzero = [w for w in dual.words() if w.bits]
        G = stabilizer(7, nonzero)
        assert len(G) == 168
        subs = two_dim_subspaces(dual)
        assert len(subs) == 7
        assert [len(stabilizer(7, s.words())) for s in subs] == [48] * 7
        assert orbit_transitive_check(G, subs)
        singles = {w: stabilizer(7, [w]).members for w in nonzero}
        assert all(len(singles[a] & singles[b]) == 8 for a, b in combinations(nonzero, 2))

def test_criterion_5_parity_laws():
    with criterion(5, "parity sets of V4 and V1; both transformation laws; orthogonality criterion"):
        reps = load_representatives()
        nonzero_dual = frozenset(w for w in s3_dual(DEFAULT_S3).words() if w.bits)
        assert parity_set(reps[3]) == nonzero_dual
        assert {BitVec.from_string("0011110"), BitVec.from_string("1100110")} <= parity_set(reps[0])
        rng = random.Random(100)
        taus = [random_permutation(7, rng) for _ in range(100)]
        pis = [random_permutation(8, rng) for _ in range(100)]
        weight4 = [BitVec.from_support(7, s) for s in combinations(range(7), 4)]
        for V in reps:
            for x in xset(V):
                p = parity(x, V)
                for t in taus:
                    assert parity(x, reorder(t, V)) == apply(t.inverse(), p)
                for q in pis:
                    assert parity(apply(q, x), apply_perm(q, V)) == p
                ext = extended_words(V)
                for c in weight4:
                    direct = all(BitVec.concat([x, c]).dot(w) == 0 for w in ext)
                    assert orthogonality_criterion(x, c, V) == direct == (p == c)

def test_criterion_6_sts7():
    with criterion(6, "30 STS(7); default present; dual of dimension 3 equal to the inverted rows"):
        systems = enumerate_sts7()
        assert len(systems) == 30 and len(set(systems)) == 30
        assert DEFAULT_S3 in systems
        dual = s3_dual(DEFAULT_S3)
        assert dual.dim == 3
        assert {w for w in dual.words() if w.bits} == {BitVec.from_string(r).complement() for r in DEFAULT_S3_ROWS}

def _sampled_pairs(v, n, seed):
    rng = random.Random(seed)
    return [tuple(sorted(rng.sample(range(v), 2))) for _ in range(n)]

def test_criterion_7_constructions():
    with criterion(7, "m=5 ranks 29-d with 0/1/3/7 extra classes; m=6 (v=63) and m=7 (v=127) d=0,3", 120):
        A5 = build_A(5)
        for d in range(4):
            system = assemble(recipe(5, d, 0))
            assert len(system.blocks) == 155
            assert system.is_steiner()
            assert is_orthogonal_to(system, A5)
            rc = rank_class(system, 5)
            assert rc.rank == 29 - d
            assert len(rc.extra_classes) == [0, 1, 3, 7][d]
        for m in (6, 7):
            lay = Layout(m)
            for d in (0, 3):
                system = assemble(recipe(m, d, 0))
                assert system.pair_audit(_sampled_pairs(lay.v, 2000, m))
                assert system.is_steiner()
                assert is_orthogonal_to(system, build_A(m))
                rc = rank_class(system, m)
                assert rc.rank == lay.v - m + 3 - d
                assert len(rc.extra_classes) == (1 << d) - 1

def test_criterion_8_census():
    with criterion(8, "exact census for m=5..8 and every displayed identity", 1):
        for m in (5, 6, 7, 8):
            p = census.CensusParams(m)
            values = [census.m_rank(p, j) for j in range(4)] + [census.m_total(p)]
            assert all(isinstance(v, int) and v > 0 for v in values)
            report = census.identity_suite(p)
            assert report.passed, report.failed()
        assert census.m_total(census.CensusParams(5)) == 101507900952416302379026782244306944000000000

def test_criterion_9_determinism(tmp_path):
    with criterion(9, "check-all twice gives byte-identical reports"):
        outs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "stsrank", "check-all"], capture_output=True, check=False)
            assert proc.returncode == 0, proc.stdout.decode()[-2000:]
            outs.append(proc.stdout)
        assert outs[0] == outs[1]
        assert b"PASS" in outs[0]
