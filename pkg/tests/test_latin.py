import random

import numpy as np
import pytest

from stsrank import kernels
from stsrank.errors import PreconditionError
from stsrank.gf2core import BitVec
from stsrank.latin import (
    LatinSquare,
    check_filter_hypotheses,
    enumerate_filtered,
    enumerate_latin4,
    filtered_counts,
    is_cw_codeword,
    is_orthogonal_code,
    phi_embed,
    random_latin8,
    sample_filtered,
    set_identity_check,
)
from stsrank.permgroups import apply, random_permutation

X = BitVec(24, 0xF0F0F0)
Y = BitVec(24, 0xCCCCCC)
Z = BitVec(24, 0xAAAAAA)


def moved(seed):
    rng = random.Random(seed)
    perms = [random_permutation(8, rng) for _ in range(3)]
    return [BitVec.concat([apply(p, b) for p, b in zip(perms, v.split([8, 8, 8]))]) for v in (X, Y, Z)]


def test_latin4_count_and_order():
    sq = enumerate_latin4()
    assert len(sq) == 576
    assert sq == sorted(sq)
    assert len(set(sq)) == 576


def test_square_validation_and_text():
    with pytest.raises(ValueError):
        LatinSquare(4, ((0, 1, 2, 3),) * 4)
    L = random_latin8(random.Random(1))
    assert LatinSquare.from_text(L.to_text()) == L


def test_phi_embedding_is_constant_weight_code():
    L = random_latin8(random.Random(2))
    words = phi_embed(L)
    assert len(words) == 64
    assert all(is_cw_codeword(w) and w.weight == 3 for w in words)
    # any two codewords share at most one block position (distance at least 4)
    ws = sorted(words)
    assert min((a + b).weight for i, a in enumerate(ws) for b in ws[i + 1:]) == 4


def test_orthogonality_against_direct_oracle():
    rng = random.Random(3)
    for _ in range(50):
        L = random_latin8(rng)
        x = BitVec(24, rng.randrange(1 << 24))
        direct = all(w.dot(x) == 0 for w in phi_embed(L))
        assert is_orthogonal_code(L, x) == direct


def test_filtered_counts_canonical():
    assert filtered_counts(X) == 576 ** 4
    assert filtered_counts(X, Y) == 16 ** 4
    assert filtered_counts(X, Y, Z) == 1


@pytest.mark.parametrize("seed", range(5))
def test_filtered_counts_after_block_permutations(seed):
    x, y, z = moved(seed)
    assert filtered_counts(x) == 576 ** 4
    assert filtered_counts(x, y) == 16 ** 4
    assert filtered_counts(x, y, z) == 1


def test_unique_square_is_xor_table():
    (L,) = enumerate_filtered(X, Y, Z)
    assert L.cells == tuple(tuple(i ^ j ^ 7 for j in range(8)) for i in range(8))


def test_materialized_family_all_orthogonal():
    x, y, _ = moved(11)
    fam = enumerate_filtered(x, y)
    assert len(fam) == 65536 and len(set(fam)) == 65536
    arr = np.array([L.cells for L in fam[::97]], dtype=np.uint8)
    assert kernels.latin_orthogonal_batch(arr, x.bits).all()
    assert kernels.latin_orthogonal_batch(arr, y.bits).all()
    for L in fam[::4099]:
        assert all(w.dot(x) == 0 and w.dot(y) == 0 for w in phi_embed(L))


def test_sample_filtered_lies_in_family():
    x, y, z = moved(4)
    rng = random.Random(9)
    for vecs in ([x], [x, y], [x, y, z]):
        L = sample_filtered(vecs, rng)
        assert all(is_orthogonal_code(L, w) for w in vecs)


def test_set_identity():
    x, y, _ = moved(6)
    assert set_identity_check(x, y)


def test_hypothesis_clauses():
    with pytest.raises(PreconditionError) as e:
        check_filter_hypotheses([BitVec(24, 0xF0F0F1)])
    assert e.value.clause == "block weight"
    with pytest.raises(PreconditionError) as e:
        check_filter_hypotheses([X, X])
    assert e.value.clause == "psi-independence"
    # blocks meeting in one point: 11110000 vs 10001110
    w = BitVec(24, 0x8E8E8E)
    with pytest.raises(PreconditionError) as e:
        check_filter_hypotheses([X, w])
    assert e.value.clause == "pairwise intersection"
    # the orthogonality clause follows from the others: 2 + 2 + 2 is even
    x, y, _ = moved(8)
    assert x.dot(y) == 0
    with pytest.raises(PreconditionError):
        check_filter_hypotheses([])
