import random

import pytest
from hypothesis import given, strategies as st

from stsrank.errors import LengthMismatchError, NotInOrbitError, PreconditionError
from stsrank.gf2core import BitVec, two_dim_subspaces
from stsrank.permgroups import (
    PermSet,
    Permutation,
    apply,
    coset,
    coset_solve,
    orbit_transitive_check,
    random_permutation,
    stabilizer,
    symmetric_group,
)
from stsrank.stsbuild import DEFAULT_S3, s3_dual

perms8 = st.permutations(range(8)).map(lambda p: Permutation(tuple(p)))


def test_transposition_moves_coordinate():
    t = Permutation((1, 0, 2, 3, 4, 5, 6, 7))
    assert apply(t, BitVec.from_string("10000000")) == BitVec.from_string("01000000")
    assert apply(Permutation.identity(8), BitVec(8, 0x5A)) == BitVec(8, 0x5A)


def test_apply_convention():
    p = Permutation((2, 0, 1))
    x = BitVec.from_string("100")
    # coordinate 0 moves to position p(0) = 2
    assert apply(p, x) == BitVec.from_string("001")
    with pytest.raises(LengthMismatchError):
        apply(p, BitVec(4, 1))


def test_composition_and_inverse():
    p, q = Permutation((1, 2, 0)), Permutation((0, 2, 1))
    assert (p * q)(1) == p(q(1))
    assert p * p.inverse() == Permutation.identity(3)
    assert Permutation.parse(str(p)) == p
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_scalar_product_preserved():
    rng = random.Random(5)
    for _ in range(1000):
        p = random_permutation(8, rng)
        x, y = BitVec(8, rng.randrange(256)), BitVec(8, rng.randrange(256))
        assert apply(p, x).dot(apply(p, y)) == x.dot(y)
        assert apply(p, x).weight == x.weight


@given(perms8, perms8, st.integers(0, 255))
def test_action_is_homomorphism(p, q, b):
    x = BitVec(8, b)
    assert apply(p * q, x) == apply(p, apply(q, x))


def test_stabilizer_orders():
    dual = s3_dual(DEFAULT_S3)
    nonzero = [w for w in dual.words() if w.bits]
    G = stabilizer(7, nonzero)
    assert len(G) == 168 and G.is_group()
    for s in two_dim_subspaces(dual):
        H = stabilizer(7, s.words())
        assert len(H) == 48 and H.is_group()
    assert orbit_transitive_check(G, two_dim_subspaces(dual))
    x, y = nonzero[0], nonzero[1]
    assert len(stabilizer(7, [x]).members & stabilizer(7, [y]).members) == 8


def test_weight4_stabilizer_is_144():
    x = BitVec.from_string("1111000")
    S = stabilizer(7, [x])
    assert len(S) == 144
    assert 5040 % len(S) == 0


def test_degree_cap():
    with pytest.raises(PreconditionError):
        stabilizer(9, [])
    with pytest.raises(PreconditionError):
        symmetric_group(0)


def test_orbit_check_trivial_cases():
    subs = two_dim_subspaces(s3_dual(DEFAULT_S3))
    trivial = PermSet(7, frozenset({Permutation.identity(7)}))
    assert not orbit_transitive_check(trivial, subs[:2])
    assert orbit_transitive_check(trivial, subs[:1])


def test_coset_solve():
    dual = s3_dual(DEFAULT_S3)
    a, b = [w for w in dual.words() if w.bits][:2]
    assert coset_solve(a, a) == Permutation.identity(7)
    stab = stabilizer(7, [b])
    sigma = coset_solve(a, b, stab)
    assert apply(sigma, b) == a
    sols = coset(sigma, stab)
    assert len(sols) == 144 and all(apply(s, b) == a for s in sols)
    with pytest.raises(NotInOrbitError):
        coset_solve(a, BitVec.from_string("1110000"))
