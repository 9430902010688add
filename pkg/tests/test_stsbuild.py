import json
import pytest

from stsrank.errors import ParseError, PreconditionError
from stsrank.gf2core import BitVec, rank_of
from stsrank.latin import LatinSquare
from stsrank.stsbuild import (
    DEFAULT_S3,
    DEFAULT_S3_ROWS,
    ConstructionSpec,
    Layout,
    TripleSystem,
    assemble,
    boolean_system,
    build_A,
    build_B,
    build_E,
    collapse,
    enumerate_sts7,
    is_orthogonal_to,
    rank_class,
    recipe,
    s3_dual,
)


def test_sts7():
    systems = enumerate_sts7()
    assert len(systems) == 30
    assert DEFAULT_S3 in systems
    assert all(s.is_steiner() for s in systems)
    dual = s3_dual(DEFAULT_S3)
    assert dual.dim == 3
    inverted = {BitVec.from_string(r).complement() for r in DEFAULT_S3_ROWS}
    assert {w for w in dual.words() if w.bits} == inverted


def test_layout():
    lay = Layout(5)
    assert (lay.v, lay.u, lay.k, lay.tail) == (31, 3, 1, 24)
    assert Layout(6).v == 63 and Layout(7).v == 127
    with pytest.raises(PreconditionError):
        Layout(4)


@pytest.mark.parametrize("m", [5, 6, 7])
def test_codes(m):
    A, E, B = build_A(m), build_E(m), build_B(m)
    lay = Layout(m)
    assert A.dim == m - 3 and E.dim == lay.u and B.dim == lay.u - m + 3
    # equidistant: every nonzero word covers 2^(m-4) blocks
    assert {w.weight for w in A.words() if w.bits} == {8 << (m - 4)}
    assert rank_of(list(A.basis) + list(B.basis)) == lay.u
    assert all(collapse(w, m).weight * 8 == w.weight for w in A.words())


def test_boolean_system():
    assert boolean_system(5).blocks == ((0, 1, 2),)
    s6 = boolean_system(6)
    assert len(s6.blocks) == 7 and s6.is_steiner()


@pytest.mark.parametrize("deficit", [0, 1, 2, 3])
def test_recipe_rank(deficit):
    for seed in range(4):
        spec = recipe(5, deficit, seed)
        system = assemble(spec)
        assert len(system.blocks) == 155 and system.is_steiner()
        assert is_orthogonal_to(system, build_A(5))
        rc = rank_class(system, 5)
        assert rc.rank == 29 - deficit
        assert len(rc.extra_classes) == (1 << deficit) - 1
        assert rc.deficit == deficit


def test_recipe_deterministic():
    a, b = recipe(5, 2, 7), recipe(5, 2, 7)
    assert a.to_json() == b.to_json()
    assert assemble(a) == assemble(b)


def test_spec_and_system_json_roundtrip():
    spec = recipe(5, 1, 3)
    doc = json.loads(json.dumps(spec.to_json()))
    again = ConstructionSpec.from_json(doc)
    assert assemble(again) == assemble(spec)
    system = assemble(spec)
    assert TripleSystem.from_json(system.to_json()) == system
    with pytest.raises(ParseError):
        ConstructionSpec.from_json({"m": 5})
    with pytest.raises(ParseError):
        TripleSystem.from_json({"blocks": []})


def test_any_tail_and_squares_still_give_steiner_systems():
    spec = recipe(5, 0, 1)
    key = next(iter(spec.latin_assignment))
    rows = list(spec.latin_assignment[key].cells)
    rows[0], rows[1] = rows[1], rows[0]
    swapped = {**spec.latin_assignment, key: LatinSquare(8, tuple(rows))}
    for s3 in enumerate_sts7()[:5]:
        system = assemble(ConstructionSpec(**{**spec.__dict__, "s3": s3, "latin_assignment": swapped}))
        assert system.is_steiner()


def test_spec_validation_clauses():
    spec = recipe(5, 0, 2)
    with pytest.raises(PreconditionError) as e:
        assemble(ConstructionSpec(**{**spec.__dict__, "latin_assignment": {}}))
    assert e.value.clause == "latin assignment"
    with pytest.raises(PreconditionError) as e:
        assemble(ConstructionSpec(**{**spec.__dict__, "partitions": spec.partitions[:2]}))
    assert e.value.clause == "block count"


def test_pair_audit_detects_duplicates():
    system = assemble(recipe(5, 0, 0))
    broken = TripleSystem(31, system.blocks[1:] + system.blocks[:1] * 2)
    assert not broken.is_steiner()
    assert not broken.pair_audit([(0, 1)])
    assert system.pair_audit([(0, 1), (5, 30)])


def test_rank_class_rejects_wrong_order():
    system = assemble(recipe(5, 0, 0))
    with pytest.raises(PreconditionError):
        rank_class(system, 6)


@pytest.mark.slow
@pytest.mark.parametrize("m, deficit", [(6, 0), (6, 3), (7, 0), (7, 3)])
def test_larger_orders(m, deficit):
    system = assemble(recipe(m, deficit, 0))
    lay = Layout(m)
    assert len(system.blocks) == lay.v * (lay.v - 1) // 6
    rc = rank_class(system, m)
    assert rc.rank == lay.v - m + 3 - deficit
    assert len(rc.extra_classes) == (1 << deficit) - 1
