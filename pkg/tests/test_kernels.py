import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stsrank import kernels
from stsrank.onefact import parse_hex_representative

py = kernels.python_backend
cy = kernels.compiled_backend
needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")

V1 = parse_hex_representative("81422418 82412814 84482211 88442112 90600A05 A0500906 C0300C03")


def test_backend_selected():
    assert kernels.BACKEND in {"cython", "python"}
    assert (kernels.BACKEND == "cython") == (cy is not None)


@needs_ext
@settings(max_examples=200)
@given(st.lists(st.integers(0, (1 << 40) - 1), max_size=50))
def test_rank_parity(rows):
    assert cy.gf2_rank(rows, 40) == py.gf2_rank(rows, 40)


@needs_ext
def test_rank_wide_rows():
    rng = random.Random(0)
    rows = [rng.getrandbits(127) for _ in range(200)]
    assert cy.gf2_rank(rows, 127) == py.gf2_rank(rows, 127) == 127


@pytest.mark.parametrize("backend", [py, cy], ids=["python", "cython"])
def test_rank_rejects_wide_row(backend):
    if backend is None:
        pytest.skip("compiled extension not built")
    with pytest.raises(ValueError):
        backend.gf2_rank([0b1000], 3)


@needs_ext
@pytest.mark.parametrize("masks, degree", [([0b1111000], 7), ([0b1010100, 0b0101100], 7), ([0xF0], 8), ([], 5)])
def test_stabilizer_parity(masks, degree):
    assert cy.stabilizer_scan(masks, degree) == py.stabilizer_scan(masks, degree)


@needs_ext
def test_factorization_images_parity():
    assert cy.factorization_images(V1.key()) == py.factorization_images(V1.key())
    assert len(cy.factorization_images(V1.key())) == 630


@needs_ext
def test_latin_batch_parity():
    rng = np.random.default_rng(0)
    base = np.array([[(i ^ j) for j in range(8)] for i in range(8)], dtype=np.uint8)
    squares = np.stack([base[rng.permutation(8)][:, rng.permutation(8)] for _ in range(300)])
    for x in [0, 0xF0F0F0, 0xCCCCCC, 0xFFFFFF, 0x123456]:
        assert (cy.latin_orthogonal_batch(squares, x) == py.latin_orthogonal_batch(squares, x)).all()
    bad = squares[:1].copy()
    bad[0, 0, 0] = 9
    for backend in (py, cy):
        with pytest.raises(ValueError, match="symbol out of range"):
            backend.latin_orthogonal_batch(bad, 0)
