"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

import numpy as np

from stsrank import kernels
from stsrank.onefact import load_representatives
from stsrank.stsbuild import assemble, recipe


def cases():
    rng = random.Random(0)
    system = assemble(recipe(7, 0, 0))
    rows = [sum(1 << (126 - p) for p in b) for b in system.blocks]
    key = load_representatives()[0].key()
    base = np.array([[(i ^ j) for j in range(8)] for i in range(8)], dtype=np.uint8)
    squares = np.stack([base[np.random.default_rng(s).permutation(8)] for s in range(20000)])
    return {
        "gf2_rank (2667 x 127)": lambda k: k.gf2_rank(rows, 127),
        "stabilizer_scan (S7, 7 words)": lambda k: k.stabilizer_scan([0b1010100, 0b0101100, 0b0110010, 0b1001010, 0b1100001, 0b0011001, 0b0000111], 7),
        "factorization_images (S8)": lambda k: k.factorization_images(key),
        "latin_orthogonal_batch (20000)": lambda k: k.latin_orthogonal_batch(squares, rng.getrandbits(24)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled extension not built; only the Python backend is available")
    backends = [("python", kernels.python_backend), ("cython", kernels.compiled_backend)]
    print(f"{'kernel':34s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases().items():
        times = {}
        for label, backend in backends:
            if backend is None:
                continue
            times[label] = min(timeit.repeat(lambda: fn(backend), number=1, repeat=args.repeat)) * 1e3
        cy = times.get("cython")
        ratio = f"{times['python'] / cy:7.1f}x" if cy else "      -"
        print(f"{name:34s} {times['python']:10.2f} {cy if cy else float('nan'):10.2f} {ratio}")


if __name__ == "__main__":
    main()
