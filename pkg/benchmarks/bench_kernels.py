"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each pair is checked for equal output before timing. The first numba call
(compilation, or loading the on-disk cache) is excluded.
"""

import argparse
from timeit import repeat

import numpy as np

from su3cohom import geomverify, kernels

C = geomverify._STRUCTURE
FRAMES = geomverify.random_frames(np.random.default_rng(0), 100_000)

CASES = {
    "torus_components(6,4,N=4320)": lambda b: kernels.torus_line_components(6, 4, 4320, b),
    "torus_components(3,1,N=2160)": lambda b: kernels.torus_line_components(3, 1, 2160, b),
    "hypersurface_cells(720)": lambda b: kernels.hypersurface_cells(720, 1e-9, b),
    "hypersurface_cells(2880)": lambda b: kernels.hypersurface_cells(2880, 1e-9, b),
    "three_form(1e5 frames)": lambda b: kernels.three_form_batch(FRAMES, C, b),
}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'kernel':32s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}")
    for name, fn in CASES.items():
        a, b = fn("numba"), fn("numpy")
        assert np.allclose(a, b), name
        t_numba = min(repeat(lambda: fn("numba"), number=1, repeat=args.repeat))
        t_numpy = min(repeat(lambda: fn("numpy"), number=1, repeat=args.repeat))
        print(f"{name:32s} {t_numba:10.4f} {t_numpy:10.4f} {t_numpy / t_numba:8.1f}x")


if __name__ == "__main__":
    main()
