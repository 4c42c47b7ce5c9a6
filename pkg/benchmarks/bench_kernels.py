"""Time each kernel under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Outputs are compared between the two builds before any timing is reported.
"""
import argparse
import time

import numpy as np

from semigroup_forge import kernels
from semigroup_forge._accel import numba_available
from semigroup_forge.valsgp import GeneratorTuple


def _box_case(gens, bound):
    bound = np.asarray(bound, dtype=np.int64)
    dims, strides = kernels.box_strides(bound)
    flags = np.zeros(int(np.prod(dims)), np.uint8)
    flags[0] = 1
    for g in gens:
        flags[int(np.dot(GeneratorTuple.of(g).realize(tuple(bound)), strides))] = 1
    return bound, flags


CASES = {
    "count_tree(g<=16)": lambda jit: kernels.count_tree(16, jit=jit),
    "closed_gap_masks(g=10)": lambda jit: kernels.closed_gap_masks(10, jit=jit),
    "close_box r=2": lambda jit: kernels.close_box(*_box_case([(1, 3), (2, None), (None, 4), (None, 5)], (4, 6)), jit=jit),
    "close_box r=3": lambda jit: kernels.close_box(*_box_case([(1, 1, None), (1, None, 1)], (3, 3, 3)), jit=jit),
    "close_box r=4": lambda jit: kernels.close_box(*_box_case([(1, None, None, None), (None, 1, None, None),
                                                               (None, None, 1, None), (None, None, None, 2),
                                                               (None, None, None, 3)], (2, 2, 2, 4)), jit=jit),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not numba_available():
        print("numba is not installed; only the numpy build can run")
    print(f"{'kernel':<24}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for name, fn in CASES.items():
        t_np, out_np = best_of(lambda: fn(False), args.repeat)
        if numba_available():
            fn(True)  # compile outside the timed runs
            t_jit, out_jit = best_of(lambda: fn(True), args.repeat)
            if not np.array_equal(out_np, out_jit):
                raise SystemExit(f"{name}: numba and numpy disagree")
            print(f"{name:<24}{t_np:>10.4f}{t_jit:>10.4f}{t_np / max(t_jit, 1e-9):>8.1f}x")
        else:
            print(f"{name:<24}{t_np:>10.4f}{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
