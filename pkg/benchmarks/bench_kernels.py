"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one row per (kernel, lattice) with best-of-N times in milliseconds.
Both backends are asked for the same answer first, so a speedup is never
reported for a kernel that disagrees.
"""
import argparse
import timeit

import numpy as np

from hollowlat import _pykernels
from hollowlat.families import generate

try:
    from hollowlat import _ckernels
except ImportError:
    _ckernels = None

LATTICES = ["zmod(m=60)", "boolean(k=4)", "product(factors=[zmod(m=12),zmod(m=6)])",
            "product(factors=[chain_power(k=4),zmod(m=12)])"]


def calls(L):
    res = _pykernels.residual_table(L.leq, L.mul_table, L.join_table, L.bottom)
    return {
        "assoc": lambda k: k.first_assoc_violation(L.mul_table),
        "distrib": lambda k: k.first_distrib_violation(L.mul_table, L.join_table),
        "hollow": lambda k: k.strongly_hollow_mask(L.leq, L.join_table),
        "residual": lambda k: k.residual_table(L.leq, L.mul_table, L.join_table, L.bottom),
        "principal": lambda k: k.principal_masks(L.leq, L.join_table, L.meet_table, L.mul_table,
                                                 res, L.bottom, L.top),
    }


def same(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; nothing to compare")
        return 1
    print(f"{'kernel':<10} {'lattice':<48} {'n':>3} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for spec in LATTICES:
        L = generate(spec)
        for name, fn in calls(L).items():
            if not same(fn(_pykernels), fn(_ckernels)):
                raise SystemExit(f"backends disagree on {name} for {spec}")
            t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
            t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<10} {spec:<48} {L.n:>3} {t_py:>10.3f} {t_c:>10.3f} {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
