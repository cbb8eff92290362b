"""Compare the compiled elimination kernels against the pure-Python twins.

Runs the three kernel families (integer, mod-p, quadratic) on workloads
shaped like the package's hot paths: rank queries over random subsets of
root-system matrices and full pair-closure sweeps.  Prints one line per
workload with both timings and the speedup.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from cremfan import _kernels_py as pure
from cremfan.field import primitive_int_vector, primitive_quad_vector, residue_vector
from cremfan.generators import positive_roots
from cremfan.kernels import ACTIVE_BACKEND

try:
    from cremfan import _kernels as fast
except ImportError:
    fast = None


def _int_rows(family: str, n: int) -> list[tuple[int, ...]]:
    field, vectors, _labels = positive_roots(family, n)
    return [primitive_int_vector(v) for v in vectors]


def _quad_rows() -> list[tuple[int, ...]]:
    field, vectors, _labels = positive_roots("H", 4)
    return [primitive_quad_vector(v) for v in vectors]


def _mod_rows(p: int) -> list[tuple[int, ...]]:
    from cremfan.field import Field
    field = Field.from_spec(f"Fp:{p}")
    _f, vectors, _labels = positive_roots("B", 6)
    coerced = [[field.coerce(int(x)) for x in v] for v in vectors]
    return [residue_vector(v) for v in coerced]


def _bench(label: str, fn_fast, fn_pure, repeat: int) -> None:
    def run(fn):
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        return best

    t_pure = run(fn_pure)
    if fn_fast is None:
        print(f"{label:<34} pure {t_pure * 1e3:8.2f} ms   (no compiled kernel)")
        return
    t_fast = run(fn_fast)
    ratio = t_pure / t_fast if t_fast > 0 else float("inf")
    print(
        f"{label:<34} pure {t_pure * 1e3:8.2f} ms   "
        f"compiled {t_fast * 1e3:8.2f} ms   x{ratio:5.1f}"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per workload; best time wins")
    args = parser.parse_args()
    print(f"active backend: {ACTIVE_BACKEND}")

    rng = random.Random(20260815)
    e8 = _int_rows("E", 8)
    subsets = [rng.sample(range(len(e8)), 9) for _ in range(2000)]

    def rank_sweep(mod):
        def go():
            for s in subsets:
                mod.rank_int([e8[i] for i in s])
        return go

    def closure_sweep(mod):
        pairs = [(i, j) for i in range(0, len(e8), 3) for j in range(i + 1, len(e8), 7)]

        def go():
            for i, j in pairs:
                mod.closure_int(e8, [i, j])
        return go

    _bench("E8 rank, 2000 random 9-subsets",
           rank_sweep(fast) if fast else None, rank_sweep(pure), args.repeat)
    _bench("E8 pair closures (~680 spans)",
           closure_sweep(fast) if fast else None, closure_sweep(pure), args.repeat)

    h4 = _quad_rows()
    quad_subsets = [rng.sample(range(len(h4)), 4) for _ in range(2000)]

    def quad_sweep(mod):
        def go():
            for s in quad_subsets:
                mod.rank_quad([h4[i] for i in s])
        return go

    _bench("H4 rank over Q(sqrt5), 2000 4-subsets",
           quad_sweep(fast) if fast else None, quad_sweep(pure), args.repeat)

    b6 = _mod_rows(7)
    mod_subsets = [rng.sample(range(len(b6)), 6) for _ in range(2000)]

    def mod_sweep(mod):
        def go():
            for s in mod_subsets:
                mod.rank_mod([b6[i] for i in s], 7)
        return go

    _bench("B6 rank over F7, 2000 6-subsets",
           mod_sweep(fast) if fast else None, mod_sweep(pure), args.repeat)


if __name__ == "__main__":
    main()
