"""Time the numba kernels against the numpy/scipy fallback.

    python3 benchmarks/bench_kernels.py [--n 2000] [--m 10000] [--repeat 5]

Both paths are called directly, so the DIFFUSION_SCOPE_NO_JIT setting does
not matter here. Results are checked for equality before timing.
"""
import argparse
import time

import numpy as np

from diffusion_scope import kernels
from diffusion_scope.nullmodels import random_gnm


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--m", type=int, default=10000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    g = random_gnm(args.n, args.m, np.random.default_rng(args.seed))
    indptr, indices = kernels.csr_from_edges(g.n, g.edges)
    sources = np.arange(g.n, dtype=np.int64)

    cases = [
        ("component_labels", kernels._nb_component_labels, kernels._np_component_labels, (indptr, indices)),
        ("triangles", kernels._nb_triangles, kernels._np_triangles, (indptr, indices)),
        ("distance_sum", kernels._nb_distance_sum, kernels._np_distance_sum, (indptr, indices, sources)),
    ]
    print(f"G(n={args.n}, m={args.m}), best of {args.repeat}")
    print(f"{'kernel':<18}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for name, nb, npf, fargs in cases:
        t0 = time.perf_counter()
        a = nb(*fargs)  # compile, or load from cache
        warm = time.perf_counter() - t0
        b = npf(*fargs)
        if name == "component_labels":
            # label numbering may differ; compare the partitions
            la, lb = np.asarray(a).tolist(), np.asarray(b).tolist()
            same = len(set(zip(la, lb))) == len(set(la)) == len(set(lb))
        else:
            same = np.array_equal(np.asarray(a), np.asarray(b))
        if not same:
            raise SystemExit(f"{name}: numba and numpy results differ")
        t_nb = best_of(nb, fargs, args.repeat)
        t_np = best_of(npf, fargs, args.repeat)
        print(f"{name:<18}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>9.1f}x  (first call {warm:.2f}s)")


if __name__ == "__main__":
    main()
