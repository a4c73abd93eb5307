"""Compare the Cython and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times Bareiss rank and Hermite reduction on random integer matrices of a few
sizes, then the full basis-invariance workload (both coranks before and after
a random basis change) with each backend patched in.
"""
import argparse
import random
import timeit

from ggm_obstruct import _kernels, _kernels_py
from ggm_obstruct.manifold import apply_basis_change, random_basis_change, random_manifold

try:
    from ggm_obstruct import _ckernels
except ImportError:
    _ckernels = None


def random_rows(rng, r, c, bound):
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


def time_kernel(fn, mats, repeat):
    return min(timeit.repeat(lambda: [fn(m, len(m[0])) for m in mats], number=1, repeat=repeat))


def invariance_workload(seed=0, count=100):
    from ggm_obstruct.ls1 import corank_c
    from ggm_obstruct.ls2 import corank_c_prime

    rng = random.Random(seed)
    for _ in range(count):
        m = random_manifold(rng, rng.choice((4, 5)))
        m2 = apply_basis_change(m, random_basis_change(m, rng.getrandbits(32), 3))
        assert corank_c(m) == corank_c(m2)
        assert corank_c_prime(m) == corank_c_prime(m2)


def with_backend(module, fn):
    saved = _kernels.bareiss_rank, _kernels.row_hermite
    _kernels.bareiss_rank, _kernels.row_hermite = module.bareiss_rank, module.row_hermite
    try:
        return fn()
    finally:
        _kernels.bareiss_rank, _kernels.row_hermite = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = [("python", _kernels_py)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("Cython extension not built; only the Python backend is timed.")

    rng = random.Random(1)
    cases = [
        ("rank 8x8 (100)", "bareiss_rank", [random_rows(rng, 8, 8, 9) for _ in range(100)]),
        ("rank 40x60 (5)", "bareiss_rank", [random_rows(rng, 40, 60, 9) for _ in range(5)]),
        ("rank 120x150 (1)", "bareiss_rank", [random_rows(rng, 120, 150, 3)]),
        ("hermite 8x8 (100)", "row_hermite", [random_rows(rng, 8, 8, 9) for _ in range(100)]),
        ("hermite 20x20 (5)", "row_hermite", [random_rows(rng, 20, 20, 5) for _ in range(5)]),
    ]
    header = f"{'case':<24}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, fname, mats in cases:
        times = [time_kernel(getattr(mod, fname), mats, args.repeat) for _, mod in backends]
        speed = f"{times[0] / times[-1]:.2f}x" if len(times) > 1 else "-"
        print(f"{label:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"{speed:>10}")

    times = []
    for _, mod in backends:
        times.append(
            min(timeit.repeat(lambda: with_backend(mod, invariance_workload), number=1, repeat=3))
        )
    speed = f"{times[0] / times[-1]:.2f}x" if len(times) > 1 else "-"
    print(f"{'invariance suite (100)':<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
