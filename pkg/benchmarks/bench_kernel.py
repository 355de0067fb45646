"""Compare the compiled and pure-Python PBW kernels.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Each workload starts from a cleared rewrite cache, so the timings include
the cost of filling it.
"""
import argparse
import random
import time

from qasl import kernel
from qasl.poset import build_pi_poset, multichains
from qasl.qmatrix import encode


def random_words(count, shape, length, seed=0):
    rng = random.Random(seed)
    m, n = shape
    return [tuple(encode(rng.randint(1, m), rng.randint(1, n)) for _ in range(length)) for _ in range(count)]


def maximal_minor_flat(impl, cols, m):
    from itertools import permutations

    flat = {}
    for perm in permutations(range(m)):
        ell = sum(1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b])
        word = tuple(encode(r + 1, cols[perm[r]]) for r in range(m))
        for (w, e), c in impl.normal_form(word).items():
            k = (w, e + ell)
            flat[k] = flat.get(k, 0) + (-1) ** ell * c
    return {k: v for k, v in flat.items() if v}


def workload_words(impl):
    for w in random_words(2000, (3, 4), 8):
        impl.normal_form(w)


def workload_grassmannian(impl, m=2, n=5, degree=3):
    poset = build_pi_poset(m, n)
    minors = {e: maximal_minor_flat(impl, e, m) for e in poset}
    for chain in multichains(poset, degree):
        acc = {((), 0): 1}
        for e in chain:
            acc = impl.multiply(acc, minors[e])


WORKLOADS = {
    "random words (3x4, length 8)": workload_words,
    "standard monomials of G(2,5), degree 4": lambda impl: workload_grassmannian(impl, 2, 5, 4),
    "standard monomials of G(3,5), degree 3": lambda impl: workload_grassmannian(impl, 3, 5, 3),
}


def bench(impl, fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        impl.clear_cache()
        t0 = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernel.backends()
    if "cython" not in backends:
        print("compiled kernel not built; only the Python fallback is timed")
    names = sorted(backends)
    print(f"{'workload':44s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in WORKLOADS.items():
        times = {n: bench(backends[n], fn, args.repeat) for n in names}
        row = f"{label:44s}" + "".join(f"{times[n]:11.3f}s" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
