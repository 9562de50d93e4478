"""Compare the compiled and pure-Python graph kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--problems 2000]

Part 1 times the raw kernels on random acyclic graphs (full traversal, the
worst case for cycle search). Part 2 times the solver end to end on the
random termination suite with each backend swapped in. Part 3 solves one wide
problem whose n (f)-peaks force n iterations, each rebuilding both graphs.
"""

import argparse
import random
import timeit

from expunify import _graphkern_py, kernels, parse_equation, solve
from expunify.gen import random_problem

try:
    from expunify import _graphkern
except ImportError:
    _graphkern = None


def random_dag(n: int, m: int, rng: random.Random):
    src, dst = [], []
    for _ in range(m):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b:
            continue
        a, b = min(a, b), max(a, b)
        src.append(a)
        dst.append(b)
    return src, dst


def bench_raw(impl, n, src, dst, repeat):
    t_cycle = min(timeit.repeat(lambda: impl.find_cycle(n, src, dst), number=10, repeat=repeat)) / 10
    t_comp = min(timeit.repeat(lambda: impl.components(n, src, dst), number=10, repeat=repeat)) / 10
    return t_cycle, t_comp


def wide_problem(n: int):
    return [parse_equation(f"exp(X{k}, W) =? g(Y{k})") for k in range(n)]


def bench_solver(impl, problems, repeat):
    saved = kernels.find_cycle, kernels.components
    kernels.find_cycle, kernels.components = impl.find_cycle, impl.components
    try:
        def run():
            for eqs in problems:
                solve(eqs)
        return min(timeit.repeat(run, number=1, repeat=repeat))
    finally:
        kernels.find_cycle, kernels.components = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--problems", type=int, default=2000)
    args = ap.parse_args()

    impls = [("python", _graphkern_py)]
    if _graphkern is not None:
        impls.append(("compiled", _graphkern))
    else:
        print("compiled kernels not built; showing the Python backend only")

    rng = random.Random(0)
    print(f"{'nodes':>7} {'edges':>7} " + " ".join(f"{name + ' cycle':>16} {name + ' uf':>16}" for name, _ in impls))
    for n in (10, 100, 1_000, 10_000, 100_000):
        src, dst = random_dag(n, 3 * n, rng)
        row = [f"{n:>7} {len(src):>7}"]
        for _, impl in impls:
            tc, tu = bench_raw(impl, n, src, dst, args.repeat)
            row.append(f"{tc * 1e6:>14.1f}us {tu * 1e6:>14.1f}us")
        print(" ".join(row))

    rng = random.Random(1)
    problems = [random_problem(rng) for _ in range(args.problems)]
    print(f"\nsolver on {len(problems)} random problems:")
    for name, impl in impls:
        print(f"  {name:9s} {bench_solver(impl, problems, max(1, args.repeat // 2)):.3f}s")

    for n in (100, 300):
        print(f"\nsolver on one problem with {n} (f)-peaks:")
        for name, impl in impls:
            print(f"  {name:9s} {bench_solver(impl, [wide_problem(n)], 1):.3f}s")


if __name__ == "__main__":
    main()
