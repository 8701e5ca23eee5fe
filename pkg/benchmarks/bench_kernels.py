"""Compare the numba and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Compilation is triggered once before timing, so numbers are steady state.
"""

import argparse
import time

import numpy as np

from ringgroups.corpus_files import load_group
from ringgroups.kernels import circle_distances
from ringgroups.presentation import parse_presentation
from ringgroups.todd_coxeter import enumerate_cosets, quotient_by


def symmetric_coxeter(n):
    gens = [f"s{i}" for i in range(1, n)]
    rels = [f"{g}^2" for g in gens]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            m = 3 if j == i + 1 else 2
            rels.append(f"({gens[i]} {gens[j]})^{m}")
    lines = [f"group S{n}", "gens " + " ".join(gens)] + [f"rel {r}" for r in rels]
    return parse_presentation("\n".join(lines))


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    b = 2000
    c1, c2 = rng.normal(size=(b, 3)), rng.normal(size=(b, 3))
    n1, n2 = rng.normal(size=(b, 3)), rng.normal(size=(b, 3))
    n1 /= np.linalg.norm(n1, axis=1, keepdims=True)
    n2 /= np.linalg.norm(n2, axis=1, keepdims=True)
    r1, r2 = rng.uniform(0.3, 1.5, b), rng.uniform(0.3, 1.5, b)

    groups = {
        "HopfB": load_group("HopfB"),
        "R11 mod g_a,g_b,eps_C": quotient_by(load_group("R11"), ["g_a", "g_b", "eps_C"]),
        "S7 (Coxeter)": symmetric_coxeter(7),
    }
    cases = []
    for label, p in groups.items():
        cases.append((f"cosets {label}",
                      {be: (lambda be=be, p=p: enumerate_cosets(p, backend=be)) for be in ("numba", "python")}))
    cases.append((f"circle distances x{b}",
                  {be: (lambda be=be: circle_distances(c1, r1, n1, c2, r2, n2, backend=be))
                   for be in ("numba", "python")}))

    print(f"{'kernel':<34}{'numba':>12}{'python':>12}{'speedup':>10}")
    for label, fns in cases:
        tn, tp = best_of(fns["numba"], args.repeat), best_of(fns["python"], args.repeat)
        print(f"{label:<34}{tn * 1e3:>10.2f}ms{tp * 1e3:>10.2f}ms{tp / tn:>9.1f}x")


if __name__ == "__main__":
    main()
