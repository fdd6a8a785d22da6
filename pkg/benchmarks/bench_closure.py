"""Time the (min, max) closure kernel on each backend, and the full methods.

    python3 benchmarks/bench_closure.py --sizes 64 128 256 512 --repeat 3
"""

import argparse
import time

import numpy as np

from dirclust import cluster, to_dendrogram
from dirclust.harness import random_network
from dirclust.kernels import available_backends, minmax_closure
from dirclust.methods import ASYMMETRIC_METHODS


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--density", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print("\nclosure kernel (best of %d, seconds)" % args.repeat)
    print("n\t" + "\t".join(backends) + ("\tspeedup" if len(backends) > 1 else ""))
    for n in args.sizes:
        a = random_network(n, args.density, args.seed).dissim
        ref = None
        row = []
        for b in backends:
            row.append(best_of(lambda: minmax_closure(a, b), args.repeat))
            out = minmax_closure(a, b)
            if ref is None:
                ref = out
            elif not np.array_equal(ref, out):
                raise SystemExit(f"backends disagree at n={n}")
        line = f"{n}\t" + "\t".join(f"{t:.4f}" for t in row)
        if len(row) > 1:
            line += f"\t{row[1] / row[0]:.1f}x"
        print(line)

    print("\nmethods, default backend, incl. dendrogram (best of %d, seconds)" % args.repeat)
    print("n\t" + "\t".join(m.value for m in ASYMMETRIC_METHODS) + "\tto_dendrogram")
    for n in args.sizes:
        net = random_network(n, args.density, args.seed)
        row = [best_of(lambda: cluster(m, net), args.repeat) for m in ASYMMETRIC_METHODS]
        u = cluster(ASYMMETRIC_METHODS[0], net)
        row.append(best_of(lambda: to_dendrogram(u), args.repeat))
        print(f"{n}\t" + "\t".join(f"{t:.4f}" for t in row))


if __name__ == "__main__":
    main()
