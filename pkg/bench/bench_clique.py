"""Compare the compiled and pure-Python max-clique kernels.

    python bench/bench_clique.py [--sizes 100 150] [--density 0.8] [--repeat 3]

Both kernels run the same branch-and-bound, so expansion counts must match;
the script checks that and reports wall time per graph and the speedup.
"""
import argparse
import random
import statistics
import time

from sdsets.clique import available_backends, max_clique
from sdsets.search import build_graph, generate_family, occurring_values


def random_graph(nv, p, seed):
    rng = random.Random(seed)
    adj = [set() for _ in range(nv)]
    for i in range(nv):
        for j in range(i + 1, nv):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def family_graph(descriptor):
    fam = generate_family(descriptor)
    vals = occurring_values(fam)
    return build_graph(fam, vals[:2]).adjacency


def time_backend(adj, backend, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = max_clique(adj, backend=backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 150])
    ap.add_argument("--density", type=float, default=0.8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not available; only timing the Python kernel")
    cases = [(f"G({nv}, {args.density})", random_graph(nv, args.density, nv))
             for nv in args.sizes]
    cases.append(("edge_midpoints_simplex(9)", family_graph("edge_midpoints_simplex(9)")))
    cases.append(("normalized_pm1(7)", family_graph("normalized_pm1(7)")))

    print(f"{'graph':<28}{'omega':>6}{'expansions':>12}"
          + "".join(f"{b + ' [s]':>14}" for b in backends) + f"{'speedup':>10}")
    for name, adj in cases:
        results = {b: time_backend(adj, b, args.repeat) for b in backends}
        ref = results[backends[0]][1]
        for b, (_, res) in results.items():
            if (res.size, res.witness, res.expansions) != (ref.size, ref.witness, ref.expansions):
                raise SystemExit(f"backend {b} disagrees on {name}")
        cols = "".join(f"{results[b][0]:>14.4f}" for b in backends)
        speed = (f"{results['python'][0] / results['cython'][0]:>9.1f}x"
                 if "cython" in results else f"{'-':>10}")
        print(f"{name:<28}{ref.size:>6}{ref.expansions:>12}{cols}{speed}")


if __name__ == "__main__":
    main()
