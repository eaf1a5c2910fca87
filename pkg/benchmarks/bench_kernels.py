"""Compare the numba and numpy power-set kernels on frame matroids of random
signed graphs.

    python benchmarks/bench_kernels.py --sizes 10 12 14 --repeat 3

Each row reports the best of ``--repeat`` wall-clock runs per kernel and
checks that both backends return identical results.  Numba compile time is
excluded by a warm-up call.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from biasmat._kernels import BACKENDS, as_masks
from biasmat.biased import from_signed
from biasmat.generate import random_connected_graph, random_signing
from biasmat.matroid import frame_circuit_masks


def workload(m: int, seed: int):
    rng = random.Random(seed)
    g = random_connected_graph(rng, max(2, m // 2), m, loops=0.05)
    s = random_signing(rng, g, 0.5)
    circuits = as_masks(sorted(frame_circuit_masks(from_signed(s))))
    return g.num_edges, circuits


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(sizes, repeat: int, seed: int) -> list[dict]:
    rows = []
    names = [n for n in ("numpy", "numba") if n in BACKENDS]
    for m in sizes:
        m, circuits = workload(m, seed)
        row = {"m": m, "circuits": len(circuits)}
        results = {}
        for name in names:
            k = BACKENDS[name]
            k.dependent_table(circuits, m)  # warm-up / compile
            t_dep, dep = best_of(lambda: k.dependent_table(circuits, m), repeat)
            t_rank, rank = best_of(lambda: k.rank_table(dep, m), repeat)
            t_u24, u24 = best_of(lambda: k.find_u24(rank, m), repeat)
            t_elim, elim = best_of(lambda: k.elimination_violation(circuits, dep, m), repeat) if m <= 14 else (float("nan"), None)
            row[name] = {"dependent": t_dep, "rank": t_rank, "u24": t_u24, "elimination": t_elim}
            results[name] = (dep, rank, tuple(int(x) for x in u24), None if elim is None else tuple(int(x) for x in elim))
        if len(results) == 2:
            a, b = results["numpy"], results["numba"]
            row["agree"] = bool(np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]) and a[2] == b[2] and a[3] == b[3])
        rows.append(row)
    return rows


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 12, 14, 16])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    args = p.parse_args(argv)
    rows = bench(args.sizes, args.repeat, args.seed)
    kernels = ("dependent", "rank", "u24", "elimination")
    print(f"{'m':>3} {'circ':>6} " + " ".join(f"{k + '/np':>13} {k + '/nb':>13}" for k in kernels) + "  agree")
    for r in rows:
        cells = []
        for k in kernels:
            for name in ("numpy", "numba"):
                cells.append(f"{r[name][k] * 1e3:>11.2f}ms" if name in r else f"{'-':>13}")
        print(f"{r['m']:>3} {r['circuits']:>6} " + " ".join(cells) + f"  {r.get('agree', '-')}")


if __name__ == "__main__":
    main()
