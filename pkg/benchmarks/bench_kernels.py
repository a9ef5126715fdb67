"""Compare the compiled and pure-Python elimination kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Each workload runs once per backend (the compiled one only when the
extension is built); results are checked for equality before timing is
reported.
"""

from __future__ import annotations

import argparse
import random
import time

import delsarte.kernels as kernels
from delsarte.kernels import _pure
from delsarte.linalg import cokernel
from delsarte.modules import filtration_layer, present_Am, present_Bprime
from delsarte.paper_examples import GOLDEN
from delsarte.quotient import FiniteQuotient


def _am_torsion(q):
    p = present_Am(q)
    return lambda: cokernel(p.relation_rows(), p.n_columns)


def _bprime_torsion(q):
    p = present_Bprime(q)
    return lambda: cokernel(p.relation_rows(), p.n_columns)


def _filtration(q):
    p = present_Am(q)
    return lambda: filtration_layer(p, 3, 2)


def _dense(seed, m, n, lo=-9, hi=9):
    rng = random.Random(seed)
    rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
    return lambda: cokernel(rows, n)


def workloads():
    golden4 = GOLDEN[3].quotient()
    return [
        ("Am, diagonal (4,6,12), 1728 cols", _am_torsion(FiniteQuotient.diagonal(4, 6, 12))),
        ("Am, golden alpha4 (|G|=128)", _am_torsion(golden4)),
        ("B', golden alpha8 (|G|=162)", _bprime_torsion(GOLDEN[7].quotient())),
        ("B3/B2 subquotient, golden alpha4", _filtration(golden4)),
        ("dense cokernel 60x60", _dense(1, 60, 60, -1, 1)),
    ]


def run(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    fast = kernels._fast
    print(f"compiled extension available: {fast is not None}")
    print(f"{'workload':<40} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, fn in workloads():
        kernels._fast = None
        t_py, r_py = run(fn, args.repeat)
        if fast is not None:
            kernels._fast = fast
            t_c, r_c = run(fn, args.repeat)
            if r_c != r_py:
                raise SystemExit(f"backend mismatch on {name}: {r_c} vs {r_py}")
            print(f"{name:<40} {t_py:>10.3f} {t_c:>11.3f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<40} {t_py:>10.3f} {'-':>11} {'-':>8}")
    kernels._fast = fast


if __name__ == "__main__":
    main()
