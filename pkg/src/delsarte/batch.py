"""Seeded batch experiments over random quotients diag(D) * M'."""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterator

from .quotient import FiniteQuotient
from .report import analyze

N_OPERATIONS = 12


@dataclass(frozen=True)
class BatchConfig:
    seed: int
    count: int
    diag: tuple
    bound: int = 3
    jobs: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if len(self.diag) != 3 or min(self.diag) < 1:
            raise ValueError("diag needs three positive entries")


def random_unimodular(rng: random.Random, bound: int, n: int = 3) -> list[list[int]]:
    """Product of elementary operations applied to the identity."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(N_OPERATIONS):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2)
        if kind == 0:
            c = rng.randint(-bound, bound)
            M[j] = [a + c * b for a, b in zip(M[j], M[i])]
        elif kind == 1:
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-a for a in M[i]]
    return M


def generate_kernels(config: BatchConfig) -> Iterator[list[list[int]]]:
    rng = random.Random(config.seed)
    for _ in range(config.count):
        U = random_unimodular(rng, config.bound)
        yield [[config.diag[i] * x for x in U[i]] for i in range(3)]


def _report(args) -> dict:
    index, kernel = args
    data = analyze(FiniteQuotient.from_kernel_matrix(kernel, kind="batch")).data
    return {"index": index, "unimodular_input": kernel, **data}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def summarize(reports: list[dict]) -> dict:
    torsion = Counter(str(r["torsion_T"]) for r in reports)
    applies = [r for r in reports if r["conjecture_monitor"]["applies"]]
    return {
        "summary": {
            "conjecture_monitor": {
                "applies": len(applies),
                "exp_divides_height_violations": sum(
                    not r["conjecture_monitor"]["exp_divides_height"] for r in applies
                ),
                "length_at_most_3_plus_delta_violations": sum(
                    not r["conjecture_monitor"]["length_at_most_3_plus_delta"] for r in applies
                ),
            },
            "count": len(reports),
            "pi1_orders": dict(sorted(Counter(str(r["pi1"]["order"]) for r in reports).items())),
            "torsion_frequency": dict(sorted(torsion.items())),
        }
    }


def batch_run(config: BatchConfig, out: IO[str]) -> dict:
    """Write one report per line in generation order, then a summary line."""
    tasks = list(enumerate(generate_kernels(config)))
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            reports = list(pool.map(_report, tasks))
    else:
        reports = [_report(t) for t in tasks]
    for r in reports:
        out.write(dumps(r) + "\n")
    summary = summarize(reports)
    out.write(dumps(summary) + "\n")
    return summary
