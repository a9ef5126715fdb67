import random

import pytest
from hypothesis import settings

from delsarte.quotient import FiniteQuotient

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_unimodular(rng: random.Random, n: int = 3, steps: int = 12, bound: int = 3):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-bound, bound)
        M[j] = [a + c * b for a, b in zip(M[j], M[i])]
    return M


def random_quotients(seed: int, count: int, max_order: int = 200):
    """Random quotients diag(d) * U with |G| <= max_order."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = [rng.randint(1, 6) for _ in range(3)]
        if d[0] * d[1] * d[2] > max_order:
            continue
        U = random_unimodular(rng)
        out.append(FiniteQuotient.from_kernel_matrix([[d[i] * x for x in U[i]] for i in range(3)]))
    return out


@pytest.fixture(scope="session")
def random_fixtures():
    return random_quotients(2024, 40)


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_results(request) -> dict:
    return request.config.stash.setdefault(ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        ok, detail = results[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
