import random
from itertools import combinations

import pytest

from blockmatch import SetFamily
from blockmatch.backend import warmup


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay any JIT cost before timed tests run
    warmup()


def random_family(rng: random.Random, n: int, k: int) -> SetFamily:
    pool = list(combinations(range(1, n + 1), k))
    size = rng.randint(1, len(pool))
    return SetFamily.from_iterable(n, k, rng.sample(pool, size))


def family_corpus(seed: int, count: int, divisible_only: bool = False):
    """Deterministic stream of small random families (n <= 9, k in {2, 3})."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.choice([2, 3])
        if divisible_only:
            n = rng.choice([4, 6, 8]) if k == 2 else rng.choice([6, 9])
        else:
            n = rng.randint(max(k, 3), 9)
        out.append(random_family(rng, n, k))
    return out
